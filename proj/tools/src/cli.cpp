#include "njk/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "njk/algebroid.hpp"
#include "njk/cochain.hpp"
#include "njk/forms.hpp"
#include "njk/io.hpp"
#include "njk/linfty.hpp"
#include "njk/random.hpp"

namespace njk {

namespace {

struct RunConfig {
  std::string command;
  std::string action;  // check kind, algebroid action
  std::string input;
  std::string complex = "njl";
  std::string format = "json";
  int max_degree = 3;
  int n_max = 2;
  int n = 2;
  int max_poly_degree = 2;
  int samples = 20;
  std::uint64_t seed = kDefaultSeed;
  bool quiet = false;
  bool timing = false;
};

// Outcome of a command: a report and whether every verdict held.
struct Outcome {
  Json report = Json::object();
  bool ok = true;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json vec_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_json(x));
  return out;
}

Json report_json(const Report& r) {
  Json j = {{"valid", r.valid}};
  if (!r.valid) {
    j["detail"] = r.detail;
    j["witness"] = r.witness;
    j["residual"] = vec_json(r.residual);
  }
  return j;
}

Json load(const RunConfig& cfg, std::istream& in) { return read_json(cfg.input, in); }

// Runs a parser and turns dimension or syntax complaints from the core into
// parse errors.
template <class F>
auto parse_with(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError("<input>", e.what());
  }
}

LieFile load_lie(const RunConfig& cfg, std::istream& in) {
  const Json j = load(cfg, in);
  return parse_with([&] { return parse_lie_file(j); });
}

AlgebroidFile load_algebroid(const RunConfig& cfg, std::istream& in) {
  const Json j = load(cfg, in);
  return parse_with([&] { return parse_algebroid_file(j); });
}

const Matrix& need_nijenhuis(const LieFile& f) {
  if (!f.nijenhuis) throw ParseError("nijenhuis", "missing field");
  return *f.nijenhuis;
}

const VectorForm& need_nijenhuis(const AlgebroidFile& f) {
  if (!f.nijenhuis) throw ParseError("nijenhuis", "missing field");
  return *f.nijenhuis;
}

// Context for the cohomology commands.  CE ignores the operators, so it
// runs with P = 0 and P_M = 0.  Throws std::domain_error when the data is
// not a Nijenhuis Lie algebra with a Nijenhuis representation.
NjContext make_context(const LieFile& f, bool need_ops) {
  const auto dim = static_cast<std::size_t>(f.algebra.dim);
  const Report lie = validate_lie(f.algebra);
  if (!lie.valid) throw std::domain_error("not a Lie algebra: " + lie.detail);
  Matrix op = need_ops ? need_nijenhuis(f) : zero_matrix(dim, dim);
  NijenhuisLieAlgebra nl{f.algebra, op};
  if (!f.representation) return NjContext(nl);
  const Report rep = validate_representation(f.algebra, *f.representation);
  if (!rep.valid) throw std::domain_error("not a representation: " + rep.detail);
  const auto m = static_cast<std::size_t>(f.representation->dim_m);
  Matrix rep_op = zero_matrix(m, m);
  if (need_ops) {
    if (!f.rep_nijenhuis) throw ParseError("rep_nijenhuis", "missing field");
    rep_op = *f.rep_nijenhuis;
  }
  return NjContext(nl, *f.representation, rep_op);
}

ComplexKind complex_kind(const std::string& s) {
  if (s == "ce") return ComplexKind::CE;
  if (s == "njo") return ComplexKind::NjO;
  return ComplexKind::NjL;
}

// ---------------------------------------------------------------------------

Outcome cmd_check(const RunConfig& cfg, std::istream& in) {
  Outcome o;
  Json& r = o.report;
  if (cfg.action == "algebroid") {
    const AlgebroidFile f = load_algebroid(cfg, in);
    const AlgebroidReport rep = validate_algebroid(f.algebroid);
    r["algebroid"] = {{"valid", rep.valid},
                      {"jacobi", rep.jacobi_ok},
                      {"anchor", rep.anchor_ok},
                      {"q_squared_zero", rep.q_squared_zero},
                      {"routes_agree", rep.routes_agree}};
    if (!rep.detail.empty()) r["algebroid"]["detail"] = rep.detail;
    o.ok = rep.valid && rep.routes_agree;
    if (f.nijenhuis) {
      const bool flat = algebroid_torsion(f.algebroid, *f.nijenhuis).is_zero();
      r["nijenhuis"] = {{"valid", flat}};
      o.ok = o.ok && flat;
    }
    r["valid"] = o.ok;
    return o;
  }
  const LieFile f = load_lie(cfg, in);
  const Report lie = validate_lie(f.algebra);
  r["lie"] = report_json(lie);
  o.ok = lie.valid;
  if (cfg.action == "nijenhuis") {
    const Report nij = validate_nijenhuis(f.algebra, need_nijenhuis(f));
    r["nijenhuis"] = report_json(nij);
    o.ok = o.ok && nij.valid;
  } else if (cfg.action == "rep") {
    if (!f.representation) throw ParseError("representation", "missing field");
    const Report rep = validate_representation(f.algebra, *f.representation);
    r["representation"] = report_json(rep);
    o.ok = o.ok && rep.valid;
    if (f.nijenhuis && f.rep_nijenhuis) {
      const Report nij = validate_nijenhuis(f.algebra, *f.nijenhuis);
      r["nijenhuis"] = report_json(nij);
      o.ok = o.ok && nij.valid;
      if (o.ok) {
        const Report nr =
            validate_nijenhuis_representation({f.algebra, *f.nijenhuis}, *f.representation, *f.rep_nijenhuis);
        r["nijenhuis_representation"] = report_json(nr);
        o.ok = nr.valid;
      }
    }
  }
  r["valid"] = o.ok;
  return o;
}

Outcome cmd_cohomology(const RunConfig& cfg, std::istream& in) {
  Outcome o;
  const LieFile f = load_lie(cfg, in);
  const ComplexKind kind = complex_kind(cfg.complex);
  try {
    const NjContext ctx = make_context(f, kind != ComplexKind::CE);
    const BettiReport b = betti(kind, ctx, cfg.max_degree);
    o.report["complex"] = cfg.complex;
    o.report["max_degree"] = cfg.max_degree;
    o.report["table"] = betti_json(b);
    o.report["betti"] = b.betti_numbers();
    o.report["valid"] = true;
  } catch (const std::domain_error& e) {
    o.ok = false;
    o.report["valid"] = false;
    o.report["detail"] = e.what();
  }
  return o;
}

Outcome cmd_les(const RunConfig& cfg, std::istream& in) {
  Outcome o;
  const LieFile f = load_lie(cfg, in);
  try {
    const NjContext ctx = make_context(f, true);
    // cochains vanish above dim g, so larger bounds add nothing
    const int top = std::min(cfg.max_degree, ctx.dim());
    const LesReport les = les_verify(ctx, top);
    Json nodes = Json::array();
    for (const auto& node : les.nodes)
      nodes.push_back({{"node", node.label},
                       {"exact", node.result.exact()},
                       {"kernel", node.result.kernel_dim},
                       {"image", node.result.image_dim}});
    o.report["nodes"] = std::move(nodes);
    o.report["exact"] = les.exact;
    o.report["euler"] = {{"lie", les.euler_lie}, {"njo", les.euler_njo}, {"njl", les.euler_njl}, {"ok", les.euler_ok}};
    o.report["max_degree"] = top;
    o.ok = les.exact && les.euler_ok;
    o.report["valid"] = true;
  } catch (const std::domain_error& e) {
    o.ok = false;
    o.report["valid"] = false;
    o.report["detail"] = e.what();
  }
  return o;
}

Outcome cmd_mc(const RunConfig& cfg, std::istream& in) {
  Outcome o;
  const LieFile f = load_lie(cfg, in);
  const Matrix& P = need_nijenhuis(f);
  const McResidual res = mc_residual(MaurerCartanCandidate::from_nijenhuis(f.algebra, P), cfg.n_max);
  const bool lie = validate_lie(f.algebra).valid;
  const bool nij = validate_nijenhuis(f.algebra, P).valid;
  o.report["n_max"] = cfg.n_max;
  o.report["residual_zero"] = res.zero();
  o.report["nonzero_lie_arities"] = res.nonzero_lie_arities();
  o.report["nonzero_njo_arities"] = res.nonzero_njo_arities();
  o.report["lie_valid"] = lie;
  o.report["nijenhuis_valid"] = nij;
  o.report["consistent"] = res.zero() == (lie && nij);
  o.ok = res.zero();
  return o;
}

Outcome cmd_fn_bracket(const RunConfig& cfg, std::istream& in) {
  Outcome o;
  const Json j = load(cfg, in);
  const auto [K, L] = parse_with([&] {
    const Json& nj = j.contains("n") ? j["n"] : throw ParseError("n", "missing field");
    if (!nj.is_number_integer() || nj.get<int>() < 1 || nj.get<int>() > 6) throw ParseError("n", "expected 1..6");
    const int n = nj.get<int>();
    if (!j.contains("K")) throw ParseError("K", "missing field");
    if (!j.contains("L")) throw ParseError("L", "missing field");
    return std::make_pair(parse_vector_form(j["K"], n, "K"), parse_vector_form(j["L"], n, "L"));
  });
  const VectorForm br = fn_bracket(K, L);
  o.report["bracket"] = to_json(br);
  o.report["routes_agree"] = br == fn_bracket_by_definition(K, L);
  o.ok = o.report["routes_agree"].get<bool>();
  return o;
}

Outcome cmd_torsion(const RunConfig& cfg, std::istream& in) {
  Outcome o;
  const Json j = load(cfg, in);
  if (j.is_object() && j.contains("base_dim")) {
    const AlgebroidFile f = parse_with([&] { return parse_algebroid_file(j); });
    const VectorForm& P = need_nijenhuis(f);
    const VectorForm t = algebroid_torsion(f.algebroid, P);
    o.report["torsion"] = to_json(t);
    o.report["vanishes"] = t.is_zero();
    o.report["routes_agree"] = t == algebroid_torsion_coefficients(f.algebroid, P);
    o.ok = o.report["routes_agree"].get<bool>();
    return o;
  }
  if (j.is_object() && j.contains("dim")) {
    const LieFile f = parse_with([&] { return parse_lie_file(j); });
    const Matrix& P = need_nijenhuis(f);
    const int d = f.algebra.dim;
    Json t = Json::object();
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) {
        const Vec v = nijenhuis_torsion_alg(f.algebra, P, basis_vec(static_cast<std::size_t>(d), static_cast<std::size_t>(a)),
                                            basis_vec(static_cast<std::size_t>(d), static_cast<std::size_t>(b)));
        Json entry = Json::object();
        for (std::size_t k = 0; k < v.size(); ++k)
          if (v[k] != 0) entry[std::to_string(k)] = rational_json(v[k]);
        if (!entry.empty()) t[std::to_string(a) + "," + std::to_string(b)] = std::move(entry);
      }
    o.report["vanishes"] = t.empty();
    o.report["torsion"] = std::move(t);
    return o;
  }
  const VectorForm P = parse_with([&] {
    if (!j.is_object() || !j.contains("n")) throw ParseError("n", "missing field");
    const Json& nj = j["n"];
    if (!nj.is_number_integer() || nj.get<int>() < 1 || nj.get<int>() > 6) throw ParseError("n", "expected 1..6");
    if (!j.contains("P")) throw ParseError("P", "missing field");
    return parse_vector_form(j["P"], nj.get<int>(), "P");
  });
  if (P.degree() != 1) throw ParseError("P", "expected an operator of degree 1");
  const VectorForm t = nijenhuis_torsion_form(P);
  o.report["torsion"] = to_json(t);
  o.report["vanishes"] = t.is_zero();
  o.report["fn_identity"] = fn_bracket(P, P) == t.scaled(2);
  o.ok = o.report["fn_identity"].get<bool>();
  return o;
}

Outcome cmd_poincare(const RunConfig& cfg) {
  Outcome o;
  std::vector<int> degrees;
  for (int k = 0; k <= cfg.n; ++k) degrees.push_back(k);
  const HomotopyReport h = check_homotopy(cfg.n, cfg.max_poly_degree, degrees);
  const auto slices = fn_betti(cfg.n, cfg.max_poly_degree, cfg.n);
  bool all_zero = true;
  Json table = Json::array();
  for (const auto& s : slices) {
    for (auto b : s.report.betti_numbers()) all_zero = all_zero && b == 0;
    table.push_back({{"poly_degree", s.poly_degree}, {"rows", betti_json(s.report)}});
  }
  o.report["n"] = cfg.n;
  o.report["max_poly_degree"] = cfg.max_poly_degree;
  o.report["homotopy"] = {{"ok", h.ok}, {"checked", h.checked}};
  if (!h.ok) o.report["homotopy"]["detail"] = h.detail;
  o.report["betti"] = std::move(table);
  o.report["all_betti_zero"] = all_zero;
  o.report["summary"] = all_zero ? "all Betti numbers 0" : "nonzero Betti numbers";
  o.ok = h.ok && all_zero;
  return o;
}

Outcome cmd_algebroid(const RunConfig& cfg, std::istream& in) {
  Outcome o;
  const AlgebroidFile f = load_algebroid(cfg, in);
  const PolyAlgebroid& A = f.algebroid;
  const VectorForm& P = need_nijenhuis(f);
  if (cfg.action == "mc") {
    const AlgebroidMcResidual res = algebroid_mc_residual(A, P);
    o.report["q_squared_zero"] = res.q_squared.is_zero();
    o.report["torsion_zero"] = res.torsion_brace.is_zero();
    o.report["routes_agree"] = res.routes_agree;
    o.report["vanishes"] = res.vanishes();
    o.ok = res.vanishes() && res.routes_agree;
    return o;
  }
  try {
    require_nijenhuis_algebroid(A, P);
  } catch (const std::domain_error& e) {
    o.ok = false;
    o.report["valid"] = false;
    o.report["detail"] = e.what();
    return o;
  }
  o.report["valid"] = true;
  o.report["samples"] = cfg.samples;
  if (cfg.action == "phi") {
    const PhiChainReport rep = validate_phi_chain_map(A, P, cfg.samples, cfg.seed);
    o.report["chain_map"] = rep.ok;
    o.report["checked"] = rep.checked;
    if (!rep.ok) o.report["detail"] = rep.detail;
    o.ok = rep.ok;
    return o;
  }
  // njld: delta^2 = 0 on seeded random cone pairs of degrees -1..2
  Rng rng(cfg.seed);
  int failures = 0;
  int nontrivial = 0;
  for (int s = 0; s < cfg.samples; ++s) {
    const int d = random_int(rng, -1, std::min(2, A.rank));
    ConePair pair{random_graded_field(rng, A.base_dim, A.rank, d, 2),
                  d < 0 ? VectorForm(A.base_dim, A.rank, -1) : random_algebroid_form(rng, A.base_dim, A.rank, d, 2)};
    const ConePair once = delta_njld(A, P, pair);
    const ConePair twice = delta_njld(A, P, once);
    if (!twice.field.is_zero() || !twice.form.is_zero()) ++failures;
    if (!once.field.is_zero() || !once.form.is_zero()) ++nontrivial;
  }
  o.report["squares_to_zero"] = failures == 0;
  o.report["failures"] = failures;
  o.report["nontrivial_images"] = nontrivial;
  o.ok = failures == 0;
  return o;
}

// ---------------------------------------------------------------------------

void render_text(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto is_flat = [](const Json& v) {
    return std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); });
  };
  for (const auto& [key, v] : j.items()) {
    if (key == "summary") continue;
    if (v.is_primitive()) {
      out << pad << key << ": " << scalar(v) << "\n";
    } else if (v.is_array() && is_flat(v)) {
      out << pad << key << ": [";
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar(v[i]);
      out << "]\n";
    } else if (v.is_array()) {
      out << pad << key << ":\n";
      for (const auto& item : v) {
        if (item.is_object() && std::all_of(item.begin(), item.end(), [](const Json& x) { return x.is_primitive(); })) {
          out << pad << "  -";
          for (const auto& [k2, v2] : item.items()) out << " " << k2 << "=" << scalar(v2);
          out << "\n";
        } else if (item.is_object()) {
          out << pad << "  -\n";
          render_text(item, out, indent + 4);
        } else {
          out << pad << "  - " << item.dump() << "\n";
        }
      }
    } else {
      out << pad << key << ":\n";
      render_text(v, out, indent + 2);
    }
  }
}

std::uint64_t parse_seed(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::logic_error&) {
    throw UsageError("invalid seed '" + s + "'");
  }
  if (used != s.size() || s.empty() || s[0] == '-') throw UsageError("invalid seed '" + s + "'");
  return v;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
            const char* env_seed) {
  RunConfig cfg;
  std::string seed_text;
  CLI::App app{"Exact computations for Nijenhuis Lie algebras and algebroids", "njk"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", seed_text, "Random seed (overrides NJK_SEED)");
  app.add_flag("--quiet,-q", cfg.quiet, "Print nothing; report through the exit code");
  app.add_flag("--timing", cfg.timing, "Add wall-clock time to the report");

  auto input = [&](CLI::App* sub) { sub->add_option("file", cfg.input, "Input JSON file, - for stdin")->required(); };
  auto* check = app.add_subcommand("check", "Validate a structure");
  check->add_option("kind", cfg.action, "lie, nijenhuis, rep or algebroid")
      ->required()
      ->check(CLI::IsMember({"lie", "nijenhuis", "rep", "algebroid"}));
  input(check);
  auto* coh = app.add_subcommand("cohomology", "Betti numbers of C_CE, C_NjO or C_NjL");
  coh->add_option("--complex", cfg.complex, "ce, njo or njl")->check(CLI::IsMember({"ce", "njo", "njl"}));
  coh->add_option("--max-degree", cfg.max_degree, "Highest degree")->check(CLI::Range(0, 8));
  input(coh);
  auto* mc = app.add_subcommand("mc", "Maurer-Cartan residual of (mu, P)");
  mc->add_option("--n-max", cfg.n_max, "Highest arity")->check(CLI::Range(1, 6));
  input(mc);
  auto* fnb = app.add_subcommand("fn-bracket", "Froelicher-Nijenhuis bracket of K and L");
  input(fnb);
  auto* tor = app.add_subcommand("torsion", "Nijenhuis torsion of an operator");
  input(tor);
  auto* poi = app.add_subcommand("poincare", "Homotopy and Betti numbers of d_FN for P = diag(x)");
  poi->add_option("--n", cfg.n, "Dimension")->check(CLI::Range(1, 4));
  poi->add_option("--max-poly-deg", cfg.max_poly_degree, "Highest polynomial degree")->check(CLI::Range(0, 6));
  auto* alg = app.add_subcommand("algebroid", "Phi chain map, cone differential, or MC residual");
  alg->add_option("action", cfg.action, "phi, njld or mc")->required()->check(CLI::IsMember({"phi", "njld", "mc"}));
  alg->add_option("--samples", cfg.samples, "Random samples")->check(CLI::Range(0, 10000));
  input(alg);
  auto* les = app.add_subcommand("les", "Exactness of the long exact sequence");
  les->add_option("--max-degree", cfg.max_degree, "Highest degree")->check(CLI::Range(0, 8));
  input(les);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (!seed_text.empty())
      cfg.seed = parse_seed(seed_text);
    else if (env_seed != nullptr && *env_seed != '\0')
      cfg.seed = parse_seed(env_seed);
    if (!cfg.input.empty() && cfg.input != "-" && !std::filesystem::exists(cfg.input))
      throw UsageError("no such file: " + cfg.input);
  } catch (const UsageError& e) {
    err << "njk: " << e.what() << "\n";
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    if (cfg.command == "check") o = cmd_check(cfg, in);
    else if (cfg.command == "cohomology") o = cmd_cohomology(cfg, in);
    else if (cfg.command == "mc") o = cmd_mc(cfg, in);
    else if (cfg.command == "fn-bracket") o = cmd_fn_bracket(cfg, in);
    else if (cfg.command == "torsion") o = cmd_torsion(cfg, in);
    else if (cfg.command == "poincare") o = cmd_poincare(cfg);
    else if (cfg.command == "algebroid") o = cmd_algebroid(cfg, in);
    else o = cmd_les(cfg, in);
  } catch (const ParseError& e) {
    err << "njk: parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    err << "njk: error: " << e.what() << "\n";
    return kExitUsage;
  }

  Json& r = o.report;
  r["command"] = cfg.action.empty() ? cfg.command : cfg.command + " " + cfg.action;
  if (!cfg.input.empty()) r["input"] = cfg.input;
  r["seed"] = cfg.seed;
  r["ok"] = o.ok;
  if (cfg.timing) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    r["timing_ms"] = ms.count();
  }
  if (!cfg.quiet) {
    if (cfg.format == "json") {
      out << r.dump(2) << "\n";
    } else {
      if (r.contains("summary")) out << r["summary"].get<std::string>() << "\n";
      render_text(r, out, 0);
    }
  }
  return o.ok ? kExitOk : kExitInvalid;
}

}  // namespace njk
