#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "njk/cli.hpp"
#include "njk/cochain.hpp"
#include "njk/io.hpp"
#include "oracles.hpp"

using namespace njk;

namespace {

const std::string kFixtures = NJK_FIXTURE_DIR;

std::string fixture(const std::string& rel) { return kFixtures + "/" + rel; }

Json read_file(const std::string& path) {
  std::istringstream none;
  return read_json(path, none);
}

std::vector<std::string> files_in(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(fixture(dir)))
    if (e.path().extension() == ".json") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

CliRun run(const std::vector<std::string>& args, const std::string& stdin_text = "", const char* env_seed = nullptr) {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, in, out, err, env_seed);
  r.out = out.str();
  r.err = err.str();
  return r;
}

ParseError parse_error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error";
  return ParseError("", "");
}

}  // namespace

TEST(FixtureRoundTrip, LieFilesAreCanonical) {
  const auto files = files_in("lie");
  ASSERT_GE(files.size(), 5u);
  for (const auto& path : files) {
    const Json j = read_file(path);
    EXPECT_EQ(to_json(parse_lie_file(j)), j) << path;
  }
}

TEST(FixtureRoundTrip, AlgebroidFilesAreCanonical) {
  const auto files = files_in("algebroid");
  ASSERT_GE(files.size(), 10u);
  for (const auto& path : files) {
    const Json j = read_file(path);
    EXPECT_EQ(to_json(parse_algebroid_file(j)), j) << path;
  }
}

TEST(FixtureRoundTrip, NormalizesEquivalentSpellings) {
  // integers, unreduced fractions, zero entries and spacing all normalize
  const Json loose = Json::parse(R"({"dim": 2, "brackets": {"0,1": {"0": "2/2", "1": "0"}},
                                     "nijenhuis": [[1, "0"], ["0", " 4/2 "]]})");
  const Json canon = Json::parse(R"({"dim": 2, "brackets": {"0,1": {"0": "1"}},
                                     "nijenhuis": [["1", "0"], ["0", "2"]]})");
  EXPECT_EQ(to_json(parse_lie_file(loose)), canon);
  const Json alg = Json::parse(R"({"base_dim": 1, "rank": 1, "anchor": [["x1*1 + 0"]], "structure": {}})");
  EXPECT_EQ(to_json(parse_algebroid_file(alg))["anchor"][0][0], "x1");
}

TEST(FixtureRoundTrip, VectorFormFiles) {
  for (const auto& path : files_in("forms")) {
    const Json j = read_file(path);
    const int n = j["n"].get<int>();
    for (const char* key : {"K", "L", "P"}) {
      if (!j.contains(key)) continue;
      const VectorForm k = parse_vector_form(j[key], n, key);
      EXPECT_EQ(parse_vector_form(to_json(k), n, key), k) << path << " " << key;
    }
  }
}

TEST(ParseErrors, NameTheField) {
  auto where = [](const char* text) {
    return parse_error_of([&] { parse_lie_file(Json::parse(text)); }).where();
  };
  EXPECT_EQ(where(R"({"brackets": {}})"), "dim");
  EXPECT_EQ(where(R"({"dim": 2, "brackets": {"0,2": {"0": "1"}}})"), "brackets.\"0,2\"");
  EXPECT_EQ(where(R"({"dim": 2, "brackets": {"0,1": {"5": "1"}}})"), "brackets.\"0,1\".\"5\"");
  EXPECT_EQ(where(R"({"dim": 2, "brackets": {"0,1": {"1": "x"}}})"), "brackets.\"0,1\".\"1\"");
  EXPECT_EQ(where(R"({"dim": 2, "nijenhuis": [["1", "0"], ["0"]]})"), "nijenhuis[1]");
  EXPECT_EQ(where(R"({"dim": 1, "representation": {"dim": 1, "matrices": [[["1", "2"]]]}})"),
            "representation.matrices[0][0]");
  const auto e = parse_error_of([] {
    parse_algebroid_file(Json::parse(R"({"base_dim": 1, "rank": 2, "anchor": [["x1"], ["x2"]]})"));
  });
  EXPECT_EQ(e.where(), "anchor[1][0]");
  EXPECT_NE(std::string(e.what()).find("x2"), std::string::npos);
}

TEST(ParseErrors, SyntaxErrorsGiveLineAndColumn) {
  std::istringstream in("{\n  \"dim\": 2,\n  \"brackets\": {,}\n}");
  const auto e = parse_error_of([&] { read_json("-", in); });
  EXPECT_EQ(e.where(), "<stdin>:3:16");
}

TEST(Cli, CheckLieValid) {
  const CliRun r = run({"check", "lie", fixture("lie/sl2.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.json()["valid"].get<bool>());
  EXPECT_TRUE(r.json()["lie"]["valid"].get<bool>());
}

TEST(Cli, CheckFailuresExitTwo) {
  const CliRun lie = run({"check", "lie", fixture("lie/sl2-perturbed.json")});
  EXPECT_EQ(lie.code, kExitInvalid);
  EXPECT_FALSE(lie.json()["lie"]["valid"].get<bool>());
  EXPECT_EQ(lie.json()["lie"]["witness"], Json({0, 1, 2}));
  EXPECT_EQ(run({"check", "nijenhuis", fixture("lie/sl2-bad-operator.json")}).code, kExitInvalid);
  EXPECT_EQ(run({"check", "nijenhuis", fixture("lie/sl2.json")}).code, kExitOk);
  EXPECT_EQ(run({"check", "rep", fixture("lie/sl2-adjoint.json")}).code, kExitOk);
  EXPECT_EQ(run({"check", "rep", fixture("lie/dim2-trivial-rep.json")}).code, kExitOk);
  EXPECT_EQ(run({"check", "rep", fixture("lie/sl2.json")}).code, kExitParse);
}

TEST(Cli, CheckAlgebroidFixtures) {
  int valid = 0, invalid = 0;
  for (const auto& path : files_in("algebroid")) {
    const CliRun r = run({"check", "algebroid", path});
    const bool broken = path.find("broken") != std::string::npos || path.find("perturbed") != std::string::npos ||
                        path.find("bad-operator") != std::string::npos;
    EXPECT_EQ(r.code, broken ? kExitInvalid : kExitOk) << path;
    EXPECT_TRUE(r.json()["algebroid"]["routes_agree"].get<bool>()) << path;
    (broken ? invalid : valid) += 1;
  }
  EXPECT_GE(valid, 5);
  EXPECT_GE(invalid, 4);
}

TEST(Cli, CohomologyMatchesLibrary) {
  const CliRun r = run({"cohomology", "--complex", "njl", "--max-degree", "2", fixture("lie/dim2-diag.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const NjContext ctx({oracle::affine2(), oracle::diag({1, 2})});
  const auto want = betti(ComplexKind::NjL, ctx, 2).betti_numbers();
  EXPECT_EQ(r.json()["betti"].get<std::vector<std::size_t>>(), want);
  ASSERT_EQ(r.json()["table"].size(), 3u);
  EXPECT_EQ(r.json()["table"][1]["degree"], 1);
}

TEST(Cli, CohomologyOnInvalidInputExitsTwo) {
  const CliRun r = run({"cohomology", "--complex", "njo", fixture("lie/sl2-bad-operator.json")});
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_FALSE(r.json()["valid"].get<bool>());
  // CE ignores the operator
  EXPECT_EQ(run({"cohomology", "--complex", "ce", fixture("lie/sl2-bad-operator.json")}).code, kExitOk);
}

TEST(Cli, CeOfSl2) {
  // semisimple with adjoint coefficients: every group vanishes
  const CliRun r = run({"cohomology", "--complex", "ce", "--max-degree", "3", fixture("lie/sl2.json")});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.json()["betti"], Json({0, 0, 0, 0}));
}

TEST(Cli, Poincare) {
  const CliRun r = run({"--format", "text", "poincare", "--n", "2", "--max-poly-deg", "3"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("all Betti numbers 0\n", 0), 0u);
  EXPECT_NE(r.out.find("ok: true"), std::string::npos);
}

TEST(Cli, McAgreesWithValidators) {
  const CliRun good = run({"mc", "--n-max", "2", fixture("lie/sl2.json")});
  EXPECT_EQ(good.code, kExitOk);
  EXPECT_TRUE(good.json()["residual_zero"].get<bool>());
  const CliRun bad = run({"mc", fixture("lie/sl2-bad-operator.json")});
  EXPECT_EQ(bad.code, kExitInvalid);
  EXPECT_TRUE(bad.json()["consistent"].get<bool>());
  EXPECT_EQ(run({"mc", fixture("lie/sl2-perturbed.json")}).code, kExitInvalid);
}

TEST(Cli, TorsionOfFormsFile) {
  const CliRun r = run({"torsion", fixture("forms/torsion-r2.json")});
  ASSERT_EQ(r.code, kExitOk);
  // P = diag(x2, x1): N(d1, d2) = (x2 - x1)(d1 + d2)
  VectorForm want(2, 2);
  want.add({0, 1}, 0, parse_poly("x2 - x1", 2));
  want.add({0, 1}, 1, parse_poly("x2 - x1", 2));
  EXPECT_EQ(parse_vector_form(r.json()["torsion"], 2, "torsion"), want);
  EXPECT_FALSE(r.json()["vanishes"].get<bool>());
  EXPECT_TRUE(run({"torsion", fixture("forms/diagonal-r3.json")}).json()["vanishes"].get<bool>());
}

TEST(Cli, TorsionOfLieAndAlgebroidFiles) {
  const CliRun lie = run({"torsion", fixture("lie/sl2-bad-operator.json")});
  ASSERT_EQ(lie.code, kExitOk);
  EXPECT_FALSE(lie.json()["vanishes"].get<bool>());
  const Matrix P = oracle::diag({1, 2, 3});
  const Vec n01 = nijenhuis_torsion_alg(oracle::sl2(), P, basis_vec(3, 0), basis_vec(3, 1));
  Json want = Json::object();
  for (std::size_t k = 0; k < 3; ++k)
    if (n01[k] != 0) want[std::to_string(k)] = to_string(n01[k]);
  EXPECT_EQ(lie.json()["torsion"].value("0,1", Json::object()), want);
  const CliRun alg = run({"torsion", fixture("algebroid/tangent-r2-bad-operator.json")});
  EXPECT_EQ(alg.code, kExitOk);
  EXPECT_TRUE(alg.json()["routes_agree"].get<bool>());
  EXPECT_FALSE(alg.json()["vanishes"].get<bool>());
}

TEST(Cli, FnBracket) {
  const CliRun r = run({"fn-bracket", fixture("forms/bracket-r2.json")});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.json()["routes_agree"].get<bool>());
  const Json j = read_file(fixture("forms/bracket-r2.json"));
  const VectorForm want = fn_bracket(parse_vector_form(j["K"], 2, "K"), parse_vector_form(j["L"], 2, "L"));
  EXPECT_EQ(parse_vector_form(r.json()["bracket"], 2, "bracket"), want);
}

TEST(Cli, AlgebroidCommands) {
  for (const char* action : {"phi", "njld", "mc"}) {
    EXPECT_EQ(run({"algebroid", action, "--samples", "3", fixture("algebroid/tangent-r2.json")}).code, kExitOk)
        << action;
    EXPECT_EQ(run({"algebroid", action, "--samples", "3", fixture("algebroid/affine-line.json")}).code, kExitOk)
        << action;
    EXPECT_EQ(run({"algebroid", action, fixture("algebroid/tangent-r2-bad-operator.json")}).code, kExitInvalid)
        << action;
    EXPECT_EQ(run({"algebroid", action, fixture("algebroid/tangent-r2-broken-anchor.json")}).code, kExitInvalid)
        << action;
  }
  const CliRun phi = run({"algebroid", "phi", "--samples", "4", fixture("algebroid/tangent-r2.json")});
  EXPECT_TRUE(phi.json()["chain_map"].get<bool>());
  EXPECT_GE(phi.json()["checked"].get<int>(), 100);
}

TEST(Cli, Les) {
  for (const char* f : {"lie/sl2.json", "lie/dim2-diag.json", "lie/sl2-adjoint.json"}) {
    const CliRun r = run({"les", "--max-degree", "3", fixture(f)});
    EXPECT_EQ(r.code, kExitOk) << f;
    EXPECT_TRUE(r.json()["exact"].get<bool>()) << f;
    EXPECT_FALSE(r.json()["nodes"].empty());
  }
}

TEST(Cli, ParseErrorsExitThree) {
  const CliRun r = run({"check", "lie", "-"}, R"({"dim": 2, "brackets": {"1,0": {"0": "1"}}})");
  EXPECT_EQ(r.code, kExitParse);
  EXPECT_NE(r.err.find("brackets.\"1,0\""), std::string::npos);
  EXPECT_EQ(run({"check", "lie", "-"}, "{\"dim\": 2,").code, kExitParse);
  EXPECT_EQ(run({"mc", fixture("algebroid/tangent-r2.json")}).code, kExitParse);
  EXPECT_EQ(run({"check", "algebroid", fixture("lie/sl2.json")}).code, kExitParse);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"check", "monoid", fixture("lie/sl2.json")}).code, kExitUsage);
  EXPECT_EQ(run({"check", "lie", fixture("lie/missing.json")}).code, kExitUsage);
  EXPECT_EQ(run({"cohomology", "--max-degree", "-1", fixture("lie/sl2.json")}).code, kExitUsage);
  EXPECT_EQ(run({"--format", "xml", "check", "lie", fixture("lie/sl2.json")}).code, kExitUsage);
  EXPECT_EQ(run({"--seed", "abc", "check", "lie", fixture("lie/sl2.json")}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, StdinMatchesFile) {
  std::ifstream f(fixture("lie/sl2.json"));
  const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  Json a = run({"check", "nijenhuis", "-"}, text).json();
  Json b = run({"check", "nijenhuis", fixture("lie/sl2.json")}).json();
  a.erase("input");
  b.erase("input");
  EXPECT_EQ(a, b);
}

TEST(Cli, QuietPrintsNothing) {
  const CliRun r = run({"--quiet", "check", "lie", fixture("lie/sl2-perturbed.json")});
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, SeedPrecedence) {
  const std::vector<std::string> cmd = {"algebroid", "njld", "--samples", "4", fixture("algebroid/so3-r3.json")};
  EXPECT_EQ(run(cmd).json()["seed"], kDefaultSeed);
  EXPECT_EQ(run(cmd, "", "11").json()["seed"], 11);
  std::vector<std::string> with_flag = {"--seed", "5"};
  with_flag.insert(with_flag.end(), cmd.begin(), cmd.end());
  EXPECT_EQ(run(with_flag, "", "11").json()["seed"], 5);
  EXPECT_EQ(run(cmd, "", "oops").code, kExitUsage);
}

TEST(Cli, DeterministicBytes) {
  const std::vector<std::vector<std::string>> cmds = {
      {"--seed", "3", "algebroid", "njld", "--samples", "5", fixture("algebroid/affine-line.json")},
      {"--seed", "3", "algebroid", "phi", "--samples", "5", fixture("algebroid/so3-r3.json")},
      {"--format", "text", "les", fixture("lie/dim2-diag.json")},
      {"cohomology", "--complex", "njo", fixture("lie/sl2-adjoint.json")},
  };
  for (const auto& c : cmds) {
    const CliRun a = run(c), b = run(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.find("timing"), std::string::npos);
  }
}

TEST(Cli, TimingIsOptIn) {
  const CliRun r = run({"--timing", "check", "lie", fixture("lie/sl2.json")});
  EXPECT_TRUE(r.json().contains("timing_ms"));
}

TEST(Cli, NoFloatsInReports) {
  std::function<void(const Json&)> walk = [&](const Json& j) {
    EXPECT_FALSE(j.is_number_float()) << j;
    if (j.is_structured())
      for (const auto& x : j) walk(x);
  };
  walk(run({"check", "nijenhuis", fixture("lie/sl2-bad-operator.json")}).json());
  walk(run({"les", fixture("lie/sl2-adjoint.json")}).json());
  walk(run({"torsion", fixture("algebroid/so3-r3.json")}).json());
}
