#include "njk/io.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "njk/combinatorics.hpp"

namespace njk {

namespace {

std::string child(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

std::string child(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

const Json& require(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where.empty() ? "<root>" : where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(child(where, key), "missing field");
  return *it;
}

int read_int(const Json& j, const std::string& where, int lo, int hi) {
  if (!j.is_number_integer()) throw ParseError(where, "expected an integer");
  const auto v = j.get<long long>();
  if (v < lo || v > hi)
    throw ParseError(where, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  return static_cast<int>(v);
}

Rational read_rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw ParseError(where, "expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where, e.what());
  }
}

Poly read_poly(const Json& j, int n_vars, const std::string& where) {
  if (j.is_number_integer()) return Poly::constant(n_vars, Rational(j.get<long>()));
  if (!j.is_string()) throw ParseError(where, "expected a polynomial string");
  try {
    return parse_poly(j.get<std::string>(), n_vars);
  } catch (const std::invalid_argument& e) {
    throw ParseError(where, e.what());
  }
}

const Json& read_array(const Json& j, std::size_t size, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array");
  if (j.size() != size)
    throw ParseError(where, "expected " + std::to_string(size) + " entries, found " + std::to_string(j.size()));
  return j;
}

Matrix read_matrix(const Json& j, int rows, int cols, const std::string& where) {
  read_array(j, static_cast<std::size_t>(rows), where);
  Matrix m = zero_matrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    read_array(j[r], static_cast<std::size_t>(cols), child(where, r));
    for (std::size_t c = 0; c < j[r].size(); ++c) m[r][c] = read_rational(j[r][c], child(child(where, r), c));
  }
  return m;
}

std::vector<std::vector<Poly>> read_poly_matrix(const Json& j, int rows, int cols, int n_vars,
                                                const std::string& where) {
  read_array(j, static_cast<std::size_t>(rows), where);
  std::vector<std::vector<Poly>> m;
  for (std::size_t r = 0; r < j.size(); ++r) {
    read_array(j[r], static_cast<std::size_t>(cols), child(where, r));
    std::vector<Poly> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) row.push_back(read_poly(j[r][c], n_vars, child(child(where, r), c)));
    m.push_back(std::move(row));
  }
  return m;
}

// "i,j" with 0 <= i < j < dim
std::pair<int, int> read_pair_key(const std::string& key, int dim, const std::string& where) {
  const auto comma = key.find(',');
  auto bad = [&](const std::string& why) { return ParseError(where, "bad index pair \"" + key + "\": " + why); };
  if (comma == std::string::npos) throw bad("expected \"i,j\"");
  int i = 0, j = 0;
  try {
    std::size_t used = 0;
    i = std::stoi(key.substr(0, comma), &used);
    if (used != comma) throw bad("not an integer");
    const std::string rest = key.substr(comma + 1);
    j = std::stoi(rest, &used);
    if (used != rest.size()) throw bad("not an integer");
  } catch (const std::logic_error&) {
    throw bad("not an integer");
  }
  if (i < 0 || j < 0 || i >= dim || j >= dim) throw bad("index out of range for dimension " + std::to_string(dim));
  if (i >= j) throw bad("indices must satisfy i < j");
  return {i, j};
}

std::string pair_key(int i, int j) { return std::to_string(i) + "," + std::to_string(j); }

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(rational_json(x));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Json rational_json(const Rational& q) { return to_string(q); }
Json poly_json(const Poly& p) { return to_string(p); }

Json betti_json(const BettiReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"degree", row.degree}, {"dim", row.dim}, {"rank", row.rank}, {"betti", row.betti}});
  return rows;
}

Json read_json(const std::string& path, std::istream& in) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream f(path);
    if (!f) throw ParseError(path, "cannot open file");
    text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // report line:column of the failing byte
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError((path == "-" ? "<stdin>" : path) + ":" + std::to_string(line) + ":" + std::to_string(col),
                     "invalid JSON");
  }
}

LieFile parse_lie_file(const Json& j) {
  LieFile f;
  const int dim = read_int(require(j, "dim", ""), "dim", 0, 64);
  f.algebra = LieAlgebra(dim);
  if (j.contains("basis")) {
    const Json& b = read_array(j["basis"], static_cast<std::size_t>(dim), "basis");
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!b[i].is_string()) throw ParseError(child("basis", i), "expected a name");
      f.algebra.basis.push_back(b[i].get<std::string>());
    }
  }
  if (j.contains("brackets")) {
    const Json& br = j["brackets"];
    if (!br.is_object()) throw ParseError("brackets", "expected an object");
    for (const auto& [key, val] : br.items()) {
      const std::string where = "brackets.\"" + key + "\"";
      auto [a, b] = read_pair_key(key, dim, where);
      if (!val.is_object()) throw ParseError(where, "expected an object k -> rational");
      Vec v = zero_vec(static_cast<std::size_t>(dim));
      for (const auto& [k, q] : val.items()) {
        const std::string kw = where + ".\"" + k + "\"";
        int idx = 0;
        try {
          std::size_t used = 0;
          idx = std::stoi(k, &used);
          if (used != k.size()) throw ParseError(kw, "output index is not an integer");
        } catch (const std::logic_error&) {
          throw ParseError(kw, "output index is not an integer");
        }
        if (idx < 0 || idx >= dim) throw ParseError(kw, "output index " + k + " out of range");
        v[static_cast<std::size_t>(idx)] = read_rational(q, kw);
      }
      f.algebra.set_bracket(a, b, v);
    }
  }
  if (j.contains("nijenhuis")) f.nijenhuis = read_matrix(j["nijenhuis"], dim, dim, "nijenhuis");
  if (j.contains("representation")) {
    const Json& r = j["representation"];
    Representation rep;
    rep.dim_m = read_int(require(r, "dim", "representation"), "representation.dim", 0, 64);
    const Json& mats = read_array(require(r, "matrices", "representation"), static_cast<std::size_t>(dim),
                                  "representation.matrices");
    for (std::size_t i = 0; i < mats.size(); ++i)
      rep.action.push_back(read_matrix(mats[i], rep.dim_m, rep.dim_m, child("representation.matrices", i)));
    f.representation = std::move(rep);
  }
  if (j.contains("rep_nijenhuis")) {
    if (!f.representation) throw ParseError("rep_nijenhuis", "given without a representation");
    f.rep_nijenhuis = read_matrix(j["rep_nijenhuis"], f.representation->dim_m, f.representation->dim_m, "rep_nijenhuis");
  }
  return f;
}

Json to_json(const LieFile& f) {
  const LieAlgebra& L = f.algebra;
  Json j;
  j["dim"] = L.dim;
  if (!L.basis.empty()) j["basis"] = L.basis;
  Json br = Json::object();
  for (const auto& [ij, v] : L.structure) {
    Json entry = Json::object();
    for (std::size_t k = 0; k < v.size(); ++k)
      if (v[k] != 0) entry[std::to_string(k)] = rational_json(v[k]);
    if (!entry.empty()) br[pair_key(ij.first, ij.second)] = std::move(entry);
  }
  j["brackets"] = std::move(br);
  if (f.nijenhuis) j["nijenhuis"] = matrix_json(*f.nijenhuis);
  if (f.representation) {
    Json mats = Json::array();
    for (const auto& m : f.representation->action) mats.push_back(matrix_json(m));
    j["representation"] = {{"dim", f.representation->dim_m}, {"matrices", std::move(mats)}};
  }
  if (f.rep_nijenhuis) j["rep_nijenhuis"] = matrix_json(*f.rep_nijenhuis);
  return j;
}

AlgebroidFile parse_algebroid_file(const Json& j) {
  AlgebroidFile f;
  const int m = read_int(require(j, "base_dim", ""), "base_dim", 0, 16);
  const int n = read_int(require(j, "rank", ""), "rank", 0, 16);
  PolyAlgebroid A(m, n);
  A.anchor = read_poly_matrix(require(j, "anchor", ""), n, m, m, "anchor");
  if (j.contains("structure")) {
    const Json& st = j["structure"];
    if (!st.is_object()) throw ParseError("structure", "expected an object");
    for (const auto& [key, val] : st.items()) {
      const std::string where = "structure.\"" + key + "\"";
      auto [a, b] = read_pair_key(key, n, where);
      read_array(val, static_cast<std::size_t>(n), where);
      std::vector<Poly> v;
      for (std::size_t k = 0; k < val.size(); ++k) v.push_back(read_poly(val[k], m, child(where, k)));
      A.set_bracket(a, b, std::move(v));
    }
  }
  f.algebroid = std::move(A);
  if (j.contains("nijenhuis")) {
    f.nijenhuis = parse_vector_form(j["nijenhuis"], m, "nijenhuis", n);
    if (f.nijenhuis->degree() != 1) throw ParseError("nijenhuis", "expected an operator of degree 1");
  }
  return f;
}

Json to_json(const AlgebroidFile& f) {
  const PolyAlgebroid& A = f.algebroid;
  Json j;
  j["base_dim"] = A.base_dim;
  j["rank"] = A.rank;
  Json anchor = Json::array();
  for (const auto& row : A.anchor) {
    Json r = Json::array();
    for (const auto& p : row) r.push_back(poly_json(p));
    anchor.push_back(std::move(r));
  }
  j["anchor"] = std::move(anchor);
  Json st = Json::object();
  for (const auto& [ij, v] : A.structure) {
    bool any = false;
    Json r = Json::array();
    for (const auto& p : v) {
      any = any || !p.is_zero();
      r.push_back(poly_json(p));
    }
    if (any) st[pair_key(ij.first, ij.second)] = std::move(r);
  }
  j["structure"] = std::move(st);
  if (f.nijenhuis) {
    Json m = Json::array();
    for (int a = 0; a < A.rank; ++a) {
      Json r = Json::array();
      for (int c = 0; c < A.rank; ++c) r.push_back(poly_json(f.nijenhuis->coefficient({c}, a)));
      m.push_back(std::move(r));
    }
    j["nijenhuis"] = std::move(m);
  }
  return j;
}

VectorForm parse_vector_form(const Json& j, int n_vars, const std::string& where, int rank) {
  const int n = rank < 0 ? n_vars : rank;
  if (j.is_array()) {
    // column c is the image of e_c
    auto m = read_poly_matrix(j, n, n, n_vars, where);
    VectorForm P(n_vars, n, 1);
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) P.add({c}, a, m[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)]);
    return P;
  }
  const int deg = read_int(require(j, "degree", where), child(where, "degree"), 0, n);
  VectorForm k(n_vars, n, deg);
  if (!j.contains("terms")) return k;
  const Json& terms = j["terms"];
  if (!terms.is_array()) throw ParseError(child(where, "terms"), "expected an array");
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string tw = child(child(where, "terms"), t);
    const Json& in = read_array(require(terms[t], "in", tw), static_cast<std::size_t>(deg), child(tw, "in"));
    std::vector<int> idx;
    for (std::size_t s = 0; s < in.size(); ++s) idx.push_back(read_int(in[s], child(child(tw, "in"), s), 0, n - 1));
    const int out = read_int(require(terms[t], "out", tw), child(tw, "out"), 0, n - 1);
    k.add(idx, out, read_poly(require(terms[t], "coeff", tw), n_vars, child(tw, "coeff")));
  }
  return k;
}

Json to_json(const VectorForm& k) {
  Json terms = Json::array();
  for (const auto& [key, f] : k.entries())
    terms.push_back({{"in", key.first}, {"out", key.second}, {"coeff", poly_json(f)}});
  return {{"degree", k.degree()}, {"terms", std::move(terms)}};
}

}  // namespace njk
