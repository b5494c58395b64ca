#include "njk/forms.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "njk/combinatorics.hpp"

namespace njk {

namespace {

// Sorts idx and returns the sign of the sorting permutation, or 0 when an
// index repeats.
int canonicalize(std::vector<int>& idx) {
  int sign = koszul_sort(idx, [](int) { return 1; });
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

int perm_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return sign_pow(inv);
}

// det [args[t][idx[s]]]_{t,s}
Poly alternating_product(const std::vector<VectorField>& args, const std::vector<int>& idx, int n) {
  Poly total(n);
  std::vector<int> p(idx.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    Poly term = Poly::constant(n, perm_sign(p));
    for (std::size_t t = 0; t < p.size() && !term.is_zero(); ++t)
      term = term * args[t][static_cast<std::size_t>(idx[static_cast<std::size_t>(p[t])])];
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// args[sigma(from+1)-1], ..., args[sigma(from+count)-1]
template <class T>
std::vector<T> pick(const std::vector<T>& args, const Permutation& s, int from, int count) {
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = from + 1; i <= from + count; ++i) out.push_back(args[static_cast<std::size_t>(s(i) - 1)]);
  return out;
}

std::vector<VectorField> cons(VectorField head, const std::vector<VectorField>& tail) {
  std::vector<VectorField> out;
  out.reserve(tail.size() + 1);
  out.push_back(std::move(head));
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

std::vector<VectorField> basis_sections(int rank, int n_vars, const std::vector<int>& idx) {
  std::vector<VectorField> out;
  for (int j : idx) {
    VectorField v = zero_section(rank, n_vars);
    v.at(static_cast<std::size_t>(j)) = Poly::constant(n_vars, 1);
    out.push_back(std::move(v));
  }
  return out;
}

void check_compatible(int n_a, int deg_a, int n_b, int deg_b) {
  if (n_a != n_b || deg_a != deg_b) throw std::invalid_argument("forms of different shape");
}

// result += sign * form (x) field
void add_tensor(VectorForm& result, const ScalarForm& form, const VectorField& field, int sign) {
  if (form.degree() != result.degree() && !form.is_zero())
    throw std::logic_error("tensor of the wrong degree");
  for (const auto& [idx, f] : form.entries())
    for (std::size_t a = 0; a < field.size(); ++a)
      if (!field[a].is_zero()) result.add(idx, static_cast<int>(a), (f * field[a]).scaled(sign));
}

}  // namespace

VectorField zero_field(int n) { return VectorField(static_cast<std::size_t>(n), Poly(n)); }

VectorField zero_section(int rank, int n_vars) { return VectorField(static_cast<std::size_t>(rank), Poly(n_vars)); }

VectorField coordinate_field(int n, int a) {
  VectorField v = zero_field(n);
  v.at(static_cast<std::size_t>(a)) = Poly::constant(n, 1);
  return v;
}

bool is_zero(const VectorField& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  VectorField r(a);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  VectorField r(a);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

VectorField scaled(const VectorField& v, const Rational& c) {
  VectorField r(v);
  for (auto& p : r) p = p.scaled(c);
  return r;
}

VectorField scaled(const VectorField& v, const Poly& f) {
  VectorField r(v);
  for (auto& p : r) p = p * f;
  return r;
}

Poly act(const VectorField& v, const Poly& f) {
  Poly r(f.n_vars());
  for (std::size_t a = 0; a < v.size(); ++a)
    if (!v[a].is_zero()) r += v[a] * f.derivative(static_cast<int>(a));
  return r;
}

VectorField lie_bracket(const VectorField& v, const VectorField& w) {
  VectorField r(v.size());
  for (std::size_t a = 0; a < v.size(); ++a) r[a] = act(v, w[a]) - act(w, v[a]);
  return r;
}

// ---- ScalarForm ----

ScalarForm ScalarForm::function(const Poly& f) {
  ScalarForm r(f.n_vars(), 0);
  r.add({}, f);
  return r;
}

ScalarForm ScalarForm::basis(int n_vars, const std::vector<int>& idx) {
  ScalarForm r(n_vars, static_cast<int>(idx.size()));
  r.add(idx, Poly::constant(n_vars, 1));
  return r;
}

void ScalarForm::add(std::vector<int> idx, const Poly& f) {
  if (static_cast<int>(idx.size()) != deg_) throw std::invalid_argument("index tuple of the wrong length");
  int s = canonicalize(idx);
  if (s == 0 || f.is_zero()) return;
  auto it = entries_.find(idx);
  if (it == entries_.end()) {
    entries_.emplace(std::move(idx), f.scaled(s));
    return;
  }
  it->second += f.scaled(s);
  if (it->second.is_zero()) entries_.erase(it);
}

Poly ScalarForm::coefficient(std::vector<int> idx) const {
  int s = canonicalize(idx);
  if (s == 0) return Poly(n_);
  auto it = entries_.find(idx);
  return it == entries_.end() ? Poly(n_) : it->second.scaled(s);
}

Poly ScalarForm::eval(const std::vector<VectorField>& args) const {
  if (static_cast<int>(args.size()) != deg_) throw std::invalid_argument("wrong number of arguments");
  Poly total(n_);
  for (const auto& [idx, f] : entries_) total += f * alternating_product(args, idx, n_);
  return total;
}

ScalarForm ScalarForm::operator+(const ScalarForm& o) const {
  check_compatible(n_, deg_, o.n_, o.deg_);
  ScalarForm r(*this);
  for (const auto& [idx, f] : o.entries_) r.add(idx, f);
  return r;
}

ScalarForm ScalarForm::operator-(const ScalarForm& o) const { return *this + o.scaled(-1); }

ScalarForm ScalarForm::scaled(const Rational& c) const {
  ScalarForm r(n_, deg_);
  for (const auto& [idx, f] : entries_) r.add(idx, f.scaled(c));
  return r;
}

ScalarForm ScalarForm::scaled(const Poly& g) const {
  ScalarForm r(n_, deg_);
  for (const auto& [idx, f] : entries_) r.add(idx, f * g);
  return r;
}

// ---- VectorForm ----

VectorForm VectorForm::from_field(const VectorField& v) {
  const int n = static_cast<int>(v.size());
  VectorForm r(n, 0);
  for (int a = 0; a < n; ++a) r.add({}, a, v[static_cast<std::size_t>(a)]);
  return r;
}

VectorForm VectorForm::tensor(const ScalarForm& alpha, const VectorField& x) {
  VectorForm r(alpha.n_vars(), alpha.degree());
  add_tensor(r, alpha, x, 1);
  return r;
}

VectorForm VectorForm::from_operator(const std::vector<std::vector<Poly>>& m) {
  const int n = static_cast<int>(m.size());
  VectorForm r(n, 1);
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j) r.add({j}, a, m[static_cast<std::size_t>(a)].at(static_cast<std::size_t>(j)));
  return r;
}

VectorForm VectorForm::diagonal_coordinates(int n) {
  VectorForm r(n, 1);
  for (int i = 0; i < n; ++i) r.add({i}, i, Poly::variable(n, i));
  return r;
}

void VectorForm::add(std::vector<int> idx, int out, const Poly& f) {
  if (static_cast<int>(idx.size()) != deg_) throw std::invalid_argument("index tuple of the wrong length");
  if (out < 0 || out >= rank_) throw std::invalid_argument("output index out of range");
  for (int i : idx)
    if (i < 0 || i >= rank_) throw std::invalid_argument("input index out of range");
  int s = canonicalize(idx);
  if (s == 0 || f.is_zero()) return;
  Key key{std::move(idx), out};
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(std::move(key), f.scaled(s));
    return;
  }
  it->second += f.scaled(s);
  if (it->second.is_zero()) entries_.erase(it);
}

Poly VectorForm::coefficient(std::vector<int> idx, int out) const {
  int s = canonicalize(idx);
  if (s == 0) return Poly(n_);
  auto it = entries_.find(Key{std::move(idx), out});
  return it == entries_.end() ? Poly(n_) : it->second.scaled(s);
}

VectorField VectorForm::eval(const std::vector<VectorField>& args) const {
  if (static_cast<int>(args.size()) != deg_) throw std::invalid_argument("wrong number of arguments");
  VectorField r = zero_section(rank_, n_);
  // group by index tuple so each alternating product is computed once
  const std::vector<int>* last = nullptr;
  Poly det(n_);
  for (const auto& [key, f] : entries_) {
    if (last == nullptr || *last != key.first) {
      det = alternating_product(args, key.first, n_);
      last = &key.first;
    }
    if (!det.is_zero()) r[static_cast<std::size_t>(key.second)] += f * det;
  }
  return r;
}

VectorField VectorForm::eval_coordinates(const std::vector<int>& idx) const {
  VectorField r = zero_section(rank_, n_);
  std::vector<int> sorted(idx);
  int s = canonicalize(sorted);
  if (s == 0) return r;
  auto it = entries_.lower_bound(Key{sorted, 0});
  for (; it != entries_.end() && it->first.first == sorted; ++it)
    r[static_cast<std::size_t>(it->first.second)] = it->second.scaled(s);
  return r;
}

VectorField VectorForm::as_field() const {
  if (deg_ != 0) throw std::invalid_argument("not a vector field");
  return eval_coordinates({});
}

int VectorForm::poly_degree() const {
  int d = -1;
  for (const auto& [k, f] : entries_) d = std::max(d, f.total_degree());
  return d;
}

bool VectorForm::is_homogeneous(int poly_degree) const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [&](const auto& e) { return e.second.is_homogeneous(poly_degree); });
}

VectorForm VectorForm::operator+(const VectorForm& o) const {
  check_compatible(n_, deg_, o.n_, o.deg_);
  if (rank_ != o.rank_) throw std::invalid_argument("forms of different rank");
  VectorForm r(*this);
  for (const auto& [k, f] : o.entries_) r.add(k.first, k.second, f);
  return r;
}

VectorForm VectorForm::operator-(const VectorForm& o) const { return *this + o.scaled(-1); }

VectorForm VectorForm::scaled(const Rational& c) const {
  VectorForm r(n_, rank_, deg_);
  for (const auto& [k, f] : entries_) r.add(k.first, k.second, f.scaled(c));
  return r;
}

namespace {

std::string dx_string(const std::vector<int>& idx) {
  std::string s;
  for (int i : idx) s += (s.empty() ? "dx" : "^dx") + std::to_string(i + 1);
  return s;
}

}  // namespace

std::string to_string(const ScalarForm& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [idx, p] : f.entries()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(p) + ")";
    if (!idx.empty()) out += " " + dx_string(idx);
  }
  return out;
}

std::string to_string(const VectorForm& k) {
  if (k.is_zero()) return "0";
  std::string out;
  for (const auto& [key, p] : k.entries()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(p) + ")";
    if (!key.first.empty()) out += " " + dx_string(key.first);
    out += " d/dx" + std::to_string(key.second + 1);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const ScalarForm& f) { return os << to_string(f); }
std::ostream& operator<<(std::ostream& os, const VectorForm& k) { return os << to_string(k); }

// ---- calculus ----

ScalarForm wedge(const ScalarForm& a, const ScalarForm& b) {
  ScalarForm r(a.n_vars(), a.degree() + b.degree());
  for (const auto& [i, f] : a.entries())
    for (const auto& [j, g] : b.entries()) {
      std::vector<int> idx(i);
      idx.insert(idx.end(), j.begin(), j.end());
      r.add(std::move(idx), f * g);
    }
  return r;
}

ScalarForm de_rham_d(const ScalarForm& b) {
  const int n = b.n_vars();
  ScalarForm r(n, b.degree() + 1);
  for (const auto& [idx, f] : b.entries())
    for (int j = 0; j < n; ++j) {
      Poly df = f.derivative(j);
      if (df.is_zero()) continue;
      std::vector<int> key{j};
      key.insert(key.end(), idx.begin(), idx.end());
      r.add(std::move(key), df);
    }
  return r;
}

namespace {

// Calls emit(J, sign, V, rest) for every increasing J of length k+l-1 and
// every (k, l-1)-shuffle, with V = K on the first block (coordinate
// fields) and rest the indices of the second block.
template <class Emit>
void for_insertions(const VectorForm& K, int l, Emit emit) {
  const int n = K.n_vars(), k = K.degree();
  const int m = k + l - 1;
  if (l <= 0 || m < 0 || m > n) return;
  const auto shuffles = enumerate_shuffles({k, l - 1});
  for (const auto& J : combinations(n, m))
    for (const auto& s : shuffles) {
      VectorField v = K.eval_coordinates(pick(J, s, 0, k));
      if (is_zero(v)) continue;
      emit(J, s.sign(), v, pick(J, s, k, l - 1));
    }
}

}  // namespace

ScalarForm interior_product(const VectorForm& K, const ScalarForm& beta) {
  const int n = K.n_vars(), k = K.degree(), l = beta.degree();
  ScalarForm r(n, k + l - 1);
  for_insertions(K, l, [&](const std::vector<int>& J, int sign, const VectorField& v, const std::vector<int>& rest) {
    for (int a = 0; a < n; ++a) {
      if (v[static_cast<std::size_t>(a)].is_zero()) continue;
      std::vector<int> idx{a};
      idx.insert(idx.end(), rest.begin(), rest.end());
      Poly c = beta.coefficient(std::move(idx));
      if (!c.is_zero()) r.add(J, (v[static_cast<std::size_t>(a)] * c).scaled(sign));
    }
  });
  return r;
}

VectorForm interior_product(const VectorForm& K, const VectorForm& L) {
  const int n = K.n_vars(), k = K.degree(), l = L.degree();
  VectorForm r(n, k + l - 1);
  for_insertions(K, l, [&](const std::vector<int>& J, int sign, const VectorField& v, const std::vector<int>& rest) {
    for (int a = 0; a < n; ++a) {
      if (v[static_cast<std::size_t>(a)].is_zero()) continue;
      std::vector<int> idx{a};
      idx.insert(idx.end(), rest.begin(), rest.end());
      VectorField w = L.eval_coordinates(idx);
      for (int b = 0; b < n; ++b)
        if (!w[static_cast<std::size_t>(b)].is_zero())
          r.add(J, b, (v[static_cast<std::size_t>(a)] * w[static_cast<std::size_t>(b)]).scaled(sign));
    }
  });
  return r;
}

VectorForm rn_bracket_forms(const VectorForm& K, const VectorForm& L) {
  const int k = K.degree(), l = L.degree();
  VectorForm r = interior_product(K, L);
  VectorForm s = interior_product(L, K);
  return r - s.scaled(sign_pow(static_cast<long long>(k - 1) * (l - 1)));
}

ScalarForm lie_derivative(const VectorForm& K, const ScalarForm& beta) {
  const int k = K.degree();
  ScalarForm a = interior_product(K, de_rham_d(beta));
  ScalarForm b = de_rham_d(interior_product(K, beta));
  return a - b.scaled(sign_pow(k - 1));
}

VectorField fn_bracket_eval(const VectorForm& K, const VectorForm& L, const std::vector<VectorField>& args) {
  return fn_bracket_eval(K, L, args, lie_bracket);
}

VectorField fn_bracket_eval(const VectorForm& K, const VectorForm& L, const std::vector<VectorField>& args,
                            const SectionBracket& br_fn) {
  const int k = K.degree(), l = L.degree();
  if (static_cast<int>(args.size()) != k + l) throw std::invalid_argument("wrong number of arguments");
  VectorField r = zero_section(K.rank(), K.n_vars());

  for (const auto& s : enumerate_shuffles({k, l})) {
    VectorField a = K.eval(pick(args, s, 0, k));
    if (is_zero(a)) continue;
    VectorField b = L.eval(pick(args, s, k, l));
    r = r + scaled(br_fn(a, b), s.sign());
  }
  if (l >= 1) {
    for (const auto& s : enumerate_shuffles({k, 1, l - 1})) {
      VectorField a = K.eval(pick(args, s, 0, k));
      if (is_zero(a)) continue;
      VectorField br = br_fn(a, args[static_cast<std::size_t>(s(k + 1) - 1)]);
      r = r - scaled(L.eval(cons(br, pick(args, s, k + 1, l - 1))), s.sign());
    }
  }
  if (k >= 1) {
    const int e = sign_pow(static_cast<long long>(k) * l);
    for (const auto& s : enumerate_shuffles({l, 1, k - 1})) {
      VectorField a = L.eval(pick(args, s, 0, l));
      if (is_zero(a)) continue;
      VectorField br = br_fn(a, args[static_cast<std::size_t>(s(l + 1) - 1)]);
      r = r + scaled(K.eval(cons(br, pick(args, s, l + 1, k - 1))), e * s.sign());
    }
  }
  if (k >= 1 && l >= 1) {
    const int e4 = -sign_pow(k);
    for (const auto& s : enumerate_shuffles({2, k - 1, l - 1})) {
      VectorField br = br_fn(args[static_cast<std::size_t>(s(1) - 1)], args[static_cast<std::size_t>(s(2) - 1)]);
      if (is_zero(br)) continue;
      VectorField inner = K.eval(cons(br, pick(args, s, 2, k - 1)));
      r = r + scaled(L.eval(cons(inner, pick(args, s, k + 1, l - 1))), e4 * s.sign());
    }
    const int e5 = sign_pow(static_cast<long long>(k - 1) * l);
    for (const auto& s : enumerate_shuffles({2, l - 1, k - 1})) {
      VectorField br = br_fn(args[static_cast<std::size_t>(s(1) - 1)], args[static_cast<std::size_t>(s(2) - 1)]);
      if (is_zero(br)) continue;
      VectorField inner = L.eval(cons(br, pick(args, s, 2, l - 1)));
      r = r + scaled(K.eval(cons(inner, pick(args, s, l + 1, k - 1))), e5 * s.sign());
    }
  }
  return r;
}

VectorForm fn_bracket(const VectorForm& K, const VectorForm& L) {
  if (K.rank() != K.n_vars()) throw std::invalid_argument("tangent FN bracket on a non-tangent form");
  return fn_bracket(K, L, lie_bracket);
}

VectorForm fn_bracket(const VectorForm& K, const VectorForm& L, const SectionBracket& br) {
  const int n = K.n_vars(), rk = K.rank(), k = K.degree(), l = L.degree();
  if (n != L.n_vars() || rk != L.rank()) throw std::invalid_argument("forms on different spaces");
  VectorForm r(n, rk, k + l);
  if (k < 0 || l < 0 || K.is_zero() || L.is_zero()) return r;
  for (const auto& J : combinations(rk, k + l)) {
    VectorField v = fn_bracket_eval(K, L, basis_sections(rk, n, J), br);
    for (int a = 0; a < rk; ++a) r.add(J, a, v[static_cast<std::size_t>(a)]);
  }
  return r;
}

VectorForm fn_bracket_decomposable(const ScalarForm& a, const VectorField& x, const ScalarForm& b,
                                   const VectorField& y) {
  const int n = a.n_vars(), k = a.degree(), l = b.degree();
  const VectorForm X = VectorForm::from_field(x), Y = VectorForm::from_field(y);
  VectorForm r(n, k + l);
  add_tensor(r, wedge(a, b), lie_bracket(x, y), 1);
  add_tensor(r, wedge(a, lie_derivative(X, b)), y, 1);
  add_tensor(r, wedge(lie_derivative(Y, a), b), x, -1);
  if (l >= 1) add_tensor(r, wedge(de_rham_d(a), interior_product(X, b)), y, sign_pow(k));
  if (k >= 1) add_tensor(r, wedge(interior_product(Y, a), de_rham_d(b)), x, sign_pow(k));
  return r;
}

VectorForm fn_bracket_by_definition(const VectorForm& K, const VectorForm& L) {
  const int n = K.n_vars();
  VectorForm r(n, K.degree() + L.degree());
  if (K.degree() < 0 || L.degree() < 0) return r;
  for (const auto& [kk, f] : K.entries()) {
    ScalarForm a = ScalarForm::basis(n, kk.first);
    VectorField x = zero_field(n);
    x[static_cast<std::size_t>(kk.second)] = f;
    for (const auto& [lk, g] : L.entries()) {
      ScalarForm b = ScalarForm::basis(n, lk.first);
      VectorField y = zero_field(n);
      y[static_cast<std::size_t>(lk.second)] = g;
      r = r + fn_bracket_decomposable(a, x, b, y);
    }
  }
  return r;
}

VectorField nijenhuis_torsion_eval(const VectorForm& P, const VectorField& x, const VectorField& y) {
  return nijenhuis_torsion_eval(P, x, y, lie_bracket);
}

VectorField nijenhuis_torsion_eval(const VectorForm& P, const VectorField& x, const VectorField& y,
                                   const SectionBracket& br) {
  VectorField px = P.eval({x}), py = P.eval({y});
  VectorField r = br(px, py) - P.eval({br(px, y)}) - P.eval({br(x, py)});
  return r + P.eval({P.eval({br(x, y)})});
}

VectorForm nijenhuis_torsion_form(const VectorForm& P) {
  if (P.rank() != P.n_vars()) throw std::invalid_argument("tangent torsion of a non-tangent form");
  return nijenhuis_torsion_form(P, lie_bracket);
}

VectorForm nijenhuis_torsion_form(const VectorForm& P, const SectionBracket& br) {
  if (P.degree() != 1) throw std::invalid_argument("torsion needs a (1,1)-form");
  const int n = P.n_vars(), rk = P.rank();
  VectorForm r(n, rk, 2);
  for (const auto& J : combinations(rk, 2)) {
    const auto e = basis_sections(rk, n, J);
    VectorField v = nijenhuis_torsion_eval(P, e[0], e[1], br);
    for (int a = 0; a < rk; ++a) r.add(J, a, v[static_cast<std::size_t>(a)]);
  }
  return r;
}

VectorForm d_fn(const VectorForm& P, const VectorForm& K) {
  if (!nijenhuis_torsion_form(P).is_zero()) throw std::domain_error("d_FN needs a Nijenhuis operator");
  return fn_bracket(P, K);
}

VectorForm poincare_h(const VectorForm& K) {
  const int n = K.n_vars(), j = K.degree();
  VectorForm r(n, j - 1);
  if (j <= 0) return r;
  for (const auto& [key, f] : K.entries()) {
    const auto& idx = key.first;
    auto it = std::find(idx.begin(), idx.end(), key.second);
    if (it == idx.end()) continue;
    const int k = static_cast<int>(it - idx.begin());
    std::vector<int> rest(idx.begin(), it);
    rest.insert(rest.end(), it + 1, idx.end());
    r.add(std::move(rest), key.second, f.scaled(sign_pow(k + 1)));
  }
  return r;
}

std::vector<VectorForm> monomial_forms(int n, int form_degree, int poly_degree) {
  std::vector<VectorForm> out;
  const auto monos = monomials_of_degree(n, poly_degree);
  for (const auto& I : combinations(n, form_degree))
    for (int a = 0; a < n; ++a)
      for (const auto& e : monos) {
        VectorForm k(n, form_degree);
        k.add(I, a, Poly::monomial(n, e));
        out.push_back(std::move(k));
      }
  return out;
}

HomotopyReport check_homotopy(int n, int max_poly_degree, const std::vector<int>& form_degrees) {
  const VectorForm P = VectorForm::diagonal_coordinates(n);
  HomotopyReport rep;
  for (int j : form_degrees) {
    if (j < 0 || j > n) continue;
    for (int d = 0; d <= max_poly_degree; ++d)
      for (const auto& K : monomial_forms(n, j, d)) {
        VectorForm lhs = poincare_h(fn_bracket(P, K));
        if (j >= 1) lhs = lhs + fn_bracket(P, poincare_h(K));
        ++rep.checked;
        if (lhs != K && rep.ok) {
          rep.ok = false;
          rep.detail = "K = " + to_string(K) + " gives " + to_string(lhs);
        }
      }
  }
  return rep;
}

std::vector<FnSliceBetti> fn_betti(int n, int max_poly_degree, int max_form_degree) {
  const VectorForm P = VectorForm::diagonal_coordinates(n);
  const int top = std::min(n, max_form_degree + 1);
  std::vector<FnSliceBetti> out;
  for (int d = 0; d <= max_poly_degree; ++d) {
    std::vector<std::vector<VectorForm>> basis;
    std::vector<std::map<std::pair<VectorForm::Key, Exponent>, std::size_t>> index(static_cast<std::size_t>(top) + 1);
    for (int j = 0; j <= top; ++j) {
      basis.push_back(monomial_forms(n, j, d));
      for (std::size_t c = 0; c < basis.back().size(); ++c) {
        const auto& [key, f] = *basis.back()[c].entries().begin();
        index[static_cast<std::size_t>(j)][{key, f.terms().begin()->first}] = c;
      }
    }
    LinearComplex cx;
    for (const auto& b : basis) cx.dims.push_back(b.size());
    for (int j = 0; j < top; ++j) {
      const auto& src = basis[static_cast<std::size_t>(j)];
      const auto& target = index[static_cast<std::size_t>(j) + 1];
      SparseMatrix m(cx.dims[static_cast<std::size_t>(j) + 1], src.size());
      for (std::size_t c = 0; c < src.size(); ++c) {
        VectorForm img = fn_bracket(P, src[c]);
        if (!img.is_homogeneous(d)) throw std::logic_error("d_FN left the polynomial-degree slice");
        for (const auto& [key, f] : img.entries())
          for (const auto& [e, v] : f.terms()) m.set(target.at({key, e}), c, v);
      }
      cx.d.push_back(std::move(m));
    }
    out.push_back({d, betti(cx, max_form_degree)});
  }
  return out;
}

}  // namespace njk
