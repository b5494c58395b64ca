#include "njk/algebroid.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

#include "njk/combinatorics.hpp"

namespace njk {

namespace {

int canonicalize(std::vector<int>& idx) {
  int sign = koszul_sort(idx, [](int) { return 1; });
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

void add_entry(std::map<GradedField::Key, Poly>& m, std::vector<int> idx, int out, const Poly& f) {
  int s = canonicalize(idx);
  if (s == 0 || f.is_zero()) return;
  GradedField::Key key{std::move(idx), out};
  auto it = m.find(key);
  if (it == m.end()) {
    m.emplace(std::move(key), f.scaled(s));
    return;
  }
  it->second += f.scaled(s);
  if (it->second.is_zero()) m.erase(it);
}

Poly lookup(const std::map<GradedField::Key, Poly>& m, std::vector<int> idx, int out, int n_vars) {
  int s = canonicalize(idx);
  if (s == 0) return Poly(n_vars);
  auto it = m.find({idx, out});
  return it == m.end() ? Poly(n_vars) : it->second.scaled(s);
}

// idx[sigma(from+1)-1], ..., idx[sigma(from+count)-1]
std::vector<int> pick_idx(const std::vector<int>& idx, const Permutation& s, int from, int count) {
  std::vector<int> out;
  for (int i = from + 1; i <= from + count; ++i) out.push_back(idx[static_cast<std::size_t>(s(i) - 1)]);
  return out;
}

std::vector<int> prepend(int head, std::vector<int> tail) {
  tail.insert(tail.begin(), head);
  return tail;
}

void check_same_shape(const GradedField& x, const GradedField& y) {
  if (x.base_dim() != y.base_dim() || x.rank() != y.rank())
    throw std::invalid_argument("graded fields on different bundles");
}

std::vector<Section> frame(const PolyAlgebroid& A, const std::vector<int>& idx) {
  std::vector<Section> out;
  for (int j : idx) out.push_back(A.basis(j));
  return out;
}

Section apply_op(const VectorForm& P, const Section& e) { return P.eval({e}); }

}  // namespace

// ---------------------------------------------------------------------------
// PolyAlgebroid

PolyAlgebroid::PolyAlgebroid(int m, int n)
    : base_dim(m),
      rank(n),
      anchor(static_cast<std::size_t>(n), std::vector<Poly>(static_cast<std::size_t>(m), Poly(m))) {}

PolyAlgebroid PolyAlgebroid::tangent(int m) {
  PolyAlgebroid A(m, m);
  for (int i = 0; i < m; ++i) A.anchor[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Poly::constant(m, 1);
  return A;
}

PolyAlgebroid PolyAlgebroid::from_lie(const LieAlgebra& g) {
  PolyAlgebroid A(0, g.dim);
  for (const auto& [ij, v] : g.structure) {
    std::vector<Poly> c;
    for (const auto& x : v) c.push_back(Poly::constant(0, x));
    A.set_bracket(ij.first, ij.second, std::move(c));
  }
  return A;
}

void PolyAlgebroid::set_bracket(int i, int j, std::vector<Poly> value) {
  if (static_cast<int>(value.size()) != rank) throw std::invalid_argument("bracket value of the wrong length");
  if (i < 0 || j < 0 || i >= rank || j >= rank) throw std::invalid_argument("bracket index out of range");
  if (i == j) {
    for (const auto& p : value)
      if (!p.is_zero()) throw std::invalid_argument("[e_i, e_i] must vanish");
    return;
  }
  if (i > j) {
    std::swap(i, j);
    for (auto& p : value) p = -p;
  }
  structure[{i, j}] = std::move(value);
}

Poly PolyAlgebroid::c(int i, int j, int k) const {
  if (i == j) return Poly(base_dim);
  const bool flip = i > j;
  auto it = structure.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
  if (it == structure.end()) return Poly(base_dim);
  const Poly& v = it->second[static_cast<std::size_t>(k)];
  return flip ? -v : v;
}

Poly PolyAlgebroid::rho(int i, int a) const { return anchor[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)]; }

Section PolyAlgebroid::basis(int i) const {
  Section e = zero();
  e.at(static_cast<std::size_t>(i)) = Poly::constant(base_dim, 1);
  return e;
}

VectorField PolyAlgebroid::anchor_of(const Section& e) const {
  VectorField v = zero_field(base_dim);
  for (int i = 0; i < rank; ++i) {
    const Poly& f = e[static_cast<std::size_t>(i)];
    if (f.is_zero()) continue;
    for (int a = 0; a < base_dim; ++a) v[static_cast<std::size_t>(a)] += f * rho(i, a);
  }
  return v;
}

// [f^i e_i, g^j e_j] = f^i rho_i(g^j) e_j - g^j rho_j(f^i) e_i + f^i g^j c_ij^k e_k
Section PolyAlgebroid::bracket(const Section& e, const Section& f) const {
  Section r = zero();
  const VectorField re = anchor_of(e), rf = anchor_of(f);
  for (int j = 0; j < rank; ++j) {
    r[static_cast<std::size_t>(j)] += act(re, f[static_cast<std::size_t>(j)]);
    r[static_cast<std::size_t>(j)] -= act(rf, e[static_cast<std::size_t>(j)]);
  }
  for (const auto& [ij, v] : structure) {
    const auto [i, j] = ij;
    Poly w = e[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(j)] -
             e[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(i)];
    if (w.is_zero()) continue;
    for (int k = 0; k < rank; ++k) r[static_cast<std::size_t>(k)] += w * v[static_cast<std::size_t>(k)];
  }
  return r;
}

SectionBracket PolyAlgebroid::bracket_fn() const {
  return [A = *this](const Section& e, const Section& f) { return A.bracket(e, f); };
}

// ---------------------------------------------------------------------------
// GradedField

void GradedField::add_a(std::vector<int> idx, int alpha, const Poly& f) {
  if (static_cast<int>(idx.size()) != deg_) throw std::invalid_argument("a-part tuple of the wrong length");
  if (alpha < 0 || alpha >= m_) throw std::invalid_argument("base index out of range");
  for (int i : idx)
    if (i < 0 || i >= n_) throw std::invalid_argument("fiber index out of range");
  add_entry(a_, std::move(idx), alpha, f);
}

void GradedField::add_d(std::vector<int> idx, int beta, const Poly& g) {
  if (static_cast<int>(idx.size()) != deg_ + 1) throw std::invalid_argument("d-part tuple of the wrong length");
  if (beta < 0 || beta >= n_) throw std::invalid_argument("fiber index out of range");
  for (int i : idx)
    if (i < 0 || i >= n_) throw std::invalid_argument("fiber index out of range");
  add_entry(d_, std::move(idx), beta, g);
}

Poly GradedField::a_coefficient(std::vector<int> idx, int alpha) const { return lookup(a_, std::move(idx), alpha, m_); }

Poly GradedField::d_coefficient(std::vector<int> idx, int beta) const { return lookup(d_, std::move(idx), beta, m_); }

ScalarForm GradedField::act(const ScalarForm& f) const {
  ScalarForm r(m_, f.degree() + deg_);
  if (r.degree() < 0) return r;
  for (const auto& [key, coef] : a_)
    for (const auto& [k, h] : f.entries()) {
      Poly dh = h.derivative(key.second);
      if (dh.is_zero()) continue;
      std::vector<int> idx(key.first);
      idx.insert(idx.end(), k.begin(), k.end());
      r.add(std::move(idx), coef * dh);
    }
  // d/deta^beta is an odd derivation acting from the left
  for (const auto& [key, g] : d_)
    for (const auto& [k, h] : f.entries())
      for (std::size_t s = 0; s < k.size(); ++s) {
        if (k[s] != key.second) continue;
        std::vector<int> idx(key.first);
        for (std::size_t t = 0; t < k.size(); ++t)
          if (t != s) idx.push_back(k[t]);
        r.add(std::move(idx), (g * h).scaled(sign_pow(static_cast<long long>(s))));
      }
  return r;
}

ScalarForm GradedField::a_of(const Poly& h) const {
  ScalarForm r(m_, deg_);
  for (const auto& [key, f] : a_) {
    Poly dh = h.derivative(key.second);
    if (!dh.is_zero()) r.add(key.first, f * dh);
  }
  return r;
}

GradedField GradedField::operator+(const GradedField& o) const {
  check_same_shape(*this, o);
  if (deg_ != o.deg_) throw std::invalid_argument("graded fields of different degree");
  GradedField r(*this);
  for (const auto& [k, f] : o.a_) add_entry(r.a_, k.first, k.second, f);
  for (const auto& [k, g] : o.d_) add_entry(r.d_, k.first, k.second, g);
  return r;
}

GradedField GradedField::operator-(const GradedField& o) const { return *this + o.scaled(-1); }

GradedField GradedField::scaled(const Rational& c) const {
  GradedField r(m_, n_, deg_);
  if (c == 0) return r;
  for (const auto& [k, f] : a_) r.a_.emplace(k, f.scaled(c));
  for (const auto& [k, g] : d_) r.d_.emplace(k, g.scaled(c));
  return r;
}

namespace {

std::string eta_word(const std::vector<int>& idx) {
  std::string s;
  for (int i : idx) s += (s.empty() ? "" : "^") + std::string("eta") + std::to_string(i + 1);
  return s;
}

}  // namespace

std::string to_string(const GradedField& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const Poly& f, const std::vector<int>& idx, const std::string& vec) {
    os << (first ? "" : " + ") << "(" << to_string(f) << ")";
    if (!idx.empty()) os << "*" << eta_word(idx);
    os << "*" << vec;
    first = false;
  };
  for (const auto& [k, f] : x.a_part()) emit(f, k.first, "d/dx" + std::to_string(k.second + 1));
  for (const auto& [k, g] : x.d_part()) emit(g, k.first, "d/deta" + std::to_string(k.second + 1));
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GradedField& x) { return os << to_string(x); }

GradedField homological_field_q(const PolyAlgebroid& A) {
  GradedField q(A.base_dim, A.rank, 1);
  for (int i = 0; i < A.rank; ++i)
    for (int a = 0; a < A.base_dim; ++a) q.add_a({i}, a, A.rho(i, a));
  for (const auto& [pq, v] : A.structure)
    for (int k = 0; k < A.rank; ++k) q.add_d({pq.first, pq.second}, k, -v[static_cast<std::size_t>(k)]);
  return q;
}

// With b = |X| + 1, c = |Y| + 1, X = (f, g), Y = (phi, psi):
//   a-part on I: Sh(b-1,c-1) f^t d_t phi^a + Sh(b,c-2) g^k phi^a_{k..}
//                - eps [Sh(c-1,b-1) phi^t d_t f^a + Sh(c,b-2) psi^k f^a_{k..}]
//   d-part on J: Sh(b-1,c) f^a d_a psi^w + Sh(b,c-1) g^k psi^w_{k..}
//                - eps [Sh(c-1,b) phi^a d_a g^w + Sh(c,b-1) psi^k g^w_{k..}]
// with eps = (-1)^{(b-1)(c-1)}.
GradedField graded_commutator(const GradedField& x, const GradedField& y) {
  check_same_shape(x, y);
  const int m = x.base_dim(), n = x.rank();
  const int b = x.degree() + 1, c = y.degree() + 1;
  const int eps = sign_pow(static_cast<long long>(b - 1) * (c - 1));
  GradedField r(m, n, b + c - 2);

  // sum over Sh(p, q) of sgn * F(first p) o G(rest), F/G given as callbacks
  auto shuffle_sum = [&](const std::vector<int>& idx, int p, int q, auto&& term) {
    Poly total(m);
    if (p < 0 || q < 0) return total;
    for (const auto& s : enumerate_shuffles({p, q})) {
      Poly t = term(pick_idx(idx, s, 0, p), pick_idx(idx, s, p, q));
      if (!t.is_zero()) total += t.scaled(s.sign());
    }
    return total;
  };
  // F^t_{u} d_t G^out_{v}, both from a-parts or F from an a-part
  auto derivative_term = [&](const GradedField& F, const std::vector<int>& u, bool g_from_d, const GradedField& G,
                             const std::vector<int>& v, int out) {
    Poly total(m);
    Poly gv = g_from_d ? G.d_coefficient(v, out) : G.a_coefficient(v, out);
    if (gv.is_zero()) return total;
    for (int t = 0; t < m; ++t) {
      Poly ft = F.a_coefficient(u, t);
      if (!ft.is_zero()) total += ft * gv.derivative(t);
    }
    return total;
  };
  // F^k_{u} G^out_{k v}, F from a d-part
  auto contraction_term = [&](const GradedField& F, const std::vector<int>& u, bool g_from_d, const GradedField& G,
                              const std::vector<int>& v, int out) {
    Poly total(m);
    for (int k = 0; k < n; ++k) {
      Poly fk = F.d_coefficient(u, k);
      if (fk.is_zero()) continue;
      Poly gk = g_from_d ? G.d_coefficient(prepend(k, v), out) : G.a_coefficient(prepend(k, v), out);
      if (!gk.is_zero()) total += fk * gk;
    }
    return total;
  };

  if (b + c - 2 >= 0) {
    for (const auto& I : combinations(n, b + c - 2))
      for (int a = 0; a < m; ++a) {
        Poly v(m);
        v += shuffle_sum(I, b - 1, c - 1, [&](auto u, auto w) { return derivative_term(x, u, false, y, w, a); });
        v += shuffle_sum(I, b, c - 2, [&](auto u, auto w) { return contraction_term(x, u, false, y, w, a); });
        Poly back(m);
        back += shuffle_sum(I, c - 1, b - 1, [&](auto u, auto w) { return derivative_term(y, u, false, x, w, a); });
        back += shuffle_sum(I, c, b - 2, [&](auto u, auto w) { return contraction_term(y, u, false, x, w, a); });
        v -= back.scaled(eps);
        r.add_a(I, a, v);
      }
  }
  if (b + c - 1 >= 0) {
    for (const auto& J : combinations(n, b + c - 1))
      for (int w = 0; w < n; ++w) {
        Poly v(m);
        v += shuffle_sum(J, b - 1, c, [&](auto u, auto t) { return derivative_term(x, u, true, y, t, w); });
        v += shuffle_sum(J, b, c - 1, [&](auto u, auto t) { return contraction_term(x, u, true, y, t, w); });
        Poly back(m);
        back += shuffle_sum(J, c - 1, b, [&](auto u, auto t) { return derivative_term(y, u, true, x, t, w); });
        back += shuffle_sum(J, c, b - 1, [&](auto u, auto t) { return contraction_term(y, u, true, x, t, w); });
        v -= back.scaled(eps);
        r.add_d(J, w, v);
      }
  }
  return r;
}

GradedField graded_commutator_by_action(const GradedField& x, const GradedField& y) {
  check_same_shape(x, y);
  const int m = x.base_dim(), n = x.rank();
  const int deg = x.degree() + y.degree();
  const int sgn = sign_pow(static_cast<long long>(x.degree()) * y.degree());
  GradedField r(m, n, deg);
  auto comm = [&](const ScalarForm& f) { return x.act(y.act(f)) - y.act(x.act(f)).scaled(sgn); };
  if (deg >= 0)
    for (int a = 0; a < m; ++a) {
      const ScalarForm v = comm(ScalarForm::function(Poly::variable(m, a)));
      for (const auto& [idx, f] : v.entries()) r.add_a(idx, a, f);
    }
  if (deg + 1 >= 0)
    for (int k = 0; k < n; ++k) {
      const ScalarForm v = comm(ScalarForm::basis(m, {k}));
      for (const auto& [idx, g] : v.entries()) r.add_d(idx, k, g);
    }
  return r;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string describe(const Section& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + to_string(s[i]);
  return out + ")";
}

}  // namespace

AlgebroidReport validate_algebroid(const PolyAlgebroid& A) {
  AlgebroidReport rep;
  const int m = A.base_dim, n = A.rank;

  auto jacobi = [&](const Section& a, const Section& b, const Section& c) {
    return A.bracket(A.bracket(a, b), c) + A.bracket(A.bracket(b, c), a) + A.bracket(A.bracket(c, a), b);
  };
  std::vector<Poly> tests{Poly::constant(m, 1)};
  for (int a = 0; a < m; ++a) tests.push_back(Poly::variable(m, a));
  for (int i = 0; i < n && rep.jacobi_ok; ++i)
    for (int j = i + 1; j < n && rep.jacobi_ok; ++j)
      for (int k = 0; k < n && rep.jacobi_ok; ++k)
        for (const auto& f : tests) {
          Section v = jacobi(A.basis(i), A.basis(j), scaled(A.basis(k), f));
          if (!is_zero(v)) {
            rep.jacobi_ok = false;
            rep.detail = "Jacobi fails on (e" + std::to_string(i + 1) + ", e" + std::to_string(j + 1) + ", (" +
                         to_string(f) + ")e" + std::to_string(k + 1) + "): " + describe(v);
            break;
          }
        }
  for (int i = 0; i < n && rep.anchor_ok; ++i)
    for (int j = i + 1; j < n; ++j) {
      VectorField v = A.anchor_of(A.bracket(A.basis(i), A.basis(j))) -
                      lie_bracket(A.anchor_of(A.basis(i)), A.anchor_of(A.basis(j)));
      if (!is_zero(v)) {
        rep.anchor_ok = false;
        if (rep.detail.empty())
          rep.detail = "anchor fails on (e" + std::to_string(i + 1) + ", e" + std::to_string(j + 1) + "): " +
                       describe(v);
        break;
      }
    }

  const GradedField q = homological_field_q(A);
  const GradedField qq = graded_commutator(q, q);
  rep.q_squared_zero = qq.is_zero();
  if (!rep.q_squared_zero && rep.detail.empty()) rep.detail = "[Q,Q] = " + to_string(qq);

  const bool axioms = rep.jacobi_ok && rep.anchor_ok;
  rep.routes_agree = axioms == rep.q_squared_zero;
  if (!rep.routes_agree) rep.detail += " (bracket axioms and [Q,Q] = 0 disagree)";
  rep.valid = axioms && rep.q_squared_zero;
  return rep;
}

// ---------------------------------------------------------------------------
// B_X and Phi

// <eta^q, B_X(E..)> = (-1)^{b-1} ( <d_X eta^q, E_1^..^E_b>
//                      - sum_i (-1)^{b-i} <a_X(E_i^q), E_1^..^E_i^..^E_b> )
Section b_eval(const GradedField& x, const std::vector<Section>& e) {
  const int m = x.base_dim(), n = x.rank(), b = x.degree() + 1;
  if (static_cast<int>(e.size()) != b) throw std::invalid_argument("B_X takes b arguments");
  Section r = zero_section(n, m);
  std::vector<ScalarForm> dq(static_cast<std::size_t>(n), ScalarForm(m, b));
  for (const auto& [key, g] : x.d_part()) dq[static_cast<std::size_t>(key.second)].add(key.first, g);
  for (int q = 0; q < n; ++q) {
    Poly v = dq[static_cast<std::size_t>(q)].eval(e);
    for (int i = 1; i <= b; ++i) {
      const Poly& h = e[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(q)];
      if (h.is_zero() || x.a_part().empty()) continue;
      std::vector<Section> rest;
      for (int t = 1; t <= b; ++t)
        if (t != i) rest.push_back(e[static_cast<std::size_t>(t - 1)]);
      v -= x.a_of(h).eval(rest).scaled(sign_pow(b - i));
    }
    r[static_cast<std::size_t>(q)] = v.scaled(sign_pow(b - 1));
  }
  return r;
}

Section b_eval_basis(const GradedField& x, const std::vector<int>& idx) {
  const int m = x.base_dim(), n = x.rank(), b = x.degree() + 1;
  if (static_cast<int>(idx.size()) != b) throw std::invalid_argument("B_X takes b arguments");
  Section r = zero_section(n, m);
  for (int q = 0; q < n; ++q) r[static_cast<std::size_t>(q)] = x.d_coefficient(idx, q).scaled(sign_pow(b - 1));
  return r;
}

SectionMap b_from_field(const GradedField& x) {
  return [x](const std::vector<Section>& e) { return b_eval(x, e); };
}

Section rna_bracket_eval(const SectionMap& f, int b, const SectionMap& g, int c, const std::vector<Section>& e) {
  if (static_cast<int>(e.size()) != b + c - 1) throw std::invalid_argument("RN bracket takes b + c - 1 arguments");
  if (e.empty()) throw std::invalid_argument("RN bracket of two constants");
  const int m = e[0].empty() ? 0 : e[0][0].n_vars();
  Section r = zero_section(static_cast<int>(e[0].size()), m);
  auto pick = [&](const Permutation& s, int from, int count) {
    std::vector<Section> out;
    for (int i = from + 1; i <= from + count; ++i) out.push_back(e[static_cast<std::size_t>(s(i) - 1)]);
    return out;
  };
  if (b >= 1)
    for (const auto& s : enumerate_shuffles({c, b - 1})) {
      std::vector<Section> args = pick(s, c, b - 1);
      args.insert(args.begin(), g(pick(s, 0, c)));
      r = r + scaled(f(args), s.sign());
    }
  if (c >= 1) {
    const int eps = sign_pow(static_cast<long long>(b - 1) * (c - 1));
    for (const auto& s : enumerate_shuffles({b, c - 1})) {
      std::vector<Section> args = pick(s, b, c - 1);
      args.insert(args.begin(), f(pick(s, 0, b)));
      r = r - scaled(g(args), eps * s.sign());
    }
  }
  return r;
}

Section phi_eval(const VectorForm& P, const GradedField& x, const std::vector<Section>& e) {
  const int b = static_cast<int>(e.size());
  if (b != x.degree() + 1) throw std::invalid_argument("Phi(X) takes b arguments");
  Section r = zero_section(x.rank(), x.base_dim());
  std::vector<Section> pe;
  for (const auto& s : e) pe.push_back(apply_op(P, s));
  for (unsigned mask = 0; mask < (1u << b); ++mask) {
    std::vector<Section> args;
    int k = 0;
    for (int i = 0; i < b; ++i) {
      const bool in = (mask >> i) & 1u;
      k += in ? 1 : 0;
      args.push_back(in ? pe[static_cast<std::size_t>(i)] : e[static_cast<std::size_t>(i)]);
    }
    Section v = b_eval(x, args);
    for (int t = 0; t < b - k && !is_zero(v); ++t) v = apply_op(P, v);
    r = r + scaled(v, sign_pow(b - k));
  }
  return r;
}

VectorForm phi_map(const PolyAlgebroid& A, const VectorForm& P, const GradedField& x) {
  if (x.base_dim() != A.base_dim || x.rank() != A.rank || P.n_vars() != A.base_dim || P.rank() != A.rank)
    throw std::invalid_argument("Phi: shapes do not match the algebroid");
  if (P.degree() != 1) throw std::invalid_argument("Phi needs a (1,1)-form");
  const int b = x.degree() + 1;
  VectorForm r(A.base_dim, A.rank, b);
  if (b < 0) return r;
  for (const auto& J : combinations(A.rank, b)) {
    Section v = phi_eval(P, x, frame(A, J));
    for (int k = 0; k < A.rank; ++k) r.add(J, k, v[static_cast<std::size_t>(k)]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Torsion, FN bracket, cone

VectorForm algebroid_torsion(const PolyAlgebroid& A, const VectorForm& P) {
  return nijenhuis_torsion_form(P, A.bracket_fn());
}

VectorForm algebroid_torsion_coefficients(const PolyAlgebroid& A, const VectorForm& P) {
  if (P.degree() != 1) throw std::invalid_argument("torsion needs a (1,1)-form");
  const int m = A.base_dim, n = A.rank;
  // p[i][a] = P_i^a, the e_a component of P(e_i)
  std::vector<std::vector<Poly>> p(static_cast<std::size_t>(n), std::vector<Poly>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) p[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] = P.coefficient({i}, a);
  auto P_ = [&](int i, int a) -> const Poly& { return p[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)]; };
  // rho_a(f) = rho_a^b df/dx^b
  auto rho_act = [&](int a, const Poly& f) {
    Poly t(m);
    for (int b = 0; b < m; ++b) t += A.rho(a, b) * f.derivative(b);
    return t;
  };
  VectorForm r(m, n, 2);
  for (const auto& J : combinations(n, 2)) {
    const int i = J[0], j = J[1];
    for (int k = 0; k < n; ++k) {
      Poly v(m);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          v += P_(i, a) * P_(j, b) * A.c(a, b, k);
          v -= P_(b, k) * P_(i, a) * A.c(a, j, b);
          v += P_(a, k) * P_(b, a) * A.c(i, j, b);
          v -= P_(a, k) * P_(j, b) * A.c(i, b, a);
        }
      for (int a = 0; a < n; ++a) {
        v += P_(i, a) * rho_act(a, P_(j, k));
        v -= P_(j, a) * rho_act(a, P_(i, k));
        v -= P_(a, k) * rho_act(i, P_(j, a));
        v += P_(a, k) * rho_act(j, P_(i, a));
      }
      r.add(J, k, v);
    }
  }
  return r;
}

VectorForm algebroid_fn_bracket(const PolyAlgebroid& A, const VectorForm& K, const VectorForm& L) {
  return fn_bracket(K, L, A.bracket_fn());
}

void require_nijenhuis_algebroid(const PolyAlgebroid& A, const VectorForm& P) {
  AlgebroidReport rep = validate_algebroid(A);
  if (!rep.valid) throw std::domain_error("not a Lie algebroid: " + rep.detail);
  if (!algebroid_torsion(A, P).is_zero()) throw std::domain_error("P is not a Nijenhuis operator on the algebroid");
}

ConePair delta_njld(const PolyAlgebroid& A, const VectorForm& P, const ConePair& pair) {
  require_nijenhuis_algebroid(A, P);
  if (pair.form.degree() != pair.field.degree()) throw std::invalid_argument("cone pair degrees do not match");
  const GradedField q = homological_field_q(A);
  ConePair out;
  out.field = graded_commutator(q, pair.field).scaled(-1);
  out.form = (phi_map(A, P, pair.field) + algebroid_fn_bracket(A, P, pair.form)).scaled(-1);
  return out;
}

std::vector<GradedField> monomial_fields(int base_dim, int rank, int degree, int max_poly_degree) {
  std::vector<Exponent> monos;
  for (int d = 0; d <= max_poly_degree; ++d)
    for (auto& e : monomials_of_degree(base_dim, d)) monos.push_back(e);
  std::vector<GradedField> out;
  if (degree >= 0)
    for (const auto& I : combinations(rank, degree))
      for (int a = 0; a < base_dim; ++a)
        for (const auto& e : monos) {
          GradedField x(base_dim, rank, degree);
          x.add_a(I, a, Poly::monomial(base_dim, e));
          out.push_back(std::move(x));
        }
  if (degree + 1 >= 0)
    for (const auto& J : combinations(rank, degree + 1))
      for (int k = 0; k < rank; ++k)
        for (const auto& e : monos) {
          GradedField x(base_dim, rank, degree);
          x.add_d(J, k, Poly::monomial(base_dim, e));
          out.push_back(std::move(x));
        }
  return out;
}

GradedField random_graded_field(Rng& rng, int base_dim, int rank, int degree, int max_poly_degree) {
  GradedField x(base_dim, rank, degree);
  if (degree >= 0)
    for (const auto& I : combinations(rank, degree))
      for (int a = 0; a < base_dim; ++a)
        if (random_int(rng, 0, 1)) x.add_a(I, a, random_poly(rng, base_dim, max_poly_degree, 2));
  if (degree + 1 >= 0)
    for (const auto& J : combinations(rank, degree + 1))
      for (int k = 0; k < rank; ++k)
        if (random_int(rng, 0, 1)) x.add_d(J, k, random_poly(rng, base_dim, max_poly_degree, 2));
  return x;
}

VectorForm random_algebroid_form(Rng& rng, int base_dim, int rank, int degree, int max_poly_degree) {
  VectorForm k(base_dim, rank, degree);
  if (degree < 0) return k;
  for (const auto& idx : combinations(rank, degree))
    for (int a = 0; a < rank; ++a)
      if (random_int(rng, 0, 1)) k.add(idx, a, random_poly(rng, base_dim, max_poly_degree, 2));
  return k;
}

PhiChainReport validate_phi_chain_map(const PolyAlgebroid& A, const VectorForm& P, int random_samples,
                                      std::uint64_t seed, int max_field_degree, int max_poly_degree) {
  require_nijenhuis_algebroid(A, P);
  PhiChainReport rep;
  rep.seed = seed;
  const GradedField q = homological_field_q(A);
  auto check = [&](const GradedField& x) {
    if (!rep.ok) return;
    ++rep.checked;
    VectorForm lhs = phi_map(A, P, graded_commutator(q, x).scaled(-1));
    VectorForm rhs = algebroid_fn_bracket(A, P, phi_map(A, P, x));
    if (!(lhs == rhs)) {
      rep.ok = false;
      rep.detail = "X = " + to_string(x) + ": Phi(d_Q X) = " + to_string(lhs) + ", d_FN Phi(X) = " + to_string(rhs);
    }
  };
  Rng rng(seed);
  for (int d = -1; d <= max_field_degree; ++d) {
    if (d > A.rank) break;
    for (const auto& x : monomial_fields(A.base_dim, A.rank, d, max_poly_degree)) check(x);
  }
  for (int s = 0; s < random_samples; ++s) {
    const int d = random_int(rng, -1, std::min(max_field_degree, A.rank));
    check(random_graded_field(rng, A.base_dim, A.rank, d, max_poly_degree));
  }
  return rep;
}

AlgebroidMcResidual algebroid_mc_residual(const PolyAlgebroid& A, const VectorForm& P) {
  if (P.degree() != 1 || P.n_vars() != A.base_dim || P.rank() != A.rank)
    throw std::invalid_argument("MC residual needs a (1,1)-form on the algebroid");
  AlgebroidMcResidual res;
  const GradedField q = homological_field_q(A);
  res.q_squared = graded_commutator(q, q);
  // B_Q{P,P} - P{B_Q{P}} + P{P{B_Q}} evaluated on frame pairs
  res.torsion_brace = VectorForm(A.base_dim, A.rank, 2);
  for (const auto& J : combinations(A.rank, 2)) {
    const Section e1 = A.basis(J[0]), e2 = A.basis(J[1]);
    const Section p1 = apply_op(P, e1), p2 = apply_op(P, e2);
    Section v = b_eval(q, {p1, p2}) - apply_op(P, b_eval(q, {p1, e2}) + b_eval(q, {e1, p2})) +
                apply_op(P, apply_op(P, b_eval(q, {e1, e2})));
    for (int k = 0; k < A.rank; ++k) res.torsion_brace.add(J, k, v[static_cast<std::size_t>(k)]);
  }
  res.torsion_coefficients = algebroid_torsion_coefficients(A, P);
  res.routes_agree = res.torsion_brace == res.torsion_coefficients;
  return res;
}

}  // namespace njk
