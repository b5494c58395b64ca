#include "njk/cochain.hpp"

#include <stdexcept>
#include <string>

#include "njk/combinatorics.hpp"

namespace njk {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

void require_same_shape(const Cochain& a, const Cochain& b) {
  if (a.degree != b.degree || a.source_dim != b.source_dim || a.target_dim != b.target_dim)
    throw std::invalid_argument("cochain shape mismatch");
}

}  // namespace

std::size_t cochain_dim(int degree, int source_dim, int target_dim) {
  return static_cast<std::size_t>(binomial(source_dim, degree)) * static_cast<std::size_t>(target_dim);
}

Cochain Cochain::zero(int degree, int source_dim, int target_dim) {
  if (degree < 0) throw std::invalid_argument("cochain degree must be non-negative");
  Cochain c;
  c.degree = degree;
  c.source_dim = source_dim;
  c.target_dim = target_dim;
  c.values.assign(static_cast<std::size_t>(binomial(source_dim, degree)), zero_vec(idx(target_dim)));
  return c;
}

Cochain Cochain::from_flat(int degree, int source_dim, int target_dim, const Vec& flat) {
  Cochain c = zero(degree, source_dim, target_dim);
  if (flat.size() != c.flat_dim()) throw std::invalid_argument("Cochain::from_flat: wrong length");
  std::size_t k = 0;
  for (auto& v : c.values)
    for (auto& x : v) x = flat[k++];
  return c;
}

Vec Cochain::flat() const {
  Vec out;
  out.reserve(flat_dim());
  for (const auto& v : values) out.insert(out.end(), v.begin(), v.end());
  return out;
}

Vec& Cochain::at(const std::vector<int>& increasing) { return values[combination_index(increasing, source_dim)]; }

Vec Cochain::eval_basis(std::vector<int> tuple) const {
  if (static_cast<int>(tuple.size()) != degree) throw std::invalid_argument("Cochain::eval_basis: wrong arity");
  int sign = koszul_sort(tuple, [](int) { return 1; });
  for (std::size_t i = 1; i < tuple.size(); ++i)
    if (tuple[i] == tuple[i - 1]) return zero_vec(idx(target_dim));
  const Vec& v = values[combination_index(tuple, source_dim)];
  return sign > 0 ? v : njk::scaled(v, Rational(-1));
}

namespace {

void eval_rec(const Cochain& f, const std::vector<Vec>& args, std::vector<int>& tuple, const Rational& coeff,
              Vec& out) {
  const std::size_t pos = tuple.size();
  if (pos == args.size()) {
    std::vector<int> sorted = tuple;
    int sign = koszul_sort(sorted, [](int) { return 1; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i] == sorted[i - 1]) return;
    axpy(out, sign > 0 ? coeff : Rational(-coeff), f.values[combination_index(sorted, f.source_dim)]);
    return;
  }
  for (std::size_t k = 0; k < args[pos].size(); ++k) {
    if (args[pos][k] == 0) continue;
    bool repeated = false;
    for (int t : tuple)
      if (t == static_cast<int>(k)) repeated = true;
    if (repeated) continue;
    tuple.push_back(static_cast<int>(k));
    eval_rec(f, args, tuple, coeff * args[pos][k], out);
    tuple.pop_back();
  }
}

}  // namespace

Vec Cochain::eval(const std::vector<Vec>& args) const {
  if (static_cast<int>(args.size()) != degree) throw std::invalid_argument("Cochain::eval: wrong arity");
  Vec out = zero_vec(idx(target_dim));
  std::vector<int> tuple;
  eval_rec(*this, args, tuple, Rational(1), out);
  return out;
}

bool Cochain::is_zero() const {
  for (const auto& v : values)
    if (!njk::is_zero(v)) return false;
  return true;
}

bool operator==(const Cochain& a, const Cochain& b) {
  return a.degree == b.degree && a.source_dim == b.source_dim && a.target_dim == b.target_dim &&
         a.values == b.values;
}

Cochain Cochain::operator+(const Cochain& o) const {
  require_same_shape(*this, o);
  Cochain r = *this;
  for (std::size_t t = 0; t < values.size(); ++t) r.values[t] = values[t] + o.values[t];
  return r;
}

Cochain Cochain::operator-(const Cochain& o) const {
  require_same_shape(*this, o);
  Cochain r = *this;
  for (std::size_t t = 0; t < values.size(); ++t) r.values[t] = values[t] - o.values[t];
  return r;
}

Cochain Cochain::scaled(const Rational& c) const {
  Cochain r = *this;
  for (auto& v : r.values) v = njk::scaled(v, c);
  return r;
}

Cochain Cochain::post(const Matrix& A) const {
  Cochain r = *this;
  r.target_dim = static_cast<int>(A.size());
  for (auto& v : r.values) v = mat_vec(A, v);
  return r;
}

NjContext::NjContext(NijenhuisLieAlgebra nl, Representation rep, Matrix rep_op)
    : nl_(std::move(nl)), rep_(std::move(rep)), rep_op_(std::move(rep_op)) {
  Report lie = validate_lie(nl_.algebra);
  if (!lie.valid) throw std::domain_error(lie.detail);
  deformed_ = deformed_bracket(nl_.algebra, nl_.op);
  deformed_rep_ = deformed_representation(nl_, rep_, rep_op_);
}

NjContext::NjContext(NijenhuisLieAlgebra nl)
    : NjContext(nl, adjoint_representation(nl.algebra), nl.op) {}

PairCochain PairCochain::zero(int degree, int source_dim, int target_dim) {
  PairCochain p;
  p.lie = Cochain::zero(degree, source_dim, target_dim);
  if (degree >= 1) p.njo = Cochain::zero(degree - 1, source_dim, target_dim);
  return p;
}

PairCochain PairCochain::from_flat(int degree, int source_dim, int target_dim, const Vec& flat) {
  const std::size_t n1 = cochain_dim(degree, source_dim, target_dim);
  const std::size_t n2 = degree >= 1 ? cochain_dim(degree - 1, source_dim, target_dim) : 0;
  if (flat.size() != n1 + n2) throw std::invalid_argument("PairCochain::from_flat: wrong length");
  PairCochain p;
  p.lie = Cochain::from_flat(degree, source_dim, target_dim, Vec(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(n1)));
  if (degree >= 1)
    p.njo = Cochain::from_flat(degree - 1, source_dim, target_dim, Vec(flat.begin() + static_cast<std::ptrdiff_t>(n1), flat.end()));
  return p;
}

Vec PairCochain::flat() const {
  Vec out = lie.flat();
  if (njo) {
    Vec g = njo->flat();
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

bool PairCochain::is_zero() const { return lie.is_zero() && (!njo || njo->is_zero()); }

Cochain delta_lie(const LieAlgebra& L, const Representation& M, const Cochain& f) {
  if (f.source_dim != L.dim || f.target_dim != M.dim_m || static_cast<int>(M.action.size()) != L.dim)
    throw std::invalid_argument("delta_lie: dimension mismatch");
  const int n = f.degree;
  Cochain out = Cochain::zero(n + 1, L.dim, M.dim_m);
  const auto tuples = combinations(L.dim, n + 1);
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    const auto& I = tuples[t];
    Vec acc = zero_vec(idx(M.dim_m));
    for (int i = 0; i <= n; ++i) {
      std::vector<int> rest;
      for (int k = 0; k <= n; ++k)
        if (k != i) rest.push_back(I[idx(k)]);
      Vec v = mat_vec(M.action[idx(I[idx(i)])], f.eval_basis(rest));
      axpy(acc, Rational(sign_pow(i)), v);
    }
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        Vec br = L.bracket_basis(I[idx(i)], I[idx(j)]);
        std::vector<int> args{0};
        for (int k = 0; k <= n; ++k)
          if (k != i && k != j) args.push_back(I[idx(k)]);
        for (int k = 0; k < L.dim; ++k) {
          if (br[idx(k)] == 0) continue;
          args[0] = k;
          axpy(acc, br[idx(k)] * sign_pow(i + j), f.eval_basis(args));
        }
      }
    out.values[t] = std::move(acc);
  }
  return out;
}

Cochain delta_njo(const NjContext& ctx, const Cochain& f) {
  Cochain lie = delta_lie(ctx.algebra(), ctx.rep(), f);
  Cochain deformed = delta_lie(ctx.deformed(), ctx.deformed_rep(), f);
  return deformed - lie.post(ctx.rep_op());
}

Cochain psi(const NjContext& ctx, const Cochain& f) {
  const int n = f.degree;
  if (n == 0) return f;
  if (f.source_dim != ctx.dim() || f.target_dim != ctx.rep_dim()) throw std::invalid_argument("psi: dimension mismatch");
  const std::size_t g = idx(ctx.dim());
  std::vector<Matrix> pm_pow{identity_matrix(idx(ctx.rep_dim()))};
  for (int k = 1; k <= n; ++k) pm_pow.push_back(mat_mul(pm_pow.back(), ctx.rep_op()));

  Cochain out = Cochain::zero(n, ctx.dim(), ctx.rep_dim());
  const auto tuples = combinations(ctx.dim(), n);
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    std::vector<Vec> plain, with_p;
    for (int i : tuples[t]) {
      plain.push_back(basis_vec(g, idx(i)));
      with_p.push_back(mat_vec(ctx.op(), plain.back()));
    }
    Vec acc = zero_vec(idx(ctx.rep_dim()));
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<Vec> args;
      int k = 0;
      for (int s = 0; s < n; ++s) {
        if (mask & (1u << s)) {
          args.push_back(with_p[idx(s)]);
          ++k;
        } else {
          args.push_back(plain[idx(s)]);
        }
      }
      axpy(acc, Rational(sign_pow(n - k)), mat_vec(pm_pow[idx(n - k)], f.eval(args)));
    }
    out.values[t] = std::move(acc);
  }
  return out;
}

PairCochain delta_njl(const NjContext& ctx, const PairCochain& fg) {
  PairCochain out;
  out.lie = delta_lie(ctx.algebra(), ctx.rep(), fg.lie);
  Cochain second = psi(ctx, fg.lie).scaled(Rational(-1));
  if (fg.njo) second = second - delta_njo(ctx, *fg.njo);
  out.njo = std::move(second);
  return out;
}

LinearComplex build_complex(ComplexKind kind, const NjContext& ctx, int top) {
  const int g = ctx.dim(), m = ctx.rep_dim();
  const int natural = kind == ComplexKind::NjL ? g + 1 : g;
  if (top < natural) top = natural;
  LinearComplex cx;
  for (int n = 0; n <= top; ++n) {
    std::size_t d = cochain_dim(n, g, m);
    if (kind == ComplexKind::NjL && n >= 1) d += cochain_dim(n - 1, g, m);
    cx.dims.push_back(d);
  }
  for (int n = 0; n < top; ++n) {
    const std::size_t in = cx.dims[idx(n)], out = cx.dims[idx(n + 1)];
    switch (kind) {
      case ComplexKind::CE:
        cx.d.push_back(matrix_of(in, out, [&](const Vec& v) {
          return delta_lie(ctx.algebra(), ctx.rep(), Cochain::from_flat(n, g, m, v)).flat();
        }));
        break;
      case ComplexKind::NjO:
        cx.d.push_back(matrix_of(in, out, [&](const Vec& v) { return delta_njo(ctx, Cochain::from_flat(n, g, m, v)).flat(); }));
        break;
      case ComplexKind::NjL:
        cx.d.push_back(matrix_of(in, out, [&](const Vec& v) {
          return delta_njl(ctx, PairCochain::from_flat(n, g, m, v)).flat();
        }));
        break;
    }
  }
  return cx;
}

BettiReport betti(ComplexKind kind, const NjContext& ctx, int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("betti: max_degree must be non-negative");
  return betti(build_complex(kind, ctx, max_degree + 1), max_degree);
}

namespace {

long long euler(const LinearComplex& cx) {
  long long e = 0;
  BettiReport b = betti(cx, static_cast<int>(cx.dims.size()) - 1);
  for (const auto& r : b.rows) e += sign_pow(r.degree) * static_cast<long long>(r.betti);
  return e;
}

}  // namespace

LesReport les_verify(const NjContext& ctx, int max_degree) {
  if (max_degree < 0 || max_degree > ctx.dim())
    throw std::invalid_argument("les_verify: max_degree must lie in [0, dim g]");
  const int g = ctx.dim(), m = ctx.rep_dim();
  const int top = g + 1;
  LinearComplex lie = build_complex(ComplexKind::CE, ctx, top);
  LinearComplex njo = build_complex(ComplexKind::NjO, ctx, top);
  LinearComplex njl = build_complex(ComplexKind::NjL, ctx, top);
  LinearComplex none;

  auto psi_at = [&](int p) {
    return matrix_of(lie.dim(p), njo.dim(p), [&](const Vec& v) { return psi(ctx, Cochain::from_flat(p, g, m, v)).flat(); });
  };
  // g |-> (0, g)
  auto iota_at = [&](int p) {
    SparseMatrix s(njl.dim(p + 1), njo.dim(p));
    const std::size_t offset = cochain_dim(p + 1, g, m);
    for (std::size_t j = 0; j < njo.dim(p); ++j) s.set(offset + j, j, Rational(1));
    return s;
  };
  // (f, g) |-> f
  auto pi_at = [&](int p) {
    SparseMatrix s(lie.dim(p), njl.dim(p));
    for (std::size_t j = 0; j < lie.dim(p); ++j) s.set(j, j, Rational(1));
    return s;
  };

  LesReport rep;
  auto add = [&](std::string label, NodeExactness r) {
    rep.exact = rep.exact && r.exact();
    rep.nodes.push_back({std::move(label), r});
  };
  add("H^0_NjL", check_exactness(none, 0, SparseMatrix(njl.dim(0), 0), njl, 0, pi_at(0), lie, 0));
  for (int p = 0; p <= max_degree; ++p) {
    const std::string s = std::to_string(p), s1 = std::to_string(p + 1);
    add("H^" + s + "_Lie", check_exactness(njl, p, pi_at(p), lie, p, psi_at(p), njo, p));
    add("H^" + s + "_NjO", check_exactness(lie, p, psi_at(p), njo, p, iota_at(p), njl, p + 1));
    add("H^" + s1 + "_NjL", check_exactness(njo, p, iota_at(p), njl, p + 1, pi_at(p + 1), lie, p + 1));
  }
  rep.euler_lie = euler(lie);
  rep.euler_njo = euler(njo);
  rep.euler_njl = euler(njl);
  rep.euler_ok = rep.euler_njl == rep.euler_lie - rep.euler_njo;
  rep.exact = rep.exact && rep.euler_ok;
  return rep;
}

}  // namespace njk
