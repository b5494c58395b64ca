#include "njk/brace.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

#include "njk/combinatorics.hpp"
#include "njk/matrix.hpp"

namespace njk {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

// Sorts key with the Koszul sign on suspended degrees.  Returns 0 when an
// odd index repeats.
int canonicalize(const GradedSpace& space, std::vector<int>& key) {
  for (int k : key)
    if (k < 0 || k >= space.dim()) throw std::out_of_range("suspended map: basis index out of range");
  int sign = koszul_sort(key, [&](int i) { return space.suspended(i); });
  for (std::size_t i = 1; i < key.size(); ++i)
    if (key[i] == key[i - 1] && space.suspended(key[i]) % 2 != 0) return 0;
  return sign;
}

int key_degree(const GradedSpace& space, const std::vector<int>& key) {
  int d = 0;
  for (int k : key) d += space.suspended(k);
  return d;
}

}  // namespace

SuspendedHom::SuspendedHom(GradedSpace space, int arity, Codomain codomain, int degree)
    : space_(std::move(space)), arity_(arity), codomain_(codomain), degree_(degree) {
  if (arity < 0) throw std::invalid_argument("suspended map: negative arity");
}

void SuspendedHom::add(std::vector<int> key, const Vec& value) {
  if (static_cast<int>(key.size()) != arity_) throw std::invalid_argument("suspended map: wrong arity");
  if (value.size() != idx(dim())) throw std::invalid_argument("suspended map: wrong value length");
  const int sign = canonicalize(space_, key);
  if (njk::is_zero(value)) return;
  if (sign == 0) throw std::invalid_argument("suspended map: nonzero value on repeated odd argument");
  const int kd = key_degree(space_, key);
  for (int k = 0; k < dim(); ++k)
    if (value[idx(k)] != 0 && out_degree(k) - kd != degree_)
      throw std::invalid_argument("suspended map: value is not of the declared degree");
  auto it = values_.find(key);
  Vec v = it == values_.end() ? zero_vec(idx(dim())) : it->second;
  axpy(v, Rational(sign), value);
  if (njk::is_zero(v)) {
    if (it != values_.end()) values_.erase(it);
  } else {
    values_[key] = std::move(v);
  }
}

void SuspendedHom::set(std::vector<int> key, const Vec& value) {
  std::vector<int> canon = key;
  if (canonicalize(space_, canon) != 0) values_.erase(canon);
  add(std::move(key), value);
}

Vec SuspendedHom::eval_basis(std::vector<int> key) const {
  if (static_cast<int>(key.size()) != arity_) throw std::invalid_argument("suspended map: wrong arity");
  const int sign = canonicalize(space_, key);
  if (sign == 0) return zero_vec(idx(dim()));
  auto it = values_.find(key);
  if (it == values_.end()) return zero_vec(idx(dim()));
  return sign > 0 ? it->second : njk::scaled(it->second, Rational(-1));
}

Vec SuspendedHom::eval(const std::vector<Vec>& args) const {
  if (static_cast<int>(args.size()) != arity_) throw std::invalid_argument("suspended map: wrong arity");
  Vec out = zero_vec(idx(dim()));
  std::vector<int> key;
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t pos, const Rational& c) {
    if (pos == args.size()) {
      axpy(out, c, eval_basis(key));
      return;
    }
    for (std::size_t k = 0; k < args[pos].size(); ++k) {
      if (args[pos][k] == 0) continue;
      key.push_back(static_cast<int>(k));
      rec(pos + 1, c * args[pos][k]);
      key.pop_back();
    }
  };
  rec(0, Rational(1));
  return out;
}

bool operator==(const SuspendedHom& a, const SuspendedHom& b) {
  return a.same_shape(b) && a.values_ == b.values_;
}

SuspendedHom SuspendedHom::operator+(const SuspendedHom& o) const {
  if (!same_shape(o)) throw std::invalid_argument("suspended map: shape mismatch");
  SuspendedHom r = *this;
  for (const auto& [k, v] : o.values_) r.add(k, v);
  return r;
}

SuspendedHom SuspendedHom::operator-(const SuspendedHom& o) const { return *this + o.scaled(Rational(-1)); }

SuspendedHom SuspendedHom::scaled(const Rational& c) const {
  SuspendedHom r(space_, arity_, codomain_, degree_);
  if (c == 0) return r;
  for (const auto& [k, v] : values_) r.values_[k] = njk::scaled(v, c);
  return r;
}

SuspendedHom SuspendedHom::suspend() const {
  if (codomain_ != Codomain::V) throw std::invalid_argument("suspend: codomain is already sV");
  SuspendedHom r = *this;
  r.codomain_ = Codomain::SV;
  r.degree_ = degree_ + 1;
  return r;
}

SuspendedHom SuspendedHom::desuspend() const {
  if (codomain_ != Codomain::SV) throw std::invalid_argument("desuspend: codomain is already V");
  SuspendedHom r = *this;
  r.codomain_ = Codomain::V;
  r.degree_ = degree_ - 1;
  return r;
}

std::vector<std::vector<int>> symmetric_keys(const GradedSpace& space, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> key;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(key.size()) == n) {
      out.push_back(key);
      return;
    }
    for (int i = from; i < space.dim(); ++i) {
      key.push_back(i);
      rec(space.suspended(i) % 2 == 0 ? i : i + 1);
      key.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace {

SuspendedHom brace_impl(const SuspendedHom& f, const std::vector<SuspendedHom>& args, bool strict) {
  const int m = static_cast<int>(args.size());
  int degree = f.degree(), total_in = 0;
  for (const auto& g : args) {
    if (g.codomain() != Codomain::SV) throw std::invalid_argument("brace: arguments must take values in sV");
    if (!(g.space() == f.space())) throw std::invalid_argument("brace: arguments live on different spaces");
    degree += g.degree();
    total_in += g.arity();
  }
  if (m > f.arity()) {
    if (strict) throw std::invalid_argument("brace: more arguments than the arity of the outer map");
    return SuspendedHom(f.space(), std::max(0, f.arity() - m + total_in), f.codomain(), degree);
  }
  const int N = f.arity() - m + total_in;
  SuspendedHom out(f.space(), N, f.codomain(), degree);
  if (f.is_zero()) return out;

  // constants must come first
  int e = 0;
  while (e < m && args[idx(e)].arity() == 0) ++e;
  for (int j = e; j < m; ++j)
    if (args[idx(j)].arity() == 0) return out;
  for (const auto& g : args)
    if (g.is_zero()) return out;
  Rational weight(1);
  for (int i = 2; i <= e; ++i) weight /= i;

  std::vector<Vec> consts;
  for (int j = 0; j < e; ++j) consts.push_back(args[idx(j)].eval_basis({}));

  const GradedSpace& space = f.space();
  const int n = space.dim();
  for (const auto& key : symmetric_keys(space, N)) {
    Vec acc = zero_vec(idx(n));
    std::vector<char> used(idx(N), 0);
    std::vector<std::vector<int>> blocks(idx(m));
    std::function<void(int, int)> place;
    // choose the remaining members of block j from positions after `from`
    std::function<void(int, int, int)> fill = [&](int j, int from, int need) {
      if (need == 0) {
        place(j + 1, blocks[idx(j)].front());
        return;
      }
      for (int p = from; p < N; ++p) {
        if (used[idx(p)]) continue;
        used[idx(p)] = 1;
        blocks[idx(j)].push_back(p);
        fill(j, p + 1, need - 1);
        blocks[idx(j)].pop_back();
        used[idx(p)] = 0;
      }
    };
    place = [&](int j, int last_min) {
      if (j == m) {
        std::vector<int> order;
        for (int b = e; b < m; ++b) order.insert(order.end(), blocks[idx(b)].begin(), blocks[idx(b)].end());
        std::vector<int> rest;
        for (int p = 0; p < N; ++p)
          if (!used[idx(p)]) rest.push_back(p);
        order.insert(order.end(), rest.begin(), rest.end());
        Permutation sigma;
        std::vector<int> degs;
        for (int p : order) sigma.images.push_back(p + 1);
        for (int p = 0; p < N; ++p) degs.push_back(space.suspended(key[idx(p)]));
        long long sign_exp = 0;
        int passed = 0;
        for (int b = e; b < m; ++b) {
          sign_exp += static_cast<long long>(args[idx(b)].degree()) * passed;
          for (int p : blocks[idx(b)]) passed += degs[idx(p)];
        }
        int sign = koszul_sign(sigma, degs) * sign_pow(sign_exp);
        std::vector<Vec> inputs = consts;
        for (int b = e; b < m; ++b) {
          std::vector<int> sub;
          for (int p : blocks[idx(b)]) sub.push_back(key[idx(p)]);
          inputs.push_back(args[idx(b)].eval_basis(sub));
          if (njk::is_zero(inputs.back())) return;
        }
        for (int p : rest) inputs.push_back(basis_vec(idx(n), idx(key[idx(p)])));
        axpy(acc, Rational(sign), f.eval(inputs));
        return;
      }
      if (j < e) {
        place(j + 1, last_min);
        return;
      }
      const int k = args[idx(j)].arity();
      for (int p = last_min + 1; p < N; ++p) {
        if (used[idx(p)]) continue;
        used[idx(p)] = 1;
        blocks[idx(j)].push_back(p);
        if (k == 1)
          place(j + 1, p);
        else
          fill(j, p + 1, k - 1);
        blocks[idx(j)].pop_back();
        used[idx(p)] = 0;
      }
    };
    place(0, -1);
    if (!njk::is_zero(acc)) out.add(key, njk::scaled(acc, weight));
  }
  return out;
}

}  // namespace

SuspendedHom shuffle_brace(const SuspendedHom& f, const std::vector<SuspendedHom>& args) {
  return brace_impl(f, args, true);
}

SuspendedHom shuffle_brace_or_zero(const SuspendedHom& f, const std::vector<SuspendedHom>& args) {
  return brace_impl(f, args, false);
}

SuspendedHom rn_bracket(const SuspendedHom& a, const SuspendedHom& b) {
  if (a.codomain() != Codomain::SV || b.codomain() != Codomain::SV)
    throw std::invalid_argument("rn_bracket: both maps must take values in sV");
  SuspendedHom ab = shuffle_brace_or_zero(a, {b});
  SuspendedHom ba = shuffle_brace_or_zero(b, {a});
  return ab - ba.scaled(Rational(sign_pow(static_cast<long long>(a.degree()) * b.degree())));
}

SuspendedHom to_suspended(const Cochain& f, Codomain codomain, const GradedSpace& space, int degree) {
  if (space.dim() != f.source_dim || f.target_dim != f.source_dim)
    throw std::invalid_argument("to_suspended: cochain must be an endomorphism-valued cochain on V");
  for (int d : space.degrees)
    if (d % 2 != 0) throw std::invalid_argument("to_suspended: alternating cochains need V in even degrees");
  SuspendedHom h(space, f.degree, codomain, degree);
  const auto combos = combinations(f.source_dim, f.degree);
  for (std::size_t t = 0; t < combos.size(); ++t) h.add(combos[t], f.values[t]);
  return h;
}

SuspendedHom to_suspended(const Cochain& f, Codomain codomain) {
  return to_suspended(f, codomain, GradedSpace::ungraded(f.source_dim),
                      codomain == Codomain::SV ? 1 - f.degree : -f.degree);
}

Cochain from_suspended(const SuspendedHom& h) {
  for (int d : h.space().degrees)
    if (d % 2 != 0) throw std::invalid_argument("from_suspended: alternating cochains need V in even degrees");
  Cochain c = Cochain::zero(h.arity(), h.dim(), h.dim());
  for (const auto& [k, v] : h.values()) c.at(k) = v;
  return c;
}

SuspendedHom nu_from_lie(const LieAlgebra& L) {
  SuspendedHom nu(GradedSpace::ungraded(L.dim), 2, Codomain::SV, -1);
  // (s^{-1})^2 (sx (x) sy) = -x (x) y cancels the outer minus sign
  for (const auto& [ij, v] : L.structure) nu.add({ij.first, ij.second}, v);
  return nu;
}

SuspendedHom tau_from_operator(const Matrix& P) {
  const int n = static_cast<int>(P.size());
  SuspendedHom tau(GradedSpace::ungraded(n), 1, Codomain::V, -1);
  for (int i = 0; i < n; ++i) {
    Vec col(idx(n));
    for (int k = 0; k < n; ++k) col[idx(k)] = P[idx(k)][idx(i)];
    tau.add({i}, col);
  }
  return tau;
}

}  // namespace njk
