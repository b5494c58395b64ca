// Independent reference computations used as test oracles.  Nothing here
// calls into the library routine it is meant to check.
#pragma once

#include <algorithm>
#include <vector>

#include "njk/cochain.hpp"
#include "njk/lie.hpp"
#include "njk/matrix.hpp"

namespace oracle {

using njk::Matrix;
using njk::Rational;
using njk::Vec;

// Plain Gaussian elimination on a dense copy.
inline std::size_t naive_rank(Matrix a) {
  std::size_t r = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

inline int perm_sign_by_cycles(const std::vector<int>& images) {
  std::vector<char> seen(images.size(), 0);
  int sign = 1;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images[j] - 1)) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

inline njk::LieAlgebra sl2() {
  // basis h, e, f
  njk::LieAlgebra L(3);
  L.basis = {"h", "e", "f"};
  L.set_bracket(0, 1, Vec{0, 2, 0});
  L.set_bracket(0, 2, Vec{0, 0, -2});
  L.set_bracket(1, 2, Vec{1, 0, 0});
  return L;
}

// [e1, e2] = e1
inline njk::LieAlgebra affine2() {
  njk::LieAlgebra L(2);
  L.set_bracket(0, 1, Vec{1, 0});
  return L;
}

inline Matrix diag(const std::vector<Rational>& d) {
  Matrix m = njk::zero_matrix(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
  return m;
}

inline std::vector<Vec> basis_args(int dim, const std::vector<int>& idx) {
  std::vector<Vec> out;
  for (int i : idx) out.push_back(njk::basis_vec(static_cast<std::size_t>(dim), static_cast<std::size_t>(i)));
  return out;
}

// CE differential evaluated pointwise on vector arguments:
//   sum (-1)^i a_i . f(..a_i^..) + sum_{i<j} (-1)^{i+j} f([a_i,a_j], ..)
// with bracket and action supplied as callables.
template <class Br, class Act>
Vec ce_pointwise(const njk::Cochain& f, const std::vector<Vec>& a, Br bracket, Act act) {
  const std::size_t n = a.size();
  Vec out = njk::zero_vec(static_cast<std::size_t>(f.target_dim));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vec> rest;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) rest.push_back(a[k]);
    njk::axpy(out, Rational(i % 2 ? -1 : 1), act(a[i], f.eval(rest)));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<Vec> args{bracket(a[i], a[j])};
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j) args.push_back(a[k]);
      njk::axpy(out, Rational((i + j) % 2 ? -1 : 1), f.eval(args));
    }
  return out;
}

// delta_NjO written out term by term:
//   -P_M(delta_Lie f) + sum (-1)^i P(a_i).f(..) + sum_{i<j} (-1)^{i+j}
//   ( f([Pa_i,a_j],..) + f([a_i,Pa_j],..) - f(P[a_i,a_j],..) )
inline Vec njo_four_sum(const njk::NjContext& ctx, const njk::Cochain& f, const std::vector<Vec>& a) {
  const auto& L = ctx.algebra();
  const auto& M = ctx.rep();
  const auto& P = ctx.op();
  auto br = [&](const Vec& x, const Vec& y) { return L.bracket(x, y); };
  auto act = [&](const Vec& x, const Vec& m) { return M.act(x, m); };
  Vec out = njk::scaled(njk::mat_vec(ctx.rep_op(), ce_pointwise(f, a, br, act)), Rational(-1));
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vec> rest;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) rest.push_back(a[k]);
    njk::axpy(out, Rational(i % 2 ? -1 : 1), M.act(njk::mat_vec(P, a[i]), f.eval(rest)));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<Vec> rest;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j) rest.push_back(a[k]);
      const Rational s((i + j) % 2 ? -1 : 1);
      auto with = [&](const Vec& first) {
        std::vector<Vec> args{first};
        args.insert(args.end(), rest.begin(), rest.end());
        return f.eval(args);
      };
      njk::axpy(out, s, with(L.bracket(njk::mat_vec(P, a[i]), a[j])));
      njk::axpy(out, s, with(L.bracket(a[i], njk::mat_vec(P, a[j]))));
      njk::axpy(out, -s, with(njk::mat_vec(P, L.bracket(a[i], a[j]))));
    }
  return out;
}

}  // namespace oracle
