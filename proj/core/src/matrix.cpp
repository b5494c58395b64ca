#include "njk/matrix.hpp"

#include <stdexcept>

namespace njk {

Matrix zero_matrix(std::size_t rows, std::size_t cols) { return Matrix(rows, zero_vec(cols)); }

Matrix identity_matrix(std::size_t n) { return scalar_matrix(n, Rational(1)); }

Matrix scalar_matrix(std::size_t n, const Rational& c) {
  Matrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = c;
  return m;
}

std::size_t cols_of(const Matrix& a) { return a.empty() ? 0 : a[0].size(); }

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = cols_of(b);
  if (cols_of(a) != k && !(k == 0 && a.empty())) throw std::invalid_argument("mat_mul: shape mismatch");
  Matrix c = zero_matrix(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (b[l][j] != 0) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

Matrix mat_add(const Matrix& a, const Matrix& b) {
  Matrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] += b[i][j];
  return c;
}

Matrix mat_sub(const Matrix& a, const Matrix& b) {
  Matrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] -= b[i][j];
  return c;
}

Matrix mat_scale(const Matrix& a, const Rational& s) {
  Matrix c = a;
  for (auto& row : c)
    for (auto& v : row) v *= s;
  return c;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return mat_sub(mat_mul(a, b), mat_mul(b, a)); }

Vec mat_vec(const Matrix& a, const Vec& x) {
  Vec y = zero_vec(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (a[i][j] != 0 && x[j] != 0) y[i] += a[i][j] * x[j];
  return y;
}

Matrix mat_pow(const Matrix& a, int k, std::size_t n) {
  Matrix r = identity_matrix(n);
  for (int i = 0; i < k; ++i) r = mat_mul(r, a);
  return r;
}

bool is_zero(const Matrix& a) {
  for (const auto& row : a)
    if (!is_zero(row)) return false;
  return true;
}

Matrix mat_inverse(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix m = a, inv = identity_matrix(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) throw std::domain_error("mat_inverse: singular matrix");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    Rational s = 1 / m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), m = b.size();
  Matrix r = zero_matrix(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i][j] = a[i][j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) r[n + i][n + j] = b[i][j];
  return r;
}

Vec basis_vec(std::size_t n, std::size_t i) {
  Vec v = zero_vec(n);
  v[i] = 1;
  return v;
}

}  // namespace njk
