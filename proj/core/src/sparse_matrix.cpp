#include "njk/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace njk {

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::set index out of range");
  if (v == 0)
    data_[r].erase(c);
  else
    data_[r][c] = v;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
  if (v == 0) return;
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::add index out of range");
  auto [it, inserted] = data_[r].try_emplace(c, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) data_[r].erase(it);
  }
}

Rational SparseMatrix::get(std::size_t r, std::size_t c) const {
  auto it = data_[r].find(c);
  return it == data_[r].end() ? Rational(0) : it->second;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

void SparseMatrix::set_column(std::size_t c, const Vec& v) {
  for (std::size_t r = 0; r < rows_; ++r) set(r, c, v[r]);
}

Vec SparseMatrix::column(std::size_t c) const {
  Vec v = zero_vec(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = get(r, c);
  return v;
}

Vec SparseMatrix::apply(const Vec& x) const {
  Vec y = zero_vec(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) y[r] += v * x[c];
  return y;
}

SparseMatrix SparseMatrix::hstack(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("hstack: row count mismatch");
  SparseMatrix m(a.rows_, a.cols_ + b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    m.data_[r] = a.data_[r];
    for (const auto& [c, v] : b.data_[r]) m.data_[r].emplace(c + a.cols_, v);
  }
  return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
  SparseMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r)
      if (cols[c][r] != 0) m.data_[r].emplace(c, cols[c][r]);
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<Vec>& rows, std::size_t cols) {
  SparseMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (rows[r][c] != 0) m.data_[r].emplace(c, rows[r][c]);
  return m;
}

std::vector<Vec> SparseMatrix::to_dense() const {
  std::vector<Vec> out(rows_, zero_vec(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) out[r][c] = v;
  return out;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("multiply: shape mismatch");
  SparseMatrix m(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [k, v] : data_[r])
      for (const auto& [c, w] : other.data_[k]) m.add(r, c, v * w);
  return m;
}

namespace {

using IntRow = std::map<std::size_t, Integer>;

IntRow integer_row(const std::map<std::size_t, Rational>& row) {
  Integer l = 1;
  for (const auto& [c, v] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  IntRow out;
  for (const auto& [c, v] : row) out.emplace(c, Integer(v.get_num() * (l / v.get_den())));
  return out;
}

}  // namespace

std::size_t rank(const SparseMatrix& m) {
  std::vector<IntRow> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!m.row(r).empty()) rows.push_back(integer_row(m.row(r)));

  // Bareiss: after step k every surviving entry is an exact k x k minor,
  // so the division by the previous pivot is exact.
  Integer prev = 1;
  std::size_t rk = 0;
  std::vector<IntRow> active = std::move(rows);
  while (!active.empty()) {
    std::size_t col = static_cast<std::size_t>(-1);
    for (const auto& r : active)
      if (!r.empty()) col = std::min(col, r.begin()->first);
    if (col == static_cast<std::size_t>(-1)) break;

    std::size_t best = active.size();
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (active[i].empty() || active[i].begin()->first != col) continue;
      if (best == active.size() || active[i].size() < active[best].size()) best = i;
    }
    IntRow pivot = std::move(active[best]);
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best));
    const Integer p = pivot.begin()->second;

    std::vector<IntRow> next;
    next.reserve(active.size());
    for (auto& row : active) {
      if (row.empty()) continue;
      Integer a = 0;
      auto hit = row.find(col);
      if (hit != row.end()) a = hit->second;
      IntRow out;
      // new = (p*row - a*pivot) / prev, entry-wise
      auto it = row.begin();
      auto jt = pivot.begin();
      while (it != row.end() || jt != pivot.end()) {
        std::size_t c;
        Integer v;
        if (jt == pivot.end() || (it != row.end() && it->first < jt->first)) {
          c = it->first;
          v = p * it->second;
          ++it;
        } else if (it == row.end() || jt->first < it->first) {
          c = jt->first;
          v = -a * jt->second;
          ++jt;
        } else {
          c = it->first;
          v = p * it->second - a * jt->second;
          ++it;
          ++jt;
        }
        if (c == col || v == 0) continue;
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        out.emplace_hint(out.end(), c, std::move(v));
      }
      if (!out.empty()) next.push_back(std::move(out));
    }
    active = std::move(next);
    prev = p;
    ++rk;
  }
  return rk;
}

std::vector<Vec> kernel_basis(const SparseMatrix& m) {
  std::vector<Vec> a = m.to_dense();
  const std::size_t nr = m.rows(), nc = m.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t p = r;
    while (p < nr && a[p][c] == 0) ++p;
    if (p == nr) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < nc; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < nc; ++j)
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<char> is_pivot(nc, 0);
  for (auto c : pivot_cols) is_pivot[c] = 1;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < nc; ++free) {
    if (is_pivot[free]) continue;
    Vec v = zero_vec(nc);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace njk
