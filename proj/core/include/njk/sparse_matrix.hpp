#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "njk/rational.hpp"

namespace njk {

// Row-major sparse matrix over Q.  Zero entries are never stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void set(std::size_t r, std::size_t c, const Rational& v);
  void add(std::size_t r, std::size_t c, const Rational& v);
  Rational get(std::size_t r, std::size_t c) const;
  const std::map<std::size_t, Rational>& row(std::size_t r) const { return data_[r]; }
  std::size_t nonzeros() const;

  // Column c is assigned the vector v (length rows()).
  void set_column(std::size_t c, const Vec& v);
  Vec column(std::size_t c) const;
  Vec apply(const Vec& x) const;

  // Horizontal concatenation [A | B].
  static SparseMatrix hstack(const SparseMatrix& a, const SparseMatrix& b);
  static SparseMatrix from_columns(std::size_t rows, const std::vector<Vec>& cols);
  static SparseMatrix from_dense(const std::vector<Vec>& rows, std::size_t cols);
  std::vector<Vec> to_dense() const;
  SparseMatrix multiply(const SparseMatrix& other) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::map<std::size_t, Rational>> data_;
};

// Exact rank over Q.  Rows are scaled to integer vectors, then reduced
// with fraction-free Bareiss elimination; among candidate pivot rows the
// sparsest one is chosen.
std::size_t rank(const SparseMatrix& m);

// Basis of the right null space {x : m x = 0}, from the reduced row
// echelon form.  One basis vector per free column.
std::vector<Vec> kernel_basis(const SparseMatrix& m);

}  // namespace njk
