#pragma once

#include <cstddef>
#include <vector>

#include "njk/rational.hpp"

namespace njk {

// Dense row-major matrix; m[i][j] is row i, column j.  A linear map acts
// on column vectors, so column j holds the image of basis vector j.
using Matrix = std::vector<Vec>;

Matrix zero_matrix(std::size_t rows, std::size_t cols);
Matrix identity_matrix(std::size_t n);
Matrix scalar_matrix(std::size_t n, const Rational& c);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);
Matrix mat_scale(const Matrix& a, const Rational& c);
Matrix commutator(const Matrix& a, const Matrix& b);
Vec mat_vec(const Matrix& a, const Vec& x);
Matrix mat_pow(const Matrix& a, int k, std::size_t n);
bool is_zero(const Matrix& a);
std::size_t cols_of(const Matrix& a);
// Inverse by Gauss-Jordan; throws std::domain_error when singular.
Matrix mat_inverse(const Matrix& a);
// Block diagonal diag(a, b).
Matrix block_diag(const Matrix& a, const Matrix& b);

Vec basis_vec(std::size_t n, std::size_t i);

}  // namespace njk
