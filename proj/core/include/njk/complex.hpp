#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "njk/sparse_matrix.hpp"

namespace njk {

// Matrix of a linear map given by its action on basis vectors.
SparseMatrix matrix_of(std::size_t in_dim, std::size_t out_dim, const std::function<Vec(const Vec&)>& f);

// A finite cochain complex: d[n] maps degree n to degree n+1.  Degrees
// outside [0, dims.size()) are zero spaces.
struct LinearComplex {
  std::vector<std::size_t> dims;
  std::vector<SparseMatrix> d;

  std::size_t dim(int n) const;
  // d^n, or an empty matrix of the right shape when out of range
  SparseMatrix differential(int n) const;
};

struct BettiRow {
  int degree = 0;
  std::size_t dim = 0;
  std::size_t rank = 0;  // rank of d^n
  std::size_t betti = 0;
};

struct BettiReport {
  std::vector<BettiRow> rows;
  std::vector<std::size_t> betti_numbers() const;
};

// b^n = dim C^n - rank d^n - rank d^{n-1} for n = 0..max_degree.
BettiReport betti(const LinearComplex& cx, int max_degree);

// True when d^{n+1} d^n = 0 for every stored degree.
bool squares_to_zero(const LinearComplex& cx);

std::vector<Vec> cocycles(const LinearComplex& cx, int n);
std::vector<Vec> coboundaries(const LinearComplex& cx, int n);

// A degree-wise linear map between complexes: f[n] from A^n to B^{n+shift}.
struct ComplexMap {
  int shift = 0;
  std::vector<SparseMatrix> f;
  SparseMatrix at(int n, std::size_t in_dim, std::size_t out_dim) const;
};

// Exactness at H(B) for A^a -> B^b -> C^c in cohomology.
struct NodeExactness {
  std::size_t image_dim = 0;   // dim im(phi_*) in H(B)
  std::size_t kernel_dim = 0;  // dim ker(psi_*) in H(B)
  bool composite_zero = true;  // psi_* phi_* = 0
  bool exact() const { return composite_zero && image_dim == kernel_dim; }
};

NodeExactness check_exactness(const LinearComplex& A, int a, const SparseMatrix& phi, const LinearComplex& B,
                              int b, const SparseMatrix& psi, const LinearComplex& C, int c);

}  // namespace njk
