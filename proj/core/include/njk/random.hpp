#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "njk/forms.hpp"
#include "njk/lie.hpp"

namespace njk {

// mt19937_64 is fully specified by the standard, and the helpers below
// map its output with plain modular arithmetic, so a seed reproduces the
// same samples on every platform.
using Rng = std::mt19937_64;

int random_int(Rng& rng, int lo, int hi);  // inclusive
// p/q with |p| <= range and 1 <= q <= max_den.
Rational random_rational(Rng& rng, int range = 3, int max_den = 2);
Vec random_vec(Rng& rng, std::size_t n, int range = 3);
Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int range = 3);
// Product of random unipotent lower and upper triangular matrices.
Matrix random_invertible(Rng& rng, std::size_t n);

struct NijenhuisSample {
  NijenhuisLieAlgebra nl;
  Representation rep;
  Matrix rep_op;
  std::string family;
};

// A Nijenhuis Lie algebra of dimension in [1, max_dim] drawn from families
// with diagonalizable Nijenhuis operators, conjugated by a random basis
// change, together with a Nijenhuis representation of dimension <= max_rep.
NijenhuisSample random_nijenhuis_sample(Rng& rng, int max_dim = 4, int max_rep = 3);

// (mu, P) where either mu violates Jacobi or P has nonzero torsion.  In
// dimension <= 2 every bracket is Lie and every operator Nijenhuis, so
// max_dim must be at least 3 (std::invalid_argument otherwise).
std::pair<LieAlgebra, Matrix> random_perturbed_pair(Rng& rng, int max_dim = 4);

// Up to max_terms monomials of total degree <= max_degree with small
// rational coefficients.
Poly random_poly(Rng& rng, int n_vars, int max_degree, int max_terms = 3);
// Each coefficient is nonzero with probability 1/2.
VectorForm random_vector_form(Rng& rng, int n_vars, int form_degree, int max_degree, int max_terms = 2);

}  // namespace njk
