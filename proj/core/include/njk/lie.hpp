#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "njk/matrix.hpp"
#include "njk/rational.hpp"

namespace njk {

// Outcome of a structural check.  Invalid input is an answer, not an error.
struct Report {
  bool valid = true;
  std::string detail;
  std::vector<int> witness;  // basis indices of the first failure
  Vec residual;              // value of the failing expression
};

// Lie algebra by structure constants [e_i, e_j] = sum_k c_ij^k e_k, kept
// only for i < j.  Missing pairs bracket to zero.
struct LieAlgebra {
  int dim = 0;
  std::map<std::pair<int, int>, Vec> structure;
  std::vector<std::string> basis;

  explicit LieAlgebra(int d = 0) : dim(d) {}

  void set_bracket(int i, int j, const Vec& value);
  Vec bracket_basis(int i, int j) const;
  Vec bracket(const Vec& a, const Vec& b) const;
  // ad(e_i) as a matrix: column j is [e_i, e_j].
  Matrix ad(int i) const;
};

// Per-generator action matrices rho(e_i) on M.
struct Representation {
  int dim_m = 0;
  std::vector<Matrix> action;

  Matrix action_of(const Vec& a) const;
  Vec act(const Vec& a, const Vec& x) const;
};

struct NijenhuisLieAlgebra {
  LieAlgebra algebra;
  Matrix op;
};

// A Nijenhuis Lie algebra with a Nijenhuis representation (M, P_M).
struct NijenhuisRep {
  Representation rep;
  Matrix op;
};

Report validate_lie(const LieAlgebra& L);
Report validate_representation(const LieAlgebra& L, const Representation& M);

// N(x,y) = [Px,Py] - P([Px,y] + [x,Py] - P[x,y])
Vec nijenhuis_torsion_alg(const LieAlgebra& L, const Matrix& P, const Vec& x, const Vec& y);
Report validate_nijenhuis(const LieAlgebra& L, const Matrix& P);

// [a,b]_P = [Pa,b] + [a,Pb] - P[a,b].  Throws std::domain_error when P is
// not Nijenhuis, naming the failing basis pair.
LieAlgebra deformed_bracket(const LieAlgebra& L, const Matrix& P);
// Same formula without the precondition, for iterated hierarchy checks.
LieAlgebra deformed_bracket_unchecked(const LieAlgebra& L, const Matrix& P);

// P(a)P_M(x) = P_M(P(a)x + a P_M(x) - P_M(a x)) on all basis pairs.
Report validate_nijenhuis_representation(const NijenhuisLieAlgebra& NL, const Representation& M,
                                         const Matrix& PM);

// Bracket ([a,b], a.y - b.x) on g + M with operator diag(P, P_M).
NijenhuisLieAlgebra semidirect_product(const NijenhuisLieAlgebra& NL, const Representation& M,
                                       const Matrix& PM);

// a |> x := P(a) x, a representation of (g, mu_P).
Representation deformed_representation(const NijenhuisLieAlgebra& NL, const Representation& M,
                                       const Matrix& PM);

Representation adjoint_representation(const LieAlgebra& L);
Representation trivial_representation(const LieAlgebra& L, int dim_m);

// Change of basis: returns the algebra with basis f_j = sum_i T_ij e_i.
LieAlgebra transform_lie(const LieAlgebra& L, const Matrix& T);
Matrix transform_operator(const Matrix& P, const Matrix& T);
Representation transform_representation(const Representation& M, const Matrix& Tg, const Matrix& Tm);

}  // namespace njk
