#pragma once

#include <optional>
#include <vector>

#include "njk/complex.hpp"
#include "njk/lie.hpp"

namespace njk {

// Alternating multilinear map g^n -> M stored on strictly increasing index
// tuples in lexicographic order.  values[t] is the image of the t-th tuple.
struct Cochain {
  int degree = 0;
  int source_dim = 0;
  int target_dim = 0;
  std::vector<Vec> values;

  static Cochain zero(int degree, int source_dim, int target_dim);
  // Dense coordinates: tuple-major, target component minor.
  static Cochain from_flat(int degree, int source_dim, int target_dim, const Vec& flat);
  Vec flat() const;
  std::size_t flat_dim() const { return values.size() * static_cast<std::size_t>(target_dim); }

  Vec& at(const std::vector<int>& increasing);
  // Any index tuple; sorts with sign and vanishes on repeated indices.
  Vec eval_basis(std::vector<int> idx) const;
  // Multilinear evaluation on arbitrary vectors.
  Vec eval(const std::vector<Vec>& args) const;

  bool is_zero() const;
  friend bool operator==(const Cochain& a, const Cochain& b);
  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain scaled(const Rational& c) const;
  // Post-composition with a linear map on the target.
  Cochain post(const Matrix& A) const;
};

std::size_t cochain_dim(int degree, int source_dim, int target_dim);

// Everything the Nijenhuis differentials need, validated once at
// construction: (g, mu, P), a Nijenhuis representation (M, P_M), and the
// deformed bracket mu_P with the deformed action a |> x = P(a)x.
class NjContext {
 public:
  // Throws std::domain_error when P is not Nijenhuis or (M, P_M) is not
  // a Nijenhuis representation.
  NjContext(NijenhuisLieAlgebra nl, Representation rep, Matrix rep_op);
  // Adjoint representation with P_M = P.
  explicit NjContext(NijenhuisLieAlgebra nl);

  const LieAlgebra& algebra() const { return nl_.algebra; }
  const Matrix& op() const { return nl_.op; }
  const Representation& rep() const { return rep_; }
  const Matrix& rep_op() const { return rep_op_; }
  const LieAlgebra& deformed() const { return deformed_; }
  const Representation& deformed_rep() const { return deformed_rep_; }
  int dim() const { return nl_.algebra.dim; }
  int rep_dim() const { return rep_.dim_m; }

 private:
  NijenhuisLieAlgebra nl_;
  Representation rep_;
  Matrix rep_op_;
  LieAlgebra deformed_;
  Representation deformed_rep_;
};

// C^n_NjL = C^n_Lie + C^{n-1}_NjO; njo is absent in degree 0.
struct PairCochain {
  Cochain lie;
  std::optional<Cochain> njo;

  int degree() const { return lie.degree; }
  static PairCochain zero(int degree, int source_dim, int target_dim);
  static PairCochain from_flat(int degree, int source_dim, int target_dim, const Vec& flat);
  Vec flat() const;
  bool is_zero() const;
};

// Chevalley-Eilenberg differential with coefficients in M.
Cochain delta_lie(const LieAlgebra& L, const Representation& M, const Cochain& f);
// -P_M o delta_Lie(f) + delta_Lie over (mu_P, |>)
Cochain delta_njo(const NjContext& ctx, const Cochain& f);
Cochain psi(const NjContext& ctx, const Cochain& f);
// (delta_Lie f, -Psi f - delta_NjO g)
PairCochain delta_njl(const NjContext& ctx, const PairCochain& fg);

enum class ComplexKind { CE, NjO, NjL };

// Complex of kind `kind` in degrees 0..top (top defaults to the last
// nonzero degree: dim g for CE and NjO, dim g + 1 for NjL).
LinearComplex build_complex(ComplexKind kind, const NjContext& ctx, int top = -1);
BettiReport betti(ComplexKind kind, const NjContext& ctx, int max_degree);

struct LesNode {
  std::string label;  // e.g. "H^1_NjO"
  NodeExactness result;
};

struct LesReport {
  bool exact = true;
  std::vector<LesNode> nodes;
  long long euler_lie = 0, euler_njo = 0, euler_njl = 0;
  bool euler_ok = true;  // chi(NjL) = chi(Lie) - chi(NjO)
};

// Exactness of
//   0 -> H^0_NjL -> H^0_Lie -> H^0_NjO -> H^1_NjL -> H^1_Lie -> ...
// at every node whose degree is at most max_degree (NjL nodes up to
// max_degree + 1 are included as targets of H^max_NjO).
LesReport les_verify(const NjContext& ctx, int max_degree);

}  // namespace njk
