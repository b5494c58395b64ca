#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "njk/forms.hpp"
#include "njk/lie.hpp"
#include "njk/random.hpp"

namespace njk {

// A section of A: component i is the coefficient of the frame section e_i.
using Section = VectorField;

// Lie algebroid of rank n over R^m with polynomial structure functions:
//   rho(e_i) = rho_i^a d/dx^a,   [e_i, e_j]_A = c_ij^k e_k   (i < j stored).
struct PolyAlgebroid {
  int base_dim = 0;
  int rank = 0;
  std::vector<std::vector<Poly>> anchor;  // anchor[i][a] = rho_i^a
  std::map<std::pair<int, int>, std::vector<Poly>> structure;

  PolyAlgebroid() = default;
  PolyAlgebroid(int m, int n);
  // T R^m: rho = id, c = 0.
  static PolyAlgebroid tangent(int m);
  // A Lie algebra as an algebroid over a point.
  static PolyAlgebroid from_lie(const LieAlgebra& g);

  // Stores c_ij for i < j; i > j is stored negated, i == j must be zero.
  void set_bracket(int i, int j, std::vector<Poly> value);
  Poly c(int i, int j, int k) const;
  Poly rho(int i, int a) const;

  Section zero() const { return zero_section(rank, base_dim); }
  Section basis(int i) const;
  // rho(E) as a vector field on the base.
  VectorField anchor_of(const Section& e) const;
  // Extended by Leibniz in both slots.
  Section bracket(const Section& e, const Section& f) const;
  SectionBracket bracket_fn() const;
};

// Homogeneous vector field on A[1] of degree b - 1:
//   X = f^a_I eta^I d/dx^a + g^k_J eta^J d/deta^k,  |I| = b - 1, |J| = b.
// Functions on A[1] are ScalarForms over the base whose indices run over
// the fiber coordinates eta^1..eta^n.
class GradedField {
 public:
  using Key = std::pair<std::vector<int>, int>;

  GradedField() = default;
  GradedField(int base_dim, int rank, int degree) : m_(base_dim), n_(rank), deg_(degree) {}

  int base_dim() const { return m_; }
  int rank() const { return n_; }
  int degree() const { return deg_; }
  const std::map<Key, Poly>& a_part() const { return a_; }
  const std::map<Key, Poly>& d_part() const { return d_; }
  bool is_zero() const { return a_.empty() && d_.empty(); }

  // Index tuples in any order; repeated indices give zero.
  void add_a(std::vector<int> idx, int alpha, const Poly& f);
  void add_d(std::vector<int> idx, int beta, const Poly& g);
  Poly a_coefficient(std::vector<int> idx, int alpha) const;
  Poly d_coefficient(std::vector<int> idx, int beta) const;

  // X(F) for a homogeneous function F.
  ScalarForm act(const ScalarForm& f) const;
  // a_X(h) = f^a_I dh/dx^a eta^I, of degree b - 1.
  ScalarForm a_of(const Poly& h) const;

  GradedField operator+(const GradedField& o) const;
  GradedField operator-(const GradedField& o) const;
  GradedField scaled(const Rational& c) const;
  friend bool operator==(const GradedField&, const GradedField&) = default;

 private:
  int m_ = 0;
  int n_ = 0;
  int deg_ = 0;
  std::map<Key, Poly> a_;
  std::map<Key, Poly> d_;
};

std::string to_string(const GradedField& x);
std::ostream& operator<<(std::ostream& os, const GradedField& x);

// Q = rho_i^a eta^i d/dx^a - sum_{p<q} c_pq^k eta^p eta^q d/deta^k
GradedField homological_field_q(const PolyAlgebroid& A);

// [X,Y] = XY - (-1)^{|X||Y|} YX from the closed shuffle-sum expansion of
// its coefficients.  Throws std::invalid_argument on a shape mismatch.
GradedField graded_commutator(const GradedField& x, const GradedField& y);
// The same, read off from the action of XY -/+ YX on x^a and eta^k.
GradedField graded_commutator_by_action(const GradedField& x, const GradedField& y);

struct AlgebroidReport {
  bool valid = true;
  bool jacobi_ok = true;    // Jacobi on (e_i, e_j, x^a e_k) and (e_i, e_j, e_k)
  bool anchor_ok = true;    // rho[e_i, e_j] = [rho e_i, rho e_j]
  bool q_squared_zero = true;
  bool routes_agree = true;
  std::string detail;
};

AlgebroidReport validate_algebroid(const PolyAlgebroid& A);

// B_X(E_1..E_b) from its defining pairing with every eta^q.
Section b_eval(const GradedField& x, const std::vector<Section>& e);
// (-1)^{b-1} g^q_J e_q on frame sections e_J.
Section b_eval_basis(const GradedField& x, const std::vector<int>& idx);
using SectionMap = std::function<Section(const std::vector<Section>&)>;
SectionMap b_from_field(const GradedField& x);

// [F, G](E..) = sum_{Sh(c,b-1)} sgn F(G(..), ..)
//             - (-1)^{(b-1)(c-1)} sum_{Sh(b,c-1)} sgn G(F(..), ..)
// for F of arity b and G of arity c.
Section rna_bracket_eval(const SectionMap& f, int b, const SectionMap& g, int c, const std::vector<Section>& e);

// Measured convention: B_{[X,Y]} = [B_Y, B_X]_RNA, checked exactly on
// random pairs in the tests.
inline constexpr bool kBCommutatorSwapsOrder = true;

// Phi(X)(E..) = sum_k sum_{i_1<..<i_k} (-1)^{b-k} P^{b-k} B_X(.., P E_i, ..)
Section phi_eval(const VectorForm& P, const GradedField& x, const std::vector<Section>& e);
VectorForm phi_map(const PolyAlgebroid& A, const VectorForm& P, const GradedField& x);

// Torsion of P for the algebroid bracket, and the same from the closed
// coefficient formula in rho, c and P.
VectorForm algebroid_torsion(const PolyAlgebroid& A, const VectorForm& P);
VectorForm algebroid_torsion_coefficients(const PolyAlgebroid& A, const VectorForm& P);
// [K, L]_FN for the algebroid bracket.
VectorForm algebroid_fn_bracket(const PolyAlgebroid& A, const VectorForm& K, const VectorForm& L);

// Throws std::domain_error unless A is a Lie algebroid and P is Nijenhuis.
void require_nijenhuis_algebroid(const PolyAlgebroid& A, const VectorForm& P);

// Element of the mapping cone: a field of degree d and a form of degree d.
struct ConePair {
  GradedField field;
  VectorForm form;
};

// (X, E) -> (-[Q,X], -Phi(X) - [P,E]_FN)
ConePair delta_njld(const PolyAlgebroid& A, const VectorForm& P, const ConePair& pair);

struct PhiChainReport {
  bool ok = true;
  std::size_t checked = 0;
  std::uint64_t seed = 0;
  std::string detail;
};

// Phi(-[Q,X]) = [P, Phi(X)]_FN on every monomial field of degree
// -1..max_field_degree with coefficients of degree <= max_poly_degree, and
// on `random_samples` seeded random combinations.
PhiChainReport validate_phi_chain_map(const PolyAlgebroid& A, const VectorForm& P, int random_samples,
                                      std::uint64_t seed, int max_field_degree = 3, int max_poly_degree = 2);

struct AlgebroidMcResidual {
  GradedField q_squared;            // [Q, Q]
  VectorForm torsion_brace;         // B_Q{P,P} - P{B_Q{P}} + P{P{B_Q}} on frames
  VectorForm torsion_coefficients;  // closed formula
  bool routes_agree = true;
  bool vanishes() const { return q_squared.is_zero() && torsion_brace.is_zero(); }
};

AlgebroidMcResidual algebroid_mc_residual(const PolyAlgebroid& A, const VectorForm& P);

// Every field of the given degree whose coefficients are single monomials
// of total degree <= max_poly_degree.
std::vector<GradedField> monomial_fields(int base_dim, int rank, int degree, int max_poly_degree);
GradedField random_graded_field(Rng& rng, int base_dim, int rank, int degree, int max_poly_degree);
// Random form on the fiber indices, coefficients present with probability 1/2.
VectorForm random_algebroid_form(Rng& rng, int base_dim, int rank, int degree, int max_poly_degree);

}  // namespace njk
