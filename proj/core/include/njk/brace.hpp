#pragma once

#include <map>
#include <vector>

#include "njk/cochain.hpp"
#include "njk/rational.hpp"

namespace njk {

// Homological degrees of a basis of V.  sV carries degree + 1.
struct GradedSpace {
  std::vector<int> degrees;

  static GradedSpace ungraded(int dim) { return {std::vector<int>(static_cast<std::size_t>(dim), 0)}; }
  int dim() const { return static_cast<int>(degrees.size()); }
  int suspended(int i) const { return degrees[static_cast<std::size_t>(i)] + 1; }
  friend bool operator==(const GradedSpace&, const GradedSpace&) = default;
};

enum class Codomain { SV, V };

// Graded-symmetric map (sV)^{.n} -> sV or V.  Values live on weakly
// increasing keys of basis indices; an index may repeat only when its
// suspended degree is even.  `degree` is the degree of the map itself.
class SuspendedHom {
 public:
  SuspendedHom() = default;
  SuspendedHom(GradedSpace space, int arity, Codomain codomain, int degree);

  const GradedSpace& space() const { return space_; }
  int arity() const { return arity_; }
  Codomain codomain() const { return codomain_; }
  int degree() const { return degree_; }
  int dim() const { return space_.dim(); }
  const std::map<std::vector<int>, Vec>& values() const { return values_; }

  int out_degree(int k) const { return space_.degrees[static_cast<std::size_t>(k)] + (codomain_ == Codomain::SV ? 1 : 0); }

  // Sets the value on any ordering of `key`, applying the Koszul sign.
  // Throws if the value is inhomogeneous or breaks graded symmetry.
  void set(std::vector<int> key, const Vec& value);
  void add(std::vector<int> key, const Vec& value);
  Vec eval_basis(std::vector<int> key) const;
  Vec eval(const std::vector<Vec>& args) const;

  bool is_zero() const { return values_.empty(); }
  friend bool operator==(const SuspendedHom& a, const SuspendedHom& b);
  SuspendedHom operator+(const SuspendedHom& o) const;
  SuspendedHom operator-(const SuspendedHom& o) const;
  SuspendedHom scaled(const Rational& c) const;

  // s o h (codomain V -> sV, degree + 1) and s^{-1} o h.
  SuspendedHom suspend() const;
  SuspendedHom desuspend() const;

  bool same_shape(const SuspendedHom& o) const {
    return space_ == o.space_ && arity_ == o.arity_ && codomain_ == o.codomain_ && degree_ == o.degree_;
  }

 private:
  GradedSpace space_;
  int arity_ = 0;
  Codomain codomain_ = Codomain::SV;
  int degree_ = 0;
  std::map<std::vector<int>, Vec> values_;
};

// Canonical keys of length n: weakly increasing, repeats only on indices
// of even suspended degree.
std::vector<std::vector<int>> symmetric_keys(const GradedSpace& space, int n);

// Shuffle brace f{g_1,...,g_m}.  Arguments must have codomain sV.  Blocks
// S_1..S_m of sizes arity(g_i) with increasing minima; arguments of arity
// zero are allowed only as a prefix of the list and then weighted by 1/e!
// where e is their number.  Throws std::invalid_argument when m > arity(f).
SuspendedHom shuffle_brace(const SuspendedHom& f, const std::vector<SuspendedHom>& args);
// Same, but returns the zero map of the right shape instead of throwing.
SuspendedHom shuffle_brace_or_zero(const SuspendedHom& f, const std::vector<SuspendedHom>& args);

// [a,b] = a{b} - (-1)^{|a||b|} b{a}
SuspendedHom rn_bracket(const SuspendedHom& a, const SuspendedHom& b);

// Fixed isomorphisms between cochains on V and maps on sV:
//   f~ = s^{-1} o F o s^{(x)n}   and   g^ = G o s^{(x)n}.
// Cochains are alternating, so V must be concentrated in even degrees;
// the Koszul signs of s^{(x)n} then vanish and values carry over as is.
// `degree` is the degree of F; the one-argument form uses the ungraded
// value 1 - n (codomain sV) or -n (codomain V).
SuspendedHom to_suspended(const Cochain& f, Codomain codomain, const GradedSpace& space, int degree);
SuspendedHom to_suspended(const Cochain& f, Codomain codomain);
Cochain from_suspended(const SuspendedHom& h);

// nu = -s o mu o (s^{-1})^2 and tau = P o s^{-1} for an ungraded algebra.
SuspendedHom nu_from_lie(const LieAlgebra& L);
SuspendedHom tau_from_operator(const Matrix& P);

}  // namespace njk
