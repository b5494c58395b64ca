#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "njk/brace.hpp"
#include "njk/cochain.hpp"
#include "njk/complex.hpp"
#include "njk/lie.hpp"

namespace njk {

// Element of C_NjL(V) = Hom(S(sV), sV) (+) Hom(S(sV), V) as a finite sum of
// homogeneous maps, at most one per (codomain, arity, degree).
struct NjlElement {
  std::vector<SuspendedHom> parts;

  static NjlElement of(const SuspendedHom& h);
  void add(const SuspendedHom& h);
  bool is_zero() const { return parts.empty(); }
  const SuspendedHom* find(Codomain c, int arity) const;
  NjlElement operator+(const NjlElement& o) const;
  NjlElement operator-(const NjlElement& o) const;
  NjlElement scaled(const Rational& c) const;
  friend bool operator==(const NjlElement& a, const NjlElement& b);
};

// The operations l_n on homogeneous inputs.  Returns nullopt when the
// operation vanishes for structural reasons (wrong mix of components or
// arities).  Components:
//   l_2(sf, sh)               = [sf, sh]
//   l_{n+1}(sh, g_1..g_n)     = sum over sigma, k of the nested braces,
//                               defined only when arity(sh) = n,
// in any input order, all others zero.  Arity-zero maps are allowed.
std::optional<SuspendedHom> njl_operation(const std::vector<SuspendedHom>& xs);
// Multilinear extension.
NjlElement njl_operation(const std::vector<NjlElement>& xs);

// Twisted operations computed on elements directly:
//   l^a_n(x) = sum_i (-1)^{in + i(i-1)/2} / i! l_{n+i}(a^i, x)
// with i bounded by max_arity - n.
NjlElement njl_twisted_operation(const NjlElement& a, const std::vector<NjlElement>& xs, int max_arity);
// sum_n (-1)^{n(n-1)/2} / n! l_n(a, ..., a) for n <= max_arity
NjlElement njl_maurer_cartan(const NjlElement& a, int max_arity);

// Finite-dimensional graded space W with operations l_n : W^n -> W of
// degree n - 2, given on basis tuples.  Inputs are assumed graded
// antisymmetric, so the operation is only ever asked for sorted tuples
// and results are cached.
class LInftyAlgebra {
 public:
  using BasisOp = std::function<Vec(const std::vector<int>&)>;

  LInftyAlgebra() = default;
  LInftyAlgebra(std::vector<int> degrees, int max_arity, BasisOp op);

  int dim() const { return static_cast<int>(degrees_.size()); }
  int degree(int i) const { return degrees_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& degrees() const { return degrees_; }
  int max_arity() const { return max_arity_; }

  // l_n on basis elements; any order, with the chi sign.
  Vec l(std::vector<int> basis) const;
  // l_n on arbitrary vectors.
  Vec l(const std::vector<Vec>& args) const;
  // The raw operation, without symmetrization or caching.
  Vec raw(const std::vector<int>& basis) const { return op_(basis); }

  // sum_n (-1)^{n(n-1)/2} / n! l_n(a, ..., a)
  Vec maurer_cartan(const Vec& a) const;
  // l^a_n(x) = sum_i (-1)^{in + i(i-1)/2} / i! l_{n+i}(a^i, x)
  LInftyAlgebra twist(const Vec& a) const;

 private:
  std::vector<int> degrees_;
  int max_arity_ = 0;
  BasisOp op_;
  struct Cache {
    std::mutex mu;
    std::map<std::vector<int>, Vec> values;
  };
  std::shared_ptr<Cache> cache_;
};

struct LInftyReport {
  bool valid = true;
  std::string detail;
  std::vector<int> witness;  // basis tuple
  int arity = 0;
};

// Checks graded antisymmetry of the raw operations on every permutation of
// every basis tuple of length <= min(n_max, 4), the degree of each l_n, and
// the generalized Jacobi identity
//   sum_i sum_{Sh(i,n-i)} chi (-1)^{i(n-i)} l_{n-i+1}(l_i(..), ..) = 0
// for all n <= n_max on all sorted basis tuples.
LInftyReport linfty_validate(const LInftyAlgebra& alg, int n_max);

// Finite basis of C_NjL(V) for ungraded V: lie parts of arity 0..dim
// followed by njo parts of arity 0..dim, each by (key, output index) with
// keys in lexicographic order.  The reduced complex drops arity zero.
class NjlBasis {
 public:
  NjlBasis(int dim, bool reduced);
  int dim_v() const { return dim_; }
  bool reduced() const { return reduced_; }
  int size() const { return static_cast<int>(entries_.size()); }
  int degree(int i) const;
  Codomain codomain(int i) const { return entries_[static_cast<std::size_t>(i)].codomain; }
  int arity(int i) const { return static_cast<int>(entries_[static_cast<std::size_t>(i)].key.size()); }
  // Indices of basis elements of the given codomain and arity.
  std::vector<int> block(Codomain c, int arity) const;

  SuspendedHom element(int i) const;
  NjlElement to_element(const Vec& coords) const;
  Vec coords(const NjlElement& x) const;
  // All degrees of the basis, for building an LInftyAlgebra.
  std::vector<int> degrees() const;

 private:
  struct Entry {
    Codomain codomain;
    std::vector<int> key;
    int out;
  };
  int dim_;
  bool reduced_;
  std::vector<Entry> entries_;
  std::map<std::pair<int, int>, int> block_start_;  // (codomain, arity) -> first index
};

// C_NjL(V) with its operations, for ungraded V of dimension dim.
LInftyAlgebra njl_linfty(const NjlBasis& basis);

// l_1 of an algebra on C_NjL(V) as a cochain complex.  Degree n holds the
// elements of degree 1 - n: lie parts of arity n, then njo parts of arity
// n - 1, in basis order.
LinearComplex njl_l1_complex(const LInftyAlgebra& alg, const NjlBasis& basis);
// theta(f, g) = (a_n f~, b_n g^) on C^n_NjL with a_n = (-1)^{n(n-1)/2} and
// b_n = (-1)^n a_n.  Twisting by (nu, tau) gives l_1 theta = theta delta_NjL.
NjlElement njl_embed(const PairCochain& fg);

// Candidate MC element ({b_i}, {R_i}) keyed by arity.
struct MaurerCartanCandidate {
  std::map<int, SuspendedHom> lie;  // b_i : (sV)^i -> sV, degree -1
  std::map<int, SuspendedHom> njo;  // R_i : (sV)^i -> V, degree -1

  static MaurerCartanCandidate from_nijenhuis(const LieAlgebra& L, const Matrix& P);
};

struct McResidual {
  std::map<int, SuspendedHom> lie;  // sum_i b_{n-i+1}{b_i} by output arity n
  std::map<int, SuspendedHom> njo;  // s^{-1} of the second family, by arity
  bool zero() const;
  std::vector<int> nonzero_lie_arities() const;
  std::vector<int> nonzero_njo_arities() const;
};

// Both MC equations at every arity reachable from components of arity
// <= n_max.  Throws std::invalid_argument when a component does not have
// degree -1, its stated arity, or the right codomain.
McResidual mc_residual(const MaurerCartanCandidate& cand, int n_max);

// The bracket l_2^a(f, g) = l_3(nu, f, g) on C_NjO(V): a graded Lie
// algebra whenever nu{nu} = 0.  Throws std::domain_error otherwise.
class NjoGradedLie {
 public:
  explicit NjoGradedLie(SuspendedHom nu);
  SuspendedHom bracket(const SuspendedHom& f, const SuspendedHom& g) const;
  // -1/2 [t, t]
  SuspendedHom maurer_cartan(const SuspendedHom& t) const;
  // d_b(f) = -[b, f]
  SuspendedHom twisted_differential(const SuspendedHom& b, const SuspendedHom& f) const;
  const SuspendedHom& nu() const { return nu_; }

 private:
  SuspendedHom nu_;
};

}  // namespace njk
