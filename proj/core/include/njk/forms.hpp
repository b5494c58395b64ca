#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "njk/complex.hpp"
#include "njk/poly.hpp"

namespace njk {

// Polynomial vector field on R^n: component a is the coefficient of d/dx^a.
using VectorField = std::vector<Poly>;

VectorField zero_field(int n);
// Zero section of a rank-r bundle with coefficients in n_vars variables.
VectorField zero_section(int rank, int n_vars);
VectorField coordinate_field(int n, int a);
bool is_zero(const VectorField& v);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField scaled(const VectorField& v, const Rational& c);
VectorField scaled(const VectorField& v, const Poly& f);
// V(f) = sum_a V^a df/dx^a
Poly act(const VectorField& v, const Poly& f);
// [V, W]^a = V(W^a) - W(V^a)
VectorField lie_bracket(const VectorField& v, const VectorField& w);

// Differential form with polynomial coefficients on increasing index
// tuples.  Degree -1 stands for the zero space (e.g. i_X of a function).
class ScalarForm {
 public:
  ScalarForm() = default;
  ScalarForm(int n_vars, int degree) : n_(n_vars), deg_(degree) {}
  static ScalarForm function(const Poly& f);
  // dx^{i_1} ^ ... ^ dx^{i_k}, any order
  static ScalarForm basis(int n_vars, const std::vector<int>& idx);

  int n_vars() const { return n_; }
  int degree() const { return deg_; }
  const std::map<std::vector<int>, Poly>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  // Adds f to the coefficient of dx^idx, idx in any order.
  void add(std::vector<int> idx, const Poly& f);
  Poly coefficient(std::vector<int> idx) const;
  // beta(X_1, ..., X_k)
  Poly eval(const std::vector<VectorField>& args) const;

  ScalarForm operator+(const ScalarForm& o) const;
  ScalarForm operator-(const ScalarForm& o) const;
  ScalarForm scaled(const Rational& c) const;
  ScalarForm scaled(const Poly& f) const;
  friend bool operator==(const ScalarForm&, const ScalarForm&) = default;

 private:
  int n_ = 0;
  int deg_ = 0;
  std::map<std::vector<int>, Poly> entries_;
};

// Vector-valued form K = sum K^a_I dx^I (x) d/dx^a.  Degree 0 is a vector
// field.  More generally a section of wedge^k A^* (x) A for a bundle A of
// the given rank over R^n_vars: indices then run over a fiber basis.
class VectorForm {
 public:
  using Key = std::pair<std::vector<int>, int>;

  VectorForm() = default;
  VectorForm(int n_vars, int degree) : n_(n_vars), rank_(n_vars), deg_(degree) {}
  VectorForm(int n_vars, int rank, int degree) : n_(n_vars), rank_(rank), deg_(degree) {}
  static VectorForm from_field(const VectorField& v);
  // alpha (x) X
  static VectorForm tensor(const ScalarForm& alpha, const VectorField& x);
  // Operator on vector fields given by its matrix of polynomials:
  // column j is the image of d/dx^j.
  static VectorForm from_operator(const std::vector<std::vector<Poly>>& m);
  // P = diag(x^1, ..., x^n)
  static VectorForm diagonal_coordinates(int n);

  int n_vars() const { return n_; }
  int rank() const { return rank_; }
  int degree() const { return deg_; }
  const std::map<Key, Poly>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  void add(std::vector<int> idx, int out, const Poly& f);
  Poly coefficient(std::vector<int> idx, int out) const;
  // K(X_1, ..., X_k)
  VectorField eval(const std::vector<VectorField>& args) const;
  // K on coordinate fields d/dx^{j_1}, ..., d/dx^{j_k}
  VectorField eval_coordinates(const std::vector<int>& idx) const;
  // The degree-0 part as a field; throws unless degree() == 0.
  VectorField as_field() const;

  // Largest total degree of any coefficient, -1 when zero.
  int poly_degree() const;
  bool is_homogeneous(int poly_degree) const;

  VectorForm operator+(const VectorForm& o) const;
  VectorForm operator-(const VectorForm& o) const;
  VectorForm scaled(const Rational& c) const;
  friend bool operator==(const VectorForm&, const VectorForm&) = default;

 private:
  int n_ = 0;
  int rank_ = 0;
  int deg_ = 0;
  std::map<Key, Poly> entries_;
};

std::string to_string(const ScalarForm& f);
std::string to_string(const VectorForm& k);
std::ostream& operator<<(std::ostream& os, const ScalarForm& f);
std::ostream& operator<<(std::ostream& os, const VectorForm& k);

ScalarForm wedge(const ScalarForm& a, const ScalarForm& b);
ScalarForm de_rham_d(const ScalarForm& b);

// (i_K beta)(X_1..X_{k+l-1}) = sum over Sh(k, l-1) of
//   sgn beta(K(X_s(1..k)), X_s(k+1), ...);  zero when l = 0.
ScalarForm interior_product(const VectorForm& K, const ScalarForm& beta);
VectorForm interior_product(const VectorForm& K, const VectorForm& L);

// [K, L]_RN = i_K L - (-1)^{(k-1)(l-1)} i_L K
VectorForm rn_bracket_forms(const VectorForm& K, const VectorForm& L);

// L_K = i_K d - (-1)^{k-1} d i_K
ScalarForm lie_derivative(const VectorForm& K, const ScalarForm& beta);

// Bracket of sections; lie_bracket for the tangent bundle.
using SectionBracket = std::function<VectorField(const VectorField&, const VectorField&)>;

// [K, L]_FN(X_1..X_{k+l}) by the five shuffle sums, on arbitrary fields.
VectorField fn_bracket_eval(const VectorForm& K, const VectorForm& L, const std::vector<VectorField>& args);
VectorField fn_bracket_eval(const VectorForm& K, const VectorForm& L, const std::vector<VectorField>& args,
                            const SectionBracket& br);
// Coefficients of [K, L]_FN from the five-sum formula on coordinate fields
// (basis sections for a general bracket).
VectorForm fn_bracket(const VectorForm& K, const VectorForm& L);
VectorForm fn_bracket(const VectorForm& K, const VectorForm& L, const SectionBracket& br);
// [a (x) X, b (x) Y]_FN = a^b (x) [X,Y] + a^L_X b (x) Y - L_Y a ^ b (x) X
//                       + (-1)^k (da ^ i_X b (x) Y + i_Y a ^ db (x) X)
VectorForm fn_bracket_decomposable(const ScalarForm& a, const VectorField& x, const ScalarForm& b,
                                   const VectorField& y);
// Sum of the above over the monomial summands dx^I (x) f d/dx^a of K and L.
VectorForm fn_bracket_by_definition(const VectorForm& K, const VectorForm& L);

// N_P(X, Y) = [PX, PY] - P[PX, Y] - P[X, PY] + P^2[X, Y]
VectorField nijenhuis_torsion_eval(const VectorForm& P, const VectorField& x, const VectorField& y);
VectorField nijenhuis_torsion_eval(const VectorForm& P, const VectorField& x, const VectorField& y,
                                   const SectionBracket& br);
// Throws std::invalid_argument unless P has degree 1.
VectorForm nijenhuis_torsion_form(const VectorForm& P);
VectorForm nijenhuis_torsion_form(const VectorForm& P, const SectionBracket& br);

// d_FN K = [P, K]_FN.  Throws std::domain_error when N_P != 0.
VectorForm d_fn(const VectorForm& P, const VectorForm& K);

// Homotopy for P = diag(x^1..x^n): deletes the output index from the
// lower indices with sign (-1)^{k+1}, k the number of smaller indices.
VectorForm poincare_h(const VectorForm& K);

// Monomial basis of forms of the given degree whose coefficients are
// homogeneous of total degree poly_degree.
std::vector<VectorForm> monomial_forms(int n, int form_degree, int poly_degree);

struct HomotopyReport {
  bool ok = true;
  std::size_t checked = 0;
  std::string detail;  // first failing form, if any
};

// d_FN h + h d_FN = id on every monomial form of the listed form degrees
// and polynomial degree <= max_poly_degree, for P = diag(x^1..x^n).
HomotopyReport check_homotopy(int n, int max_poly_degree, const std::vector<int>& form_degrees);

struct FnSliceBetti {
  int poly_degree = 0;
  BettiReport report;
};

// Betti numbers of (C_FN, d_FN) for P = diag(x^1..x^n), one complex per
// total polynomial degree 0..max_poly_degree, form degrees
// 0..max_form_degree.  Throws std::logic_error if d_FN leaves a slice.
std::vector<FnSliceBetti> fn_betti(int n, int max_poly_degree, int max_form_degree);

}  // namespace njk
