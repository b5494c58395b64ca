#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "njk/rational.hpp"

namespace njk {

using Exponent = std::vector<int>;

// Polynomial in x1..xn with rational coefficients.  Zero coefficients are
// never stored.  Variables are 0-based internally, 1-based in text.
class Poly {
 public:
  Poly() = default;
  explicit Poly(int n_vars) : n_(n_vars) {}

  static Poly constant(int n_vars, const Rational& c);
  static Poly variable(int n_vars, int i);
  static Poly monomial(int n_vars, Exponent e, const Rational& c = 1);

  int n_vars() const { return n_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // -1 for the zero polynomial
  int total_degree() const;
  bool is_homogeneous(int degree) const;
  Rational coefficient(const Exponent& e) const;

  void add_term(const Exponent& e, const Rational& c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly scaled(const Rational& c) const;
  Poly derivative(int i) const;
  Rational evaluate(const Vec& point) const;
  // The zero polynomial compares equal regardless of its variable count.
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.terms_ == b.terms_ && (a.n_ == b.n_ || a.terms_.empty());
  }

 private:
  int n_ = 0;
  std::map<Exponent, Rational> terms_;
};

// All exponent vectors of total degree d in n variables, lexicographic.
std::vector<Exponent> monomials_of_degree(int n_vars, int d);

// Signed sums of terms c*x1^a1*x2^a2*...; c is p or p/q, factors may come
// in any order and a bare coefficient or bare monomial is fine.  Whitespace
// is ignored.  With n_vars < 0 the number of variables is the largest index
// seen.  Throws std::invalid_argument on malformed input or an index above
// n_vars.
Poly parse_poly(std::string_view text, int n_vars = -1);
std::string to_string(const Poly& p);
std::ostream& operator<<(std::ostream& os, const Poly& p);

}  // namespace njk
