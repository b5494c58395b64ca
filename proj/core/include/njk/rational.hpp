#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace njk {

// mpq_class keeps values canonical (lowest terms, positive denominator)
// after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;
using Vec = std::vector<Rational>;

// Accepts "p" or "p/q" with an optional leading sign and q > 0.
// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

Vec zero_vec(std::size_t n);
bool is_zero(const Vec& v);
void axpy(Vec& y, const Rational& a, const Vec& x);
Vec scaled(const Vec& x, const Rational& a);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);

inline int sign_pow(long long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace njk
