#include "njk/poly.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace njk {

Poly Poly::constant(int n_vars, const Rational& c) {
  Poly p(n_vars);
  p.add_term(Exponent(static_cast<std::size_t>(n_vars), 0), c);
  return p;
}

Poly Poly::variable(int n_vars, int i) {
  Exponent e(static_cast<std::size_t>(n_vars), 0);
  e.at(static_cast<std::size_t>(i)) = 1;
  return monomial(n_vars, std::move(e));
}

Poly Poly::monomial(int n_vars, Exponent e, const Rational& c) {
  if (static_cast<int>(e.size()) != n_vars) throw std::invalid_argument("exponent length mismatch");
  Poly p(n_vars);
  p.add_term(e, c);
  return p;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int a : e) s += a;
    d = std::max(d, s);
  }
  return d;
}

bool Poly::is_homogeneous(int degree) const {
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int a : e) s += a;
    if (s != degree) return false;
  }
  return true;
}

Rational Poly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (terms_.empty() && !o.terms_.empty()) n_ = o.n_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (terms_.empty() && !o.terms_.empty()) n_ = o.n_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r(*this);
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r(*this);
  r -= o;
  return r;
}

Poly Poly::operator-() const { return scaled(-1); }

Poly Poly::operator*(const Poly& o) const {
  Poly r(std::max(n_, o.n_));
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      Exponent e(a);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += b[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  Poly r(n_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& [e, v] : r.terms_) v *= c;
  return r;
}

Poly Poly::derivative(int i) const {
  Poly r(n_);
  const auto k = static_cast<std::size_t>(i);
  for (const auto& [e, c] : terms_) {
    if (e[k] == 0) continue;
    Exponent f(e);
    --f[k];
    r.add_term(f, c * e[k]);
  }
  return r;
}

Rational Poly::evaluate(const Vec& point) const {
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int a = 0; a < e[i]; ++a) t *= point.at(i);
    total += t;
  }
  return total;
}

std::vector<Exponent> monomials_of_degree(int n_vars, int d) {
  std::vector<Exponent> out;
  if (n_vars == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Exponent e(static_cast<std::size_t>(n_vars), 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n_vars - 1) {
      e[static_cast<std::size_t>(i)] = left;
      out.push_back(e);
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[static_cast<std::size_t>(i)] = a;
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct ParsedTerm {
  Rational coeff = 1;
  std::map<int, int> powers;  // 0-based variable -> exponent
};

class PolyParser {
 public:
  explicit PolyParser(std::string s) : s_(std::move(s)) {}

  std::vector<ParsedTerm> run() {
    if (s_.empty()) fail("empty polynomial");
    std::vector<ParsedTerm> terms;
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      ParsedTerm t = term();
      if (sign < 0) t.coeff = -t.coeff;
      terms.push_back(std::move(t));
    }
    return terms;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("polynomial '" + s_ + "': " + why + " at position " + std::to_string(pos_));
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return s_.substr(start, pos_ - start);
  }

  int small_int() {
    std::string d = digits();
    if (d.size() > 6) fail("number too large");
    return std::stoi(d);
  }

  ParsedTerm term() {
    ParsedTerm t;
    for (;;) {
      factor(t);
      if (peek() != '*') break;
      ++pos_;
    }
    return t;
  }

  void factor(ParsedTerm& t) {
    if (peek() == 'x') {
      ++pos_;
      int idx = small_int();
      if (idx < 1) fail("variable index must be >= 1");
      int power = 1;
      if (peek() == '^') {
        ++pos_;
        power = small_int();
      }
      t.powers[idx - 1] += power;
      return;
    }
    std::string lit = digits();
    if (peek() == '/') {
      ++pos_;
      lit += "/" + digits();
    }
    t.coeff *= parse_rational(lit);
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, int n_vars) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  auto terms = PolyParser(s).run();
  int needed = 0;
  for (const auto& t : terms)
    if (!t.powers.empty()) needed = std::max(needed, t.powers.rbegin()->first + 1);
  if (n_vars < 0) n_vars = needed;
  if (needed > n_vars)
    throw std::invalid_argument("polynomial '" + s + "' uses x" + std::to_string(needed) + " but only " +
                                std::to_string(n_vars) + " variables are available");
  Poly p(n_vars);
  for (const auto& t : terms) {
    Exponent e(static_cast<std::size_t>(n_vars), 0);
    for (auto [i, a] : t.powers) e[static_cast<std::size_t>(i)] = a;
    p.add_term(e, t.coeff);
  }
  return p;
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  // highest total degree first reads more naturally
  std::vector<std::pair<Exponent, Rational>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (int x : a.first) da += x;
    for (int x : b.first) db += x;
    if (da != db) return da > db;
    return a.first > b.first;
  });
  for (const auto& [e, c] : terms) {
    Rational mag = abs(c);
    bool neg = c < 0;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      out += to_string(mag);
    else if (mag == 1)
      out += mono;
    else
      out += to_string(mag) + "*" + mono;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

}  // namespace njk
