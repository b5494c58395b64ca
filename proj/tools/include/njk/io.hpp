#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "njk/algebroid.hpp"
#include "njk/forms.hpp"
#include "njk/lie.hpp"

namespace njk {

using Json = nlohmann::json;

// Malformed input.  `where` is a JSON path such as brackets."0,1"."2" or
// line:column for syntax errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Reads a whole JSON document from a file, or from `in` when path is "-".
Json read_json(const std::string& path, std::istream& in);

// A Lie algebra with the optional pieces the commands look at.  Matrices
// are row-major with column j the image of basis vector j.
struct LieFile {
  LieAlgebra algebra;
  std::optional<Matrix> nijenhuis;
  std::optional<Representation> representation;
  std::optional<Matrix> rep_nijenhuis;
};

LieFile parse_lie_file(const Json& j);
Json to_json(const LieFile& f);

// An algebroid with an optional operator: nijenhuis[a][j] is the e_a
// component of P(e_j).
struct AlgebroidFile {
  PolyAlgebroid algebroid;
  std::optional<VectorForm> nijenhuis;
};

AlgebroidFile parse_algebroid_file(const Json& j);
Json to_json(const AlgebroidFile& f);

// Vector-valued form on R^n:
//   {"degree": k, "terms": [{"in": [i..], "out": a, "coeff": "poly"}, ..]}
// with 0-based indices; or, for degree 1, a square matrix of polynomial
// strings read like `nijenhuis` above.  Indices run over 0..rank-1, and
// rank < 0 means rank = n_vars.
VectorForm parse_vector_form(const Json& j, int n_vars, const std::string& where, int rank = -1);
Json to_json(const VectorForm& k);

Json rational_json(const Rational& q);
Json poly_json(const Poly& p);
Json betti_json(const BettiReport& r);

}  // namespace njk
