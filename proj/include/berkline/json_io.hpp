#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "berkline/operator.hpp"
#include "berkline/point.hpp"
#include "berkline/sequence.hpp"

namespace berkline {

using Json = nlohmann::json;

/// Malformed input documents (missing keys, wrong types, unparsable numbers).
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

Json to_json(const Magnitude& m);
Magnitude magnitude_from_json(const Json& j);

Json to_json(const PadicNumber& x);
Json to_json(const Point& x);
/// Rationals inside p-adic points are read with `digits` digits of precision.
Point point_from_json(const Json& j, int digits = kDefaultPadicDigits);

Json to_json(const BasePoint& b);
Json to_json(const ExtRational& v);

SequenceDescriptor descriptor_from_json(const Json& j);

/// {"p", "kind", "width", "entries", "decay"} or {"p", "matrix"} for a finite-rank block.
OperatorSpec operator_from_json(const Json& j);
PadicMatrix padic_matrix_from_json(const Json& j);
/// Rows of entries; an entry is a rational or {"re", "im"}.
GaussMatrix gauss_matrix_from_json(const Json& j);

/// Parses inline JSON, or reads the named file when the text is not JSON.
Json load_json_argument(const std::string& text);

}  // namespace berkline
