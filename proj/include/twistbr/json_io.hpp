#pragma once

// JSON encoding of every value type. Numbers in Q are exact fraction
// strings ("1/2", "-3"); counts, matrix entries and Brauer invariant
// numerators/denominators are JSON integers.
// Parsers are strict: wrong types and unknown keys raise InvalidArgument.

#include <json.hpp>

#include "twistbr/brauer.hpp"
#include "twistbr/quadform.hpp"
#include "twistbr/quiver.hpp"
#include "twistbr/twistclass.hpp"

namespace twistbr::json_io {

using Json = nlohmann::json;

Json to_json(const Rational& x);
Json to_json(const Integer& x);
Json to_json(const Place& v);
Json to_json(const FieldSpec& k);
/// {"field", "invariants": [[place, numerator, denominator], ...]} in
/// place order.
Json to_json(const BrauerClass& x);
/// {"field", "diag": [...]}
Json to_json(const QuadraticForm& q);
Json to_json(const FormInvariants& inv);
/// {"kind": "brauer", "class"} or {"kind": "form", "form"}
Json to_json(const TorsorDatum& t);
/// {"geometry", "torsor", "twist"}
Json to_json(const TwistPoint& t);
/// [{"orbit", "point", "window"}, ...]
Json to_json(const TwistEnumeration& e);
Json to_json(const ClassificationSchema& s);
Json to_json(const IntMatrix& m);
Json to_json(const CongruenceResult& r);
Json to_json(const K1Distinction& d);

/// A JSON integer or a fraction string.
Rational rational_from_json(const Json& j);
Integer integer_from_json(const Json& j);
Place place_from_json(const Json& j);
FieldSpec field_from_json(const Json& j);

/// Either the full object form, or a bare {"<place>": value} map read over
/// `fallback` (required then).
BrauerClass brauer_from_json(const Json& j, const std::optional<FieldSpec>& fallback);
/// Either the full object form, or a bare coefficient array read over
/// `fallback`.
QuadraticForm form_from_json(const Json& j, const std::optional<FieldSpec>& fallback);
TorsorDatum torsor_from_json(const Json& j, const std::optional<FieldSpec>& fallback);
TwistPoint twist_point_from_json(const Json& j);
IntMatrix matrix_from_json(const Json& j);
std::vector<std::vector<Rational>> rational_matrix_from_json(const Json& j);
/// {"vertices": [{"label_dim"}], "arrows": [{"src", "dst", "dim"}]};
/// label_dim and dim default to 1.
Species species_from_json(const Json& j);
Quaternion quaternion_from_json(const Json& j);

/// Compact class syntax "{inf:1/2, 2:1/2}" (also "∞"), or JSON.
BrauerClass parse_class_text(std::string_view text, const std::optional<FieldSpec>& field);

/// Parses text as JSON, reporting malformed input as InvalidArgument.
Json parse_json(std::string_view text);

}  // namespace twistbr::json_io
