#include "twistbr/json_io.hpp"

#include <algorithm>
#include <initializer_list>

#include "twistbr/error.hpp"

namespace twistbr::json_io {

namespace {

void require_object(const Json& j, const char* what, std::initializer_list<const char*> allowed,
                    std::initializer_list<const char*> required) {
  if (!j.is_object()) throw InvalidArgument(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; }))
      throw InvalidArgument("unknown key '" + key + "' in " + what);
  }
  for (const char* key : required)
    if (!j.contains(key)) throw InvalidArgument(std::string(what) + " is missing '" + key + "'");
}

const Json& require_array(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidArgument(std::string(what) + " must be a JSON array");
  return j;
}

std::int64_t int64_from_json(const Json& j, const char* what) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  throw InvalidArgument(std::string(what) + " must be a JSON integer");
}

std::size_t index_from_json(const Json& j, const char* what) {
  std::int64_t v = int64_from_json(j, what);
  if (v < 0) throw InvalidArgument(std::string(what) + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

// ------------------------------------------------------------------ emit

Json to_json(const Rational& x) { return twistbr::to_string(x); }

Json to_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

Json to_json(const Place& v) { return v.to_string(); }

Json to_json(const FieldSpec& k) { return k.to_string(); }

Json to_json(const BrauerClass& x) {
  Json inv = Json::array();
  for (const auto& [place, value] : x.invariants())
    inv.push_back({to_json(place), to_json(Integer(value.get_num())), to_json(Integer(value.get_den()))});
  return {{"field", to_json(x.field())}, {"invariants", inv}};
}

Json to_json(const QuadraticForm& q) {
  Json diag = Json::array();
  for (const auto& a : q.diag()) diag.push_back(to_json(a));
  return {{"field", to_json(q.field())}, {"diag", diag}};
}

Json to_json(const FormInvariants& inv) {
  Json hasse = Json::array();
  for (const auto& p : inv.hasse_minus) hasse.push_back(p.get_str());
  Json out{{"field", to_json(inv.field)}, {"rank", inv.rank}, {"discriminant", inv.disc.get_str()},
           {"hasse_minus_places", hasse}};
  if (inv.field.kind() == FieldKind::reals || inv.field.kind() == FieldKind::rationals)
    out["signature"] = {{"positive", inv.signature.positive}, {"negative", inv.signature.negative}};
  return out;
}

Json to_json(const TorsorDatum& t) {
  if (const auto* c = std::get_if<BrauerClass>(&t)) return {{"kind", "brauer"}, {"class", to_json(*c)}};
  return {{"kind", "form"}, {"form", to_json(std::get<QuadraticForm>(t))}};
}

Json to_json(const TwistPoint& t) {
  return {{"geometry", t.geometry().to_string()}, {"torsor", to_json(t.torsor())}, {"twist", to_json(t.twist())}};
}

Json to_json(const TwistEnumeration& e) {
  Json out = Json::array();
  for (const auto& p : e.points) out.push_back({{"orbit", p.orbit}, {"point", to_json(p.point)}, {"window", e.window_label}});
  return out;
}

Json to_json(const ClassificationSchema& s) {
  Json out{{"geometry", s.geometry.to_string()},
           {"field", to_json(s.field)},
           {"aut_shape",
            {{"integer_factors", s.aut_shape.integer_factors},
             {"reductive_quotient", s.aut_shape.reductive_quotient},
             {"text", s.aut_shape.to_string()}}},
           {"action", s.action},
           {"torsor_set", s.torsor_set},
           {"torsor_set_description", s.torsor_set_description},
           {"stabilizer_rule", s.stabilizer_rule},
           {"obstruction", {{"group", s.obstruction_group}, {"vanishes", s.obstruction_vanishes}}},
           {"surjective", s.surjective},
           {"torsors", nullptr}};
  if (s.torsors) {
    Json list = Json::array();
    for (const auto& t : *s.torsors) list.push_back(to_json(t));
    out["torsors"] = list;
  }
  return out;
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(row);
  return out;
}

Json to_json(const CongruenceResult& r) {
  static const char* names[] = {"found", "absent_certified", "unknown_beyond_radius"};
  Json out{{"status", names[static_cast<int>(r.status)]}, {"certificate", r.certificate}, {"transform", nullptr}};
  if (r.transform) out["transform"] = to_json(*r.transform);
  return out;
}

Json to_json(const K1Distinction& d) {
  return {{"torsion_first", {d.torsion_first.first, d.torsion_first.second}},
          {"torsion_second", {d.torsion_second.first, d.torsion_second.second}},
          {"explanation", d.explanation}};
}

// ----------------------------------------------------------------- parse

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<std::int64_t>())));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InvalidArgument("expected a rational as an integer or a fraction string, got " + j.dump());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw InvalidArgument("expected an integer, got " + j.dump());
}

Place place_from_json(const Json& j) {
  if (j.is_string()) return Place::parse(j.get<std::string>());
  if (j.is_number_integer()) return Place::finite(integer_from_json(j));
  throw InvalidArgument("expected a place (\"inf\" or a prime), got " + j.dump());
}

FieldSpec field_from_json(const Json& j) {
  if (!j.is_string()) throw InvalidArgument("field must be a string such as \"rationals\" or \"padic:3\"");
  return FieldSpec::parse(j.get<std::string>());
}

BrauerClass brauer_from_json(const Json& j, const std::optional<FieldSpec>& fallback) {
  if (!j.is_object()) throw InvalidArgument("a Brauer class must be a JSON object");
  if (j.contains("invariants")) {
    require_object(j, "Brauer class", {"field", "invariants"}, {"invariants"});
    std::optional<FieldSpec> k = j.contains("field") ? std::optional(field_from_json(j["field"])) : fallback;
    if (!k) throw InvalidArgument("Brauer class needs a field");
    if (fallback && !(*fallback == *k))
      throw InvalidArgument("Brauer class over " + k->to_string() + " but field " + fallback->to_string());
    BrauerClass::InvariantMap inv;
    for (const auto& item : require_array(j["invariants"], "invariants")) {
      if (!item.is_array() || item.size() != 3)
        throw InvalidArgument("an invariant entry is [place, numerator, denominator]");
      Place v = place_from_json(item[0]);
      Integer den = integer_from_json(item[2]);
      if (den <= 0) throw InvalidArgument("invariant denominators must be positive");
      Rational value(integer_from_json(item[1]), den);
      value.canonicalize();
      if (!inv.emplace(v, value).second) throw InvalidArgument("place " + v.to_string() + " listed twice");
    }
    return BrauerClass::from_invariants(*k, inv);
  }
  if (!fallback) throw InvalidArgument("Brauer class needs a field");
  BrauerClass::InvariantMap inv;
  for (const auto& [key, value] : j.items()) {
    Place v = Place::parse(key);
    if (!inv.emplace(v, rational_from_json(value)).second)
      throw InvalidArgument("place " + v.to_string() + " listed twice");
  }
  return BrauerClass::from_invariants(*fallback, inv);
}

QuadraticForm form_from_json(const Json& j, const std::optional<FieldSpec>& fallback) {
  std::optional<FieldSpec> k = fallback;
  const Json* diag = &j;
  if (j.is_object()) {
    require_object(j, "quadratic form", {"field", "diag"}, {"diag"});
    if (j.contains("field")) {
      FieldSpec given = field_from_json(j["field"]);
      if (fallback && !(*fallback == given))
        throw InvalidArgument("form over " + given.to_string() + " but field " + fallback->to_string());
      k = given;
    }
    diag = &j["diag"];
  }
  if (!k) throw InvalidArgument("quadratic form needs a field");
  std::vector<Rational> coeffs;
  for (const auto& a : require_array(*diag, "form diagonal")) coeffs.push_back(rational_from_json(a));
  return QuadraticForm(*k, std::move(coeffs));
}

TorsorDatum torsor_from_json(const Json& j, const std::optional<FieldSpec>& fallback) {
  if (!j.is_object() || !j.contains("kind")) throw InvalidArgument("torsor must be an object with a 'kind'");
  const Json& kind = j["kind"];
  if (kind == "brauer") {
    require_object(j, "torsor", {"kind", "class"}, {"class"});
    return brauer_from_json(j["class"], fallback);
  }
  if (kind == "form") {
    require_object(j, "torsor", {"kind", "form"}, {"form"});
    return form_from_json(j["form"], fallback);
  }
  throw InvalidArgument("torsor kind must be \"brauer\" or \"form\"");
}

TwistPoint twist_point_from_json(const Json& j) {
  require_object(j, "twist point", {"geometry", "torsor", "twist"}, {"geometry", "torsor", "twist"});
  if (!j["geometry"].is_string()) throw InvalidArgument("geometry must be a string");
  Geometry g = Geometry::parse(j["geometry"].get<std::string>());
  TorsorDatum torsor = torsor_from_json(j["torsor"], std::nullopt);
  BrauerClass twist = brauer_from_json(j["twist"], torsor_field(torsor));
  return TwistPoint::make(g, torsor, twist);
}

IntMatrix matrix_from_json(const Json& j) {
  IntMatrix m;
  for (const auto& row : require_array(j, "matrix")) {
    std::vector<std::int64_t> r;
    for (const auto& x : require_array(row, "matrix row")) r.push_back(int64_from_json(x, "matrix entry"));
    m.push_back(std::move(r));
  }
  if (m.empty()) throw InvalidArgument("matrix is empty");
  for (const auto& row : m)
    if (row.size() != m.size()) throw InvalidArgument("matrix is not square");
  return m;
}

std::vector<std::vector<Rational>> rational_matrix_from_json(const Json& j) {
  std::vector<std::vector<Rational>> m;
  for (const auto& row : require_array(j, "matrix")) {
    std::vector<Rational> r;
    for (const auto& x : require_array(row, "matrix row")) r.push_back(rational_from_json(x));
    m.push_back(std::move(r));
  }
  return m;
}

Species species_from_json(const Json& j) {
  require_object(j, "species", {"vertices", "arrows"}, {"vertices"});
  std::vector<std::int64_t> dims;
  for (const auto& v : require_array(j["vertices"], "vertices")) {
    require_object(v, "vertex", {"label_dim"}, {});
    dims.push_back(v.contains("label_dim") ? int64_from_json(v["label_dim"], "label_dim") : 1);
  }
  std::vector<SpeciesArrow> arrows;
  if (j.contains("arrows")) {
    for (const auto& a : require_array(j["arrows"], "arrows")) {
      require_object(a, "arrow", {"src", "dst", "dim"}, {"src", "dst"});
      arrows.push_back({index_from_json(a["src"], "src"), index_from_json(a["dst"], "dst"),
                        a.contains("dim") ? int64_from_json(a["dim"], "dim") : 1});
    }
  }
  return Species(std::move(dims), std::move(arrows));
}

Quaternion quaternion_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw InvalidArgument("a quaternion is an array [a, b, c, d]");
  return Quaternion{rational_from_json(j[0]), rational_from_json(j[1]), rational_from_json(j[2]),
                    rational_from_json(j[3])};
}

BrauerClass parse_class_text(std::string_view text, const std::optional<FieldSpec>& field) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw InvalidArgument("a class is written {place: value, ...}, got '" + std::string(text) + "'");
  if (text.find('"') != std::string_view::npos) return brauer_from_json(parse_json(text), field);
  if (!field) throw InvalidArgument("a class needs a field (--field)");
  BrauerClass::InvariantMap inv;
  std::string_view body = trim(text.substr(1, text.size() - 2));
  while (!body.empty()) {
    auto comma = body.find(',');
    std::string_view entry = trim(body.substr(0, comma));
    auto colon = entry.find(':');
    if (colon == std::string_view::npos) throw InvalidArgument("class entry '" + std::string(entry) + "' lacks ':'");
    Place v = Place::parse(trim(entry.substr(0, colon)));
    if (!inv.emplace(v, parse_rational(trim(entry.substr(colon + 1)))).second)
      throw InvalidArgument("place " + v.to_string() + " listed twice");
    if (comma == std::string_view::npos) break;
    body = trim(body.substr(comma + 1));
    if (body.empty()) throw InvalidArgument("trailing comma in class");
  }
  return BrauerClass::from_invariants(*field, inv);
}

}  // namespace twistbr::json_io
