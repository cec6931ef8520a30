#include "twistbr/twistclass.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <set>
#include <stdexcept>

#include "twistbr/error.hpp"
#include "twistbr/quiver.hpp"

namespace twistbr {

namespace {

constexpr unsigned kNoLimit = std::numeric_limits<unsigned>::max();

struct SchemaRow {
  GeometryKind kind;
  unsigned n_min, n_max;
  const char* quotient;  // "<n>" is replaced by n
  const char* torsor_set;
  const char* rule;
};

constexpr std::array<SchemaRow, 7> kSchemaTable{{
    {GeometryKind::genus0, 1, 1, "PGL2", "H1(k,PGL2)", "amitsur-cyclic"},
    {GeometryKind::severi_brauer, 1, kNoLimit, "PGL<n>", "H1(k,PGL<n>)", "amitsur-cyclic"},
    {GeometryKind::nc_projective, 1, kNoLimit, "PGL<n>", "H1(k,PGL<n>)", "amitsur-cyclic"},
    {GeometryKind::quadric_odd, 1, 1, "PSO(q)", "H1(k,PSO(q))", "clifford-cyclic"},
    {GeometryKind::quadric_odd, 2, kNoLimit, "PSO(q)", "H1(k,PSO(q))", "always-trivial"},
    {GeometryKind::quadric_even, 2, 2, "PSO(q)", "H1(k,PSO(q))", "clifford-cyclic"},
    {GeometryKind::quadric_even, 3, kNoLimit, "PSO(q)", "H1(k,PSO(q))", "always-trivial"},
}};

std::string substitute_n(std::string text, unsigned n) {
  auto pos = text.find("<n>");
  if (pos != std::string::npos) text.replace(pos, 3, std::to_string(n));
  return text;
}

const SchemaRow& schema_row(const Geometry& g) {
  for (const auto& row : kSchemaTable)
    if (row.kind == g.kind() && g.n() >= row.n_min && g.n() <= row.n_max) return row;
  throw Unsupported("no classification is available for " + g.to_string());
}

// Rejects geometry/field pairs outside the supported range.
void require_supported(const Geometry& g, const FieldSpec& k) {
  schema_row(g);
  if (!g.is_quadric()) return;
  if (k.is_characteristic_two()) throw Unsupported("quadrics need characteristic != 2");
  if (k.kind() == FieldKind::finite_field && k.extension_degree() % 2 == 0)
    throw Unsupported("quadric twists over " + k.to_string() +
                      " are not supported: the nonsquare class has no prime-field representative");
}

bool entry_less(const Rational& a, const Rational& b) {
  Rational aa = abs(a), ab = abs(b);
  if (aa != ab) return aa < ab;
  return a > b;
}

struct FormLess {
  bool operator()(const QuadraticForm& a, const QuadraticForm& b) const {
    return std::lexicographical_compare(a.diag().begin(), a.diag().end(), b.diag().begin(), b.diag().end(),
                                        entry_less);
  }
};

// Checks the torsor against the geometry; forms keep their given diagonal.
const TorsorDatum& checked_torsor(const Geometry& g, const TorsorDatum& torsor) {
  const FieldSpec& k = torsor_field(torsor);
  require_supported(g, k);
  if (g.is_quadric()) {
    const auto* form = std::get_if<QuadraticForm>(&torsor);
    if (!form) throw InvalidArgument(g.to_string() + " is twisted by a quadratic form, not a Brauer class");
    if (form->rank() != g.form_rank())
      throw InvalidArgument(g.to_string() + " needs a form of rank " + std::to_string(g.form_rank()) + ", got " +
                            std::to_string(form->rank()));
    return torsor;
  }
  const auto* cls = std::get_if<BrauerClass>(&torsor);
  if (!cls) throw InvalidArgument(g.to_string() + " is twisted by a Brauer class, not a quadratic form");
  if (!multiple(*cls, g.torsor_period_bound()).is_zero())
    throw InvalidArgument("torsor class " + cls->to_string() + " has period not dividing " +
                          std::to_string(g.torsor_period_bound()));
  return torsor;
}

TorsorDatum canonical_torsor(const Geometry& g, const TorsorDatum& torsor) {
  checked_torsor(g, torsor);
  if (const auto* form = std::get_if<QuadraticForm>(&torsor)) return canonical_similarity_form(*form);
  return torsor;
}

std::vector<BrauerClass> stabilizer_of_validated(const Geometry& g, const TorsorDatum& torsor) {
  const FieldSpec& k = torsor_field(torsor);
  const std::string_view rule = schema_row(g).rule;
  if (rule == "amitsur-cyclic") return cyclic_subgroup(std::get<BrauerClass>(torsor));
  if (rule == "clifford-cyclic") return cyclic_subgroup(clifford_invariant(std::get<QuadraticForm>(torsor)));
  return {BrauerClass::zero(k)};
}

std::vector<Rational> window_coefficients(const FieldSpec& k, const EnumerationWindow& window) {
  std::vector<Rational> out;
  switch (k.kind()) {
    case FieldKind::reals: return {1, -1};
    case FieldKind::finite_field:
    case FieldKind::padic:
      for (const auto& r : square_class_representatives(k)) out.emplace_back(r);
      break;
    case FieldKind::rationals: {
      if (window.support.empty())
        throw InvalidArgument("torsor forms over Q are enumerated from the window's support; none given");
      std::vector<Integer> products{1};
      for (const auto& v : window.support) {
        if (v.is_real()) continue;
        std::size_t n = products.size();
        for (std::size_t i = 0; i < n; ++i) products.push_back(products[i] * v.prime());
      }
      for (const auto& x : products) {
        out.emplace_back(x);
        out.emplace_back(-x);
      }
      break;
    }
  }
  std::sort(out.begin(), out.end(), entry_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int k1_torsion_order(const BrauerClass& factor) {
  // K_1 of a division algebra D over R is the image of the reduced norm;
  // its torsion is {+-1} exactly when -1 is a reduced norm
  return reduced_norm_image_contains(-1, factor.is_zero()) ? 2 : 1;
}

}  // namespace

// --------------------------------------------------------------- geometry

Geometry Geometry::make(GeometryKind kind, unsigned n) {
  if (kind == GeometryKind::genus0) return genus0();
  if (n < 1) throw InvalidArgument("geometry parameter n must be >= 1");
  return Geometry(kind, n);
}

Geometry Geometry::parse(std::string_view text) {
  if (text == "genus0" || text == "genus:0" || text == "P1") return genus0();
  auto higher_genus = [&] {
    return Unsupported("curves of genus >= 1 are not supported: their stabilizers are relative Brauer groups "
                       "of genus-1 function fields, which are not computed here");
  };
  if (text.starts_with("genus")) {
    std::string_view rest = text.substr(5);
    if (!rest.empty() && rest.front() == ':') rest.remove_prefix(1);
    if (!rest.empty() && std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw higher_genus();
  }
  auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    std::string_view head = text.substr(0, colon), arg = text.substr(colon + 1);
    if (arg.empty() || arg.size() > 6 ||
        !std::all_of(arg.begin(), arg.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw InvalidArgument("bad geometry parameter in '" + std::string(text) + "'");
    unsigned n = static_cast<unsigned>(std::stoul(std::string(arg)));
    if (head == "severi-brauer") return make(GeometryKind::severi_brauer, n);
    if (head == "quadric-odd") return make(GeometryKind::quadric_odd, n);
    if (head == "quadric-even") return make(GeometryKind::quadric_even, n);
    if (head == "nc-projective") return make(GeometryKind::nc_projective, n);
  }
  throw InvalidArgument("unknown geometry '" + std::string(text) +
                        "' (expected genus0, severi-brauer:<n>, quadric-odd:<n>, quadric-even:<n> or nc-projective:<n>)");
}

std::size_t Geometry::form_rank() const {
  switch (kind_) {
    case GeometryKind::quadric_odd: return 2 * std::size_t{n_} + 1;
    case GeometryKind::quadric_even: return 2 * std::size_t{n_};
    default: throw std::logic_error(to_string() + " is not a quadric");
  }
}

unsigned Geometry::torsor_period_bound() const {
  switch (kind_) {
    case GeometryKind::genus0: return 2;
    case GeometryKind::severi_brauer:
    case GeometryKind::nc_projective: return n_;
    default: throw std::logic_error(to_string() + " has form torsors");
  }
}

std::string Geometry::to_string() const {
  switch (kind_) {
    case GeometryKind::genus0: return "genus0";
    case GeometryKind::severi_brauer: return "severi-brauer:" + std::to_string(n_);
    case GeometryKind::quadric_odd: return "quadric-odd:" + std::to_string(n_);
    case GeometryKind::quadric_even: return "quadric-even:" + std::to_string(n_);
    case GeometryKind::nc_projective: return "nc-projective:" + std::to_string(n_);
  }
  return {};
}

const FieldSpec& torsor_field(const TorsorDatum& t) {
  return std::visit([](const auto& x) -> const FieldSpec& { return x.field(); }, t);
}

std::string torsor_to_string(const TorsorDatum& t) {
  return std::visit([](const auto& x) { return x.to_string(); }, t);
}

std::string describe_window(const FieldSpec& k, const EnumerationWindow& window) {
  switch (k.kind()) {
    case FieldKind::reals: return "complete: Br(R) = Z/2";
    case FieldKind::finite_field: return "complete: Br(" + k.to_string() + ") = 0";
    case FieldKind::padic: return "window: " + window.torsion_bound->get_str() + "-torsion of Br(" + k.to_string() + ")";
    case FieldKind::rationals: break;
  }
  std::string places;
  for (const auto& v : window.support) places += (places.empty() ? "" : ", ") + v.to_string();
  return "window: " + window.torsion_bound->get_str() + "-torsion of Br(Q) supported on {" + places + "}";
}

// ----------------------------------------------------------- twist points

TwistPoint TwistPoint::make(const Geometry& g, const TorsorDatum& torsor, const BrauerClass& twist) {
  if (!(torsor_field(torsor) == twist.field()))
    throw InvalidArgument("torsor over " + torsor_field(torsor).to_string() + " but twist over " +
                          twist.field().to_string());
  TorsorDatum canonical = canonical_torsor(g, torsor);
  BrauerClass least = twist;
  for (const auto& s : stabilizer_of_validated(g, canonical)) least = std::min(least, tensor(twist, s));
  return TwistPoint(g, std::move(canonical), std::move(least));
}

std::string TwistPoint::to_string() const {
  return geometry_.to_string() + "[" + torsor_to_string(torsor_) + ", " + twist_.to_string() + "]";
}

std::string AutShape::to_string() const {
  std::string out;
  for (unsigned i = 0; i + 1 < integer_factors; ++i) out += "Z x ";
  return out + "(Z x| " + reductive_quotient + ")";
}

ClassificationSchema schema(const Geometry& g, const FieldSpec& k) {
  require_supported(g, k);
  const SchemaRow& row = schema_row(g);
  ClassificationSchema s{g, k, AutShape{2, substitute_n(row.quotient, g.n())}, {}, {}, {}, row.rule,
                         "H3(k,Gm)", true, true, std::nullopt};
  s.action = "alpha . (torsor, beta) = (torsor, alpha + beta), beta modulo the stabilizer of the torsor";
  s.torsor_set = substitute_n(row.torsor_set, g.n());
  switch (g.kind()) {
    case GeometryKind::genus0: s.torsor_set_description = "quaternion algebra classes (conics)"; break;
    case GeometryKind::severi_brauer:
    case GeometryKind::nc_projective:
      s.torsor_set_description = "Brauer classes of degree-" + std::to_string(g.n()) + " central simple algebras";
      break;
    case GeometryKind::quadric_odd:
    case GeometryKind::quadric_even:
      s.torsor_set_description =
          "similarity classes of nondegenerate forms of rank " + std::to_string(g.form_rank());
      break;
  }
  if (k.kind() != FieldKind::rationals) {
    std::vector<TorsorDatum> torsors;
    if (g.is_quadric()) {
      for (auto& f : enumerate_torsor_forms(g, k, {})) torsors.emplace_back(std::move(f));
    } else {
      for (auto& c : enumerate_torsion(k, g.torsor_period_bound(), {})) torsors.emplace_back(std::move(c));
    }
    s.torsors = std::move(torsors);
  }
  return s;
}

bool schema_consistent(const ClassificationSchema& s) {
  const SchemaRow* row = nullptr;
  for (const auto& r : kSchemaTable)
    if (r.kind == s.geometry.kind() && s.geometry.n() >= r.n_min && s.geometry.n() <= r.n_max) row = &r;
  if (!row) return false;
  return s.aut_shape.integer_factors == 2 && s.aut_shape.reductive_quotient == substitute_n(row->quotient, s.geometry.n()) &&
         s.torsor_set == substitute_n(row->torsor_set, s.geometry.n()) && s.stabilizer_rule == row->rule &&
         s.obstruction_group == "H3(k,Gm)" && s.obstruction_vanishes && s.surjective;
}

Integer index_reduction(const BrauerClass& d, const QuadraticForm& p) {
  if (!(d.field() == p.field()))
    throw InvalidArgument("class over " + d.field().to_string() + " but form over " + p.field().to_string());
  const std::size_t r = p.rank();
  if (r < 3) throw InvalidArgument("index reduction needs a form of rank >= 3, got rank " + std::to_string(r));
  if (r % 2 == 0 && r < 4)
    throw InvalidArgument("index reduction for even rank needs rank >= 4, got rank " + std::to_string(r));
  const unsigned long exponent = r % 2 ? (r - 1) / 2 - 1 : r / 2 - 2;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, exponent);
  return gcd(index(d), Integer(scale * index(tensor(d, clifford_invariant(p)))));
}

std::vector<BrauerClass> stabilizer_group(const Geometry& g, const TorsorDatum& torsor) {
  return stabilizer_of_validated(g, checked_torsor(g, torsor));
}

std::vector<BrauerClass> stabilizer(const Geometry& g, const TorsorDatum& torsor, const FieldSpec& k,
                                    const EnumerationWindow& window) {
  if (!(torsor_field(torsor) == k))
    throw InvalidArgument("torsor over " + torsor_field(torsor).to_string() + " but field " + k.to_string());
  window.validate_for(k);
  std::vector<BrauerClass> out;
  for (auto& s : stabilizer_group(g, torsor))
    if (window.contains(s)) out.push_back(std::move(s));
  return out;
}

TwistPoint act(const BrauerClass& alpha, const TwistPoint& t) {
  if (!(alpha.field() == t.field()))
    throw InvalidArgument("cannot act by a class over " + alpha.field().to_string() + " on a point over " +
                          t.field().to_string());
  return TwistPoint::make(t.geometry(), t.torsor(), tensor(alpha, t.twist()));
}

bool same_twist(const TwistPoint& a, const TwistPoint& b) {
  if (!(a.geometry() == b.geometry()))
    throw InvalidArgument("points of different geometries: " + a.geometry().to_string() + " and " +
                          b.geometry().to_string());
  if (!(a.field() == b.field()))
    throw InvalidArgument("points over different fields: " + a.field().to_string() + " and " +
                          b.field().to_string());
  // both are canonical: torsors are similarity representatives, twists coset minima
  return a == b;
}

std::vector<QuadraticForm> enumerate_torsor_forms(const Geometry& g, const FieldSpec& k,
                                                  const EnumerationWindow& window) {
  if (!g.is_quadric()) throw InvalidArgument(g.to_string() + " has Brauer-class torsors, not forms");
  require_supported(g, k);
  const std::vector<Rational> values = window_coefficients(k, window);
  const std::size_t r = g.form_rank();
  std::set<QuadraticForm, FormLess> found;
  std::vector<std::size_t> pick(r, 0);
  while (true) {
    std::vector<Rational> diag;
    for (auto i : pick) diag.push_back(values[i]);
    found.insert(canonical_similarity_form(QuadraticForm(k, std::move(diag))));
    // next nondecreasing index tuple
    std::size_t i = r;
    while (i > 0 && pick[i - 1] == values.size() - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < r; ++j) pick[j] = pick[i - 1];
  }
  return {found.begin(), found.end()};
}

TwistEnumeration enumerate_twists(const Geometry& g, const FieldSpec& k, const EnumerationWindow& window) {
  require_supported(g, k);
  window.validate_for(k);
  std::vector<TorsorDatum> torsors;
  if (g.is_quadric()) {
    for (auto& f : enumerate_torsor_forms(g, k, window)) torsors.emplace_back(std::move(f));
  } else {
    std::vector<Place> support = k.kind() == FieldKind::rationals ? window.support : std::vector<Place>{};
    for (auto& c : enumerate_torsion(k, g.torsor_period_bound(), support)) torsors.emplace_back(std::move(c));
  }
  const std::vector<BrauerClass> twists = window_classes(k, window);
  TwistEnumeration out;
  out.window_relative = k.kind() == FieldKind::padic || k.kind() == FieldKind::rationals;
  out.window_label = describe_window(k, window);
  for (const auto& torsor : torsors) {
    std::vector<TwistPoint> points;
    for (const auto& alpha : twists) {
      TwistPoint p = TwistPoint::make(g, torsor, alpha);
      if (std::find(points.begin(), points.end(), p) == points.end()) points.push_back(std::move(p));
    }
    std::sort(points.begin(), points.end(),
              [](const TwistPoint& a, const TwistPoint& b) { return a.twist() < b.twist(); });
    for (auto& p : points) out.points.push_back({out.orbit_count, std::move(p)});
    ++out.orbit_count;
  }
  return out;
}

QuadraticForm conic_form(const BrauerClass& quaternion) {
  auto ab = quaternion_presentation(quaternion);
  if (!ab) throw InvalidArgument("no quaternion presentation found for " + quaternion.to_string());
  return QuadraticForm(quaternion.field(), {1, -ab->first, -ab->second});
}

std::optional<K1Distinction> k1_distinguisher(const TwistPoint& a, const TwistPoint& b) {
  for (const auto* t : {&a, &b})
    if (t->geometry().kind() != GeometryKind::genus0 || t->field().kind() != FieldKind::reals) return std::nullopt;
  if (a == b) return std::nullopt;
  auto factors = [](const TwistPoint& t) {
    const auto& torsor = std::get<BrauerClass>(t.torsor());
    return std::pair<BrauerClass, BrauerClass>{t.twist(), tensor(t.twist(), torsor)};
  };
  auto name = [](const BrauerClass& c) { return c.is_zero() ? std::string("R") : std::string("H"); };
  auto [a0, a1] = factors(a);
  auto [b0, b1] = factors(b);
  K1Distinction d{{k1_torsion_order(a0), k1_torsion_order(a1)}, {k1_torsion_order(b0), k1_torsion_order(b1)}, {}};
  auto pair_text = [](std::pair<int, int> p) {
    return "(" + std::to_string(p.first) + ", " + std::to_string(p.second) + ")";
  };
  d.explanation = "factor algebras (" + name(a0) + ", " + name(a1) + ") vs (" + name(b0) + ", " + name(b1) +
                  "); torsion orders of K_1 " + pair_text(d.torsion_first) + " vs " + pair_text(d.torsion_second) +
                  ": -1 is a reduced norm from M_2(R) but not from H";
  return d;
}

}  // namespace twistbr
