#include "twistbr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "twistbr/error.hpp"
#include "twistbr/json_io.hpp"

namespace twistbr::cli {

namespace {

using json_io::Json;

struct Globals {
  std::string field;
  std::string torsion_bound;
  std::vector<std::string> support;
};

class Context {
 public:
  Context(const Globals& g, std::istream& in) : globals_(g), in_(in) {}

  std::optional<FieldSpec> maybe_field() const {
    if (globals_.field.empty()) return std::nullopt;
    return FieldSpec::parse(globals_.field);
  }

  FieldSpec field() const {
    auto k = maybe_field();
    if (!k) throw InvalidArgument("--field is required for this command");
    return *k;
  }

  EnumerationWindow window() const {
    EnumerationWindow w;
    if (!globals_.torsion_bound.empty()) w.torsion_bound = parse_integer(globals_.torsion_bound);
    for (const auto& s : globals_.support) w.support.push_back(Place::parse(s));
    std::sort(w.support.begin(), w.support.end());
    w.support.erase(std::unique(w.support.begin(), w.support.end()), w.support.end());
    return w;
  }

  /// Inline text, "@path" for a file, or "-" for stdin.
  std::string payload(const std::string& value) const {
    if (value == "-") return std::string(std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>());
    if (!value.empty() && value.front() == '@') {
      std::ifstream file(value.substr(1));
      if (!file) throw InvalidArgument("cannot read payload file '" + value.substr(1) + "'");
      return std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
    }
    return value;
  }

  Json json_payload(const std::string& value) const { return json_io::parse_json(payload(value)); }

  BrauerClass brauer(const std::string& value) const {
    return json_io::parse_class_text(payload(value), maybe_field());
  }

  QuadraticForm form(const std::string& value) const {
    return json_io::form_from_json(json_payload(value), maybe_field());
  }

 private:
  const Globals& globals_;
  std::istream& in_;
};

Json class_list(const std::vector<BrauerClass>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(json_io::to_json(x));
  return out;
}

std::string require(const std::string& value, const char* flag) {
  if (value.empty()) throw InvalidArgument(std::string(flag) + " is required");
  return value;
}

// Torsor from --class (Brauer torsor) or --form (quadric torsor).
TorsorDatum torsor_option(const Context& ctx, const Geometry& g, const std::string& cls, const std::string& form) {
  if (g.is_quadric()) {
    if (!cls.empty()) throw InvalidArgument(g.to_string() + " is twisted by a form: pass --form, not --class");
    return ctx.form(require(form, "--form"));
  }
  if (!form.empty()) throw InvalidArgument(g.to_string() + " is twisted by a Brauer class: pass --class, not --form");
  return ctx.brauer(require(cls, "--class"));
}

// Independent membership check: D fixes the point iff its index drops to 1
// over the function field of the quadric (or of the conic of the torsor).
std::optional<bool> certify_stabilizer(const Geometry& g, const TorsorDatum& torsor,
                                       const std::vector<BrauerClass>& stab) {
  std::optional<QuadraticForm> form;
  if (g.is_quadric())
    form = std::get<QuadraticForm>(torsor);
  else if (g.kind() == GeometryKind::genus0 && torsor_field(torsor).kind() != FieldKind::finite_field)
    form = conic_form(std::get<BrauerClass>(torsor));
  if (!form) return std::nullopt;
  return std::all_of(stab.begin(), stab.end(), [&](const BrauerClass& d) { return index_reduction(d, *form) == 1; });
}

constexpr const char* kGlobalOptionsHelp =
    "Global options (accepted before or after the subcommand):\n"
    "  --field TEXT          Ground field: reals, rationals, finite:<q>, padic:<p>\n"
    "  --torsion-bound INT   Enumeration window: classes killed by this integer\n"
    "  --support TEXT        Enumeration window over Q: places (inf, primes), comma separated\n"
    "Payload options take inline text, @path to read a file, or - to read stdin.";

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

void emit_error(std::ostream& err, const char* kind, const std::string& message) {
  Json e{{"error", {{"kind", kind}, {"message", message}}}};
  err << e.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Globals globals;
  CLI::App app{"Twisted Brauer sets: classification, stabilizers, index reduction, quadratic form and quiver "
               "invariants.",
               "twistbr"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--field", globals.field, "Ground field: reals, rationals, finite:<q>, padic:<p>");
  app.add_option("--torsion-bound", globals.torsion_bound, "Enumeration window: classes killed by this integer");
  app.add_option("--support", globals.support, "Enumeration window over Q: places (inf, primes), comma separated")
      ->delimiter(',');

  // shared option storage
  std::string geometry, cls, cls2, form, form2, over, gram, species, e1, e2, quaternion, value, point1, point2, twist,
      a, b;
  unsigned omega = 0, proj_n = 0, bound = 2;
  bool split = false;

  auto* classify = app.add_subcommand("classify", "Enumerate twist points of a geometry grouped into Br(k)-orbits");
  classify->add_option("--geometry", geometry, "genus0, severi-brauer:<n>, quadric-odd:<n>, quadric-even:<n>, nc-projective:<n>")
      ->required();

  auto* stabilizer_cmd = app.add_subcommand("stabilizer", "Subgroup of Br(k) fixing the twist points over a torsor");
  stabilizer_cmd->add_option("--geometry", geometry, "Geometry tag")->required();
  stabilizer_cmd->add_option("--class", cls, "Torsor class for genus0, severi-brauer, nc-projective");
  stabilizer_cmd->add_option("--form", form, "Torsor form (JSON coefficient array) for quadrics");

  auto* orbit_cmd = app.add_subcommand("orbit", "Br(k)-orbit of one twist point inside the window");
  orbit_cmd->add_option("--geometry", geometry, "Geometry tag")->required();
  orbit_cmd->add_option("--class", cls, "Torsor class for genus0, severi-brauer, nc-projective");
  orbit_cmd->add_option("--form", form, "Torsor form (JSON coefficient array) for quadrics");
  orbit_cmd->add_option("--twist", twist, "Twist class of the starting point (default 0)");

  auto* index_cmd = app.add_subcommand("index-reduction", "Index of a class over the function field of a quadric");
  index_cmd->add_option("--form", form, "Form defining the quadric (JSON coefficient array)")->required();
  index_cmd->add_option("--class", cls, "Brauer class, e.g. {inf:1/2, 2:1/2}")->required();

  auto* form_cmd = app.add_subcommand("form", "Quadratic form invariants");
  form_cmd->require_subcommand(1);
  auto* f_inv = form_cmd->add_subcommand("invariants", "Rank, discriminant, Hasse invariants, canonical forms");
  f_inv->add_option("--form", form, "Diagonal form (JSON coefficient array)")->required();
  auto* f_diag = form_cmd->add_subcommand("diagonalize", "Diagonalize a symmetric Gram matrix");
  f_diag->add_option("--gram", gram, "Symmetric matrix as JSON rows")->required();
  auto* f_eq = form_cmd->add_subcommand("equivalent", "Isometry test");
  f_eq->add_option("--form", form, "First form")->required();
  f_eq->add_option("--form2", form2, "Second form")->required();
  f_eq->add_option("--over", over, "Extension field to test over (default: --field)");
  auto* f_sim = form_cmd->add_subcommand("similar", "Similarity test with a similarity factor");
  f_sim->add_option("--form", form, "First form")->required();
  f_sim->add_option("--form2", form2, "Second form")->required();
  f_sim->add_option("--over", over, "Extension field to test over (default: --field)");
  auto* f_iso = form_cmd->add_subcommand("isotropic", "Isotropy test");
  f_iso->add_option("--form", form, "Diagonal form")->required();
  f_iso->add_option("--over", over, "Extension field to test over (default: --field)");

  auto* brauer_cmd = app.add_subcommand("brauer", "Brauer group arithmetic");
  brauer_cmd->require_subcommand(1);
  auto* b_quat = brauer_cmd->add_subcommand("quaternion", "Class of the quaternion algebra (a, b)");
  b_quat->add_option("--a", a, "First slot")->required();
  b_quat->add_option("--b", b, "Second slot")->required();
  auto* b_enum = brauer_cmd->add_subcommand("enumerate", "Classes in the enumeration window");
  auto* b_period = brauer_cmd->add_subcommand("period", "Order of a class");
  b_period->add_option("--class", cls, "Brauer class")->required();
  auto* b_index = brauer_cmd->add_subcommand("index", "Schur index of a class");
  b_index->add_option("--class", cls, "Brauer class")->required();
  auto* b_tensor = brauer_cmd->add_subcommand("tensor", "Sum of two classes");
  b_tensor->add_option("--class", cls, "First class")->required();
  b_tensor->add_option("--class2", cls2, "Second class")->required();
  auto* b_inverse = brauer_cmd->add_subcommand("inverse", "Opposite class");
  b_inverse->add_option("--class", cls, "Brauer class")->required();

  auto* quiver_cmd = app.add_subcommand("quiver", "Quiver and species invariants");
  quiver_cmd->require_subcommand(1);
  auto* q_euler = quiver_cmd->add_subcommand("euler", "Euler form in the projective basis");
  q_euler->add_option("--omega", omega, "Kronecker quiver with this many arrows");
  q_euler->add_option("--species", species, "Species as JSON {vertices, arrows}");
  auto* q_cartan = quiver_cmd->add_subcommand("cartan", "Cartan matrix");
  q_cartan->add_option("--omega", omega, "Kronecker quiver with this many arrows");
  q_cartan->add_option("--species", species, "Species as JSON {vertices, arrows}");
  auto* q_proj = quiver_cmd->add_subcommand("projective-space", "Euler form of O, O(1), ..., O(n) on P^n");
  q_proj->add_option("--n", proj_n, "Dimension n >= 1")->required();
  auto* q_cong = quiver_cmd->add_subcommand("congruent", "Unimodular congruence search between Euler forms");
  q_cong->add_option("--e1", e1, "First matrix (JSON rows)")->required();
  q_cong->add_option("--e2", e2, "Second matrix (JSON rows)")->required();
  q_cong->add_option("--bound", bound, "Search radius for entries of P (default 2)");
  auto* q_nrd = quiver_cmd->add_subcommand("reduced-norm", "Reduced norm of a + bi + cj + dk in H");
  q_nrd->add_option("--quaternion", quaternion, "JSON array [a, b, c, d]")->required();
  auto* q_image = quiver_cmd->add_subcommand("norm-image", "Is a value a reduced norm from M_2(R) or H");
  q_image->add_option("--value", value, "Nonzero rational")->required();
  q_image->add_flag("--split", split, "Use M_2(R) instead of H");
  auto* q_k1 = quiver_cmd->add_subcommand("k1-distinguish", "K_1 torsion witness separating two real genus0 points");
  q_k1->add_option("--point1", point1, "Twist point JSON {geometry, torsor, twist}")->required();
  q_k1->add_option("--point2", point2, "Twist point JSON {geometry, torsor, twist}")->required();

  auto* schema_cmd = app.add_subcommand("schema", "Classification schema of a geometry over a field");
  schema_cmd->add_option("--geometry", geometry, "Geometry tag")->required();

  std::function<void(CLI::App*)> add_global_footer = [&](CLI::App* cmd) {
    for (auto* sub : cmd->get_subcommands([](CLI::App*) { return true; })) {
      sub->footer(kGlobalOptionsHelp);
      add_global_footer(sub);
    }
  };
  add_global_footer(&app);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what());
    return 2;
  }

  const Context ctx(globals, in);
  auto over_field = [&] { return over.empty() ? ctx.field() : FieldSpec::parse(over); };
  auto kronecker_or_species = [&] {
    if ((omega > 0) == !species.empty()) throw InvalidArgument("pass exactly one of --omega and --species");
    return omega > 0 ? Species::from_quiver(Quiver::kronecker(omega))
                     : json_io::species_from_json(ctx.json_payload(species));
  };

  try {
    Json result;
    if (*classify) {
      result = json_io::to_json(enumerate_twists(Geometry::parse(geometry), ctx.field(), ctx.window()));
    } else if (*stabilizer_cmd) {
      const Geometry g = Geometry::parse(geometry);
      const FieldSpec k = ctx.field();
      const EnumerationWindow w = ctx.window();
      const TorsorDatum torsor = torsor_option(ctx, g, cls, form);
      const auto stab = stabilizer(g, torsor, k, w);
      result = {{"stabilizer", class_list(stab)}, {"window", describe_window(k, w)}, {"certified", nullptr}};
      TorsorDatum canonical = TwistPoint::make(g, torsor, BrauerClass::zero(k)).torsor();
      if (auto c = certify_stabilizer(g, canonical, stab)) result["certified"] = *c;
    } else if (*orbit_cmd) {
      const Geometry g = Geometry::parse(geometry);
      const FieldSpec k = ctx.field();
      const EnumerationWindow w = ctx.window();
      w.validate_for(k);
      const TwistPoint start =
          TwistPoint::make(g, torsor_option(ctx, g, cls, form), twist.empty() ? BrauerClass::zero(k) : ctx.brauer(twist));
      std::vector<TwistPoint> orbit;
      for (const auto& alpha : window_classes(k, w)) {
        TwistPoint p = act(alpha, start);
        if (std::find(orbit.begin(), orbit.end(), p) == orbit.end()) orbit.push_back(std::move(p));
      }
      std::sort(orbit.begin(), orbit.end(), [](const TwistPoint& x, const TwistPoint& y) { return x.twist() < y.twist(); });
      Json points = Json::array();
      for (const auto& p : orbit) points.push_back(json_io::to_json(p));
      result = {{"point", json_io::to_json(start)},
                {"orbit", points},
                {"stabilizer", class_list(stabilizer(g, start.torsor(), k, w))},
                {"window", describe_window(k, w)}};
    } else if (*index_cmd) {
      const QuadraticForm p = ctx.form(form);
      result = {{"index", json_io::to_json(index_reduction(ctx.brauer(cls), p))}};
    } else if (*f_inv) {
      const QuadraticForm q = ctx.form(form);
      result = {{"invariants", json_io::to_json(invariants(q))},
                {"signed_discriminant", discriminant(q).rep().get_str()},
                {"isotropic", is_isotropic(q)},
                {"canonical_form", json_io::to_json(canonical_form(q))},
                {"canonical_similarity_form", json_io::to_json(canonical_similarity_form(q))},
                {"clifford_class", json_io::to_json(clifford_invariant(q))}};
    } else if (*f_diag) {
      const GramMatrix g(ctx.field(), json_io::rational_matrix_from_json(ctx.json_payload(gram)));
      result = {{"form", json_io::to_json(diagonalize(g))}};
    } else if (*f_eq) {
      result = {{"equivalent", equivalent(ctx.form(form), ctx.form(form2), over_field())}};
    } else if (*f_sim) {
      auto factor = similar(ctx.form(form), ctx.form(form2), over_field());
      result = {{"similar", factor.has_value()}, {"factor", nullptr}};
      if (factor) result["factor"] = json_io::to_json(*factor);
    } else if (*f_iso) {
      result = {{"isotropic", is_isotropic(ctx.form(form), over_field())}};
    } else if (*b_quat) {
      result = json_io::to_json(quaternion_class(parse_rational(a), parse_rational(b), ctx.field()));
    } else if (*b_enum) {
      result = class_list(window_classes(ctx.field(), ctx.window()));
    } else if (*b_period) {
      result = {{"period", json_io::to_json(period(ctx.brauer(cls)))}};
    } else if (*b_index) {
      result = {{"index", json_io::to_json(index(ctx.brauer(cls)))}};
    } else if (*b_tensor) {
      result = json_io::to_json(tensor(ctx.brauer(cls), ctx.brauer(cls2)));
    } else if (*b_inverse) {
      result = json_io::to_json(inverse(ctx.brauer(cls)));
    } else if (*q_euler) {
      result = json_io::to_json(euler_form(kronecker_or_species()));
    } else if (*q_cartan) {
      result = json_io::to_json(cartan_matrix(kronecker_or_species()));
    } else if (*q_proj) {
      result = json_io::to_json(euler_form_projective_space(proj_n));
    } else if (*q_cong) {
      result = json_io::to_json(congruent_unimodular(json_io::matrix_from_json(ctx.json_payload(e1)),
                                                     json_io::matrix_from_json(ctx.json_payload(e2)), bound));
    } else if (*q_nrd) {
      result = {{"reduced_norm", json_io::to_json(reduced_norm(json_io::quaternion_from_json(ctx.json_payload(quaternion))))}};
    } else if (*q_image) {
      result = {{"contains", reduced_norm_image_contains(parse_rational(value), split)}};
    } else if (*q_k1) {
      auto d = k1_distinguisher(json_io::twist_point_from_json(ctx.json_payload(point1)),
                                json_io::twist_point_from_json(ctx.json_payload(point2)));
      result = {{"distinction", nullptr}};
      if (d) result["distinction"] = json_io::to_json(*d);
    } else if (*schema_cmd) {
      result = json_io::to_json(schema(Geometry::parse(geometry), ctx.field()));
    }
    emit(out, result);
    return 0;
  } catch (const Unsupported& e) {
    emit_error(err, "unsupported", e.what());
    return 2;
  } catch (const InvalidArgument& e) {
    emit_error(err, "validation", e.what());
    return 2;
  } catch (const std::exception& e) {
    emit_error(err, "internal", e.what());
    return 1;
  }
}

}  // namespace twistbr::cli
