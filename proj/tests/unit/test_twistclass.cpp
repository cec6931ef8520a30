#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "twistbr/error.hpp"
#include "twistbr/twistclass.hpp"

using namespace twistbr;

namespace {

const FieldSpec QQ = FieldSpec::rationals();
const FieldSpec RR = FieldSpec::reals();
const BrauerClass H = quaternion_class(-1, -1, RR);
const Geometry P1 = Geometry::genus0();

QuadraticForm form(std::initializer_list<long> coeffs, const FieldSpec& k = QQ) {
  std::vector<Rational> d;
  for (long c : coeffs) d.emplace_back(c);
  return QuadraticForm(k, d);
}

EnumerationWindow window(unsigned m, std::initializer_list<long> primes, bool real = true) {
  EnumerationWindow w;
  w.torsion_bound = Integer(m);
  if (real) w.support.push_back(Place::real());
  for (long p : primes) w.support.push_back(Place::finite(p));
  return w;
}

bool contains(const std::vector<BrauerClass>& xs, const BrauerClass& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

struct Case {
  Geometry g;
  FieldSpec k;
  EnumerationWindow w;
};

std::vector<Case> enumeration_cases() {
  return {
      {P1, RR, {}},
      {P1, FieldSpec::finite_field(5), {}},
      {P1, FieldSpec::padic(3), window(2, {}, false)},
      {P1, FieldSpec::padic(2), window(4, {}, false)},
      {P1, QQ, window(2, {2, 3})},
      {P1, QQ, window(2, {2, 3, 5})},
      {Geometry::make(GeometryKind::severi_brauer, 3), FieldSpec::padic(5), window(3, {}, false)},
      {Geometry::make(GeometryKind::severi_brauer, 3), QQ, window(3, {2, 3, 5}, false)},
      {Geometry::make(GeometryKind::severi_brauer, 2), QQ, window(2, {2, 3})},
      {Geometry::make(GeometryKind::nc_projective, 2), RR, {}},
      {Geometry::make(GeometryKind::quadric_odd, 1), RR, {}},
      {Geometry::make(GeometryKind::quadric_odd, 1), FieldSpec::padic(3), window(2, {}, false)},
      {Geometry::make(GeometryKind::quadric_odd, 2), FieldSpec::padic(2), window(2, {}, false)},
      {Geometry::make(GeometryKind::quadric_even, 2), RR, {}},
      {Geometry::make(GeometryKind::quadric_even, 2), FieldSpec::padic(5), window(2, {}, false)},
      {Geometry::make(GeometryKind::quadric_even, 2), QQ, window(2, {2, 3})},
      {Geometry::make(GeometryKind::quadric_even, 3), FieldSpec::finite_field(7), {}},
  };
}

}  // namespace

TEST_CASE("geometry parsing") {
  CHECK(Geometry::parse("genus0") == P1);
  CHECK(Geometry::parse("severi-brauer:3") == Geometry::make(GeometryKind::severi_brauer, 3));
  CHECK(Geometry::parse("quadric-odd:2").form_rank() == 5);
  CHECK(Geometry::parse("quadric-even:2").form_rank() == 4);
  CHECK(Geometry::parse("nc-projective:4").torsor_period_bound() == 4);
  CHECK_THROWS_AS(Geometry::parse("genus1"), Unsupported);
  CHECK_THROWS_AS(Geometry::parse("genus:2"), Unsupported);
  CHECK_THROWS_AS(Geometry::parse("quadric-odd:0"), InvalidArgument);
  CHECK_THROWS_AS(Geometry::parse("torus"), InvalidArgument);
}

TEST_CASE("schema examples") {
  auto s = schema(P1, RR);
  CHECK(s.aut_shape.to_string() == "Z x (Z x| PGL2)");
  CHECK(s.stabilizer_rule == "amitsur-cyclic");
  REQUIRE(s.torsors);
  REQUIRE(s.torsors->size() == 2);
  CHECK(std::get<BrauerClass>((*s.torsors)[0]).is_zero());
  CHECK(std::get<BrauerClass>((*s.torsors)[1]) == H);
  for (unsigned n : {2u, 3u, 7u})
    CHECK(schema(Geometry::make(GeometryKind::quadric_odd, n), QQ).stabilizer_rule == "always-trivial");
  CHECK(schema(Geometry::make(GeometryKind::quadric_odd, 1), QQ).stabilizer_rule == "clifford-cyclic");
  CHECK(schema(Geometry::make(GeometryKind::quadric_even, 2), QQ).stabilizer_rule == "clifford-cyclic");
  CHECK(schema(Geometry::make(GeometryKind::quadric_even, 3), QQ).stabilizer_rule == "always-trivial");
  for (unsigned n : {1u, 2u, 3u, 4u})
    for (const auto& k : {RR, FieldSpec::padic(3), FieldSpec::finite_field(9), QQ}) {
      auto nc = schema(Geometry::make(GeometryKind::nc_projective, n), k);
      auto sb = schema(Geometry::make(GeometryKind::severi_brauer, n), k);
      CHECK(nc.torsor_set == sb.torsor_set);
      CHECK(nc.torsors.has_value() == sb.torsors.has_value());
      if (nc.torsors) CHECK(*nc.torsors == *sb.torsors);
      CHECK(schema_consistent(nc));
      CHECK(schema_consistent(sb));
    }
  CHECK(schema(Geometry::make(GeometryKind::quadric_odd, 1), RR).aut_shape.reductive_quotient == "PSO(q)");
  CHECK(schema(Geometry::make(GeometryKind::severi_brauer, 3), RR).aut_shape.reductive_quotient == "PGL3");
  auto bad = schema(P1, RR);
  bad.stabilizer_rule = "always-trivial";
  CHECK_FALSE(schema_consistent(bad));
  CHECK_THROWS_AS(schema(Geometry::make(GeometryKind::quadric_even, 1), QQ), Unsupported);
  CHECK_THROWS_AS(schema(Geometry::make(GeometryKind::quadric_odd, 2), FieldSpec::finite_field(9)), Unsupported);
  CHECK_THROWS_AS(schema(Geometry::make(GeometryKind::quadric_odd, 2), FieldSpec::finite_field(8)), Unsupported);
}

TEST_CASE("index reduction examples") {
  auto q5 = form({1, 1, 1, 1, -1});
  for (auto p : {q5, form({1, 2, 3}), form({1, 1, 1, 1}), form({2, 3, 5, 7, 11, 13})})
    CHECK(index_reduction(BrauerClass::zero(QQ), p) == 1);
  CHECK(index_reduction(quaternion_class(-1, -1, QQ), q5) == 2);
  auto p4 = form({1, 1, 1, 1});
  auto c = full_clifford_class(p4);
  REQUIRE_FALSE(c.is_zero());
  CHECK(index_reduction(c, p4) == 1);
  CHECK_THROWS_AS(index_reduction(c, form({1, 1})), InvalidArgument);
  CHECK_THROWS_AS(index_reduction(H, form({1, 1, 1})), InvalidArgument);
}

TEST_CASE("stabilizer examples") {
  auto s = stabilizer(P1, H, RR, {});
  REQUIRE(s.size() == 2);
  CHECK(contains(s, BrauerClass::zero(RR)));
  CHECK(contains(s, H));
  auto w = window(2, {2, 3, 5});
  auto q5 = form({1, 1, 1, 1, -1});
  auto odd = stabilizer(Geometry::make(GeometryKind::quadric_odd, 2), q5, QQ, w);
  REQUIRE(odd.size() == 1);
  CHECK(odd[0].is_zero());
  auto p4 = form({1, 1, 1, 1});
  auto even = stabilizer(Geometry::make(GeometryKind::quadric_even, 2), p4, QQ, w);
  auto c = full_clifford_class(p4);
  REQUIRE(even.size() == 2);
  CHECK(contains(even, c));
  for (const auto& d : even) CHECK(index_reduction(d, p4) == 1);
  CHECK_THROWS_AS(stabilizer(P1, H, QQ, w), InvalidArgument);
  CHECK_THROWS_AS(stabilizer(P1, quaternion_class(-1, -1, QQ), QQ, {}), InvalidArgument);
  CHECK_THROWS_AS(stabilizer(Geometry::make(GeometryKind::quadric_even, 2), form({1, 1, 1}), QQ, w),
                  InvalidArgument);
}

TEST_CASE("action examples") {
  auto mod_p1 = TwistPoint::make(P1, BrauerClass::zero(RR), BrauerClass::zero(RR));
  auto mod_c = TwistPoint::make(P1, H, BrauerClass::zero(RR));
  CHECK(act(BrauerClass::zero(RR), mod_p1) == mod_p1);
  auto twisted = act(H, mod_p1);
  CHECK(twisted.twist() == H);
  CHECK(std::get<BrauerClass>(twisted.torsor()).is_zero());
  CHECK(act(H, mod_c) == mod_c);
  CHECK(same_twist(mod_p1, mod_p1));
  CHECK(same_twist(mod_c, TwistPoint::make(P1, H, H)));
  CHECK_FALSE(same_twist(mod_p1, twisted));
  CHECK_THROWS_AS(act(quaternion_class(-1, -1, QQ), mod_p1), InvalidArgument);
  CHECK_THROWS_AS(same_twist(mod_p1, TwistPoint::make(Geometry::make(GeometryKind::severi_brauer, 2),
                                                      BrauerClass::zero(RR), BrauerClass::zero(RR))),
                  InvalidArgument);
}

TEST_CASE("enumeration examples") {
  auto real = enumerate_twists(P1, RR, {});
  REQUIRE(real.points.size() == 3);
  CHECK(real.orbit_count == 2);
  CHECK_FALSE(real.window_relative);
  CHECK(real.points[0].orbit == 0);
  CHECK(real.points[1].orbit == 0);
  CHECK(real.points[2].orbit == 1);
  CHECK(std::get<BrauerClass>(real.points[2].point.torsor()) == H);
  for (long q : {3L, 5L, 9L, 25L, 8L}) CHECK(enumerate_twists(P1, FieldSpec::finite_field(q), {}).points.size() == 1);
  for (long p : {2L, 3L, 7L}) {
    auto local = enumerate_twists(P1, FieldSpec::padic(p), window(2, {}, false));
    CHECK(local.points.size() == 3);
    CHECK(local.orbit_count == 2);
    CHECK(local.window_relative);
  }
  auto rational = enumerate_twists(P1, QQ, window(2, {2, 3}));
  CHECK(rational.window_relative);
  CHECK(rational.window_label.find("window") != std::string::npos);
  CHECK_THROWS_AS(enumerate_twists(P1, QQ, {}), InvalidArgument);
}

TEST_CASE("conic points over finite fields") {
  // every rank-3 form over a small F_p has a nontrivial zero
  for (long p : {3L, 5L, 7L})
    for (long a = 1; a < p; ++a)
      for (long b = 1; b < p; ++b) {
        bool found = false;
        for (long x = 0; x < p && !found; ++x)
          for (long y = 0; y < p && !found; ++y)
            for (long z = 0; z < p && !found; ++z)
              found = (x || y || z) && (x * x + a * y * y + b * z * z) % p == 0;
        CHECK(found);
        CHECK(is_isotropic(form({1, a, b}, FieldSpec::finite_field(p))));
      }
}

TEST_CASE("action axioms") {
  std::mt19937_64 rng(13);
  for (const auto& c : enumeration_cases()) {
    auto e = enumerate_twists(c.g, c.k, c.w);
    auto classes = window_classes(c.k, c.w);
    for (int i = 0; i < 40; ++i) {
      const auto& t = e.points[rng() % e.points.size()].point;
      const auto& a = classes[rng() % classes.size()];
      const auto& b = classes[rng() % classes.size()];
      CHECK(act(BrauerClass::zero(c.k), t) == t);
      CHECK(act(a, act(b, t)) == act(tensor(a, b), t));
      CHECK(act(a, t).torsor() == t.torsor());
    }
  }
}

TEST_CASE("orbit-stabilizer consistency") {
  for (const auto& c : enumeration_cases()) {
    INFO(c.g.to_string(), " over ", c.k.to_string());
    auto e = enumerate_twists(c.g, c.k, c.w);
    const std::size_t group = window_classes(c.k, c.w).size();
    std::map<std::size_t, std::vector<TwistPoint>> orbits;
    for (const auto& p : e.points) orbits[p.orbit].push_back(p.point);
    CHECK(orbits.size() == e.orbit_count);
    for (const auto& [id, pts] : orbits) {
      auto stab = stabilizer(c.g, pts.front().torsor(), c.k, c.w);
      CHECK(pts.size() * stab.size() == group);
      for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1].twist() < pts[i].twist());
      // each orbit is closed under the action and has one torsor
      for (const auto& p : pts) {
        CHECK(p.torsor() == pts.front().torsor());
        for (const auto& a : window_classes(c.k, c.w)) {
          auto moved = act(a, p);
          if (c.w.contains(moved.twist())) CHECK(std::find(pts.begin(), pts.end(), moved) != pts.end());
        }
      }
    }
    // distinct points are pairwise inequivalent
    for (std::size_t i = 0; i < e.points.size(); ++i)
      for (std::size_t j = i + 1; j < e.points.size(); ++j)
        CHECK_FALSE(same_twist(e.points[i].point, e.points[j].point));
  }
}

TEST_CASE("stabilizer certificate in both directions") {
  const auto w = window(2, {2, 3, 5});
  const auto classes = window_classes(QQ, w);
  for (const auto& g : {Geometry::make(GeometryKind::quadric_odd, 2), Geometry::make(GeometryKind::quadric_even, 2),
                        Geometry::make(GeometryKind::quadric_odd, 1), Geometry::make(GeometryKind::quadric_even, 3)}) {
    for (const auto& p : enumerate_torsor_forms(g, QQ, window(2, {2, 3}))) {
      auto stab = stabilizer(g, p, QQ, w);
      for (const auto& d : classes) {
        INFO(g.to_string(), " ", p.to_string(), " ", d.to_string());
        CHECK(contains(stab, d) == (index_reduction(d, p) == 1));
      }
    }
  }
}

TEST_CASE("amitsur stabilizer agrees with the conic") {
  const auto w = window(2, {2, 3, 5});
  const auto classes = window_classes(QQ, w);
  for (const auto& a : enumerate_torsion(QQ, 2, w.support)) {
    auto conic = conic_form(a);
    CHECK(conic.rank() == 3);
    CHECK(is_isotropic(conic) == a.is_zero());
    CHECK(even_clifford_class(conic) == a);
    auto stab = stabilizer(P1, a, QQ, w);
    for (const auto& alpha : classes) CHECK(contains(stab, alpha) == (index_reduction(alpha, conic) == 1));
  }
}

TEST_CASE("enumeration hits every torsor of the schema") {
  for (const auto& c : enumeration_cases()) {
    auto e = enumerate_twists(c.g, c.k, c.w);
    auto s = schema(c.g, c.k);
    CHECK(s.surjective);
    std::vector<TorsorDatum> hit;
    for (const auto& p : e.points)
      if (std::find(hit.begin(), hit.end(), p.point.torsor()) == hit.end()) hit.push_back(p.point.torsor());
    if (s.torsors) {
      CHECK(hit.size() == s.torsors->size());
      for (const auto& t : *s.torsors) CHECK(std::find(hit.begin(), hit.end(), t) != hit.end());
    } else if (!c.g.is_quadric()) {
      std::vector<Place> support = c.w.support;
      CHECK(hit.size() == enumerate_torsion(c.k, c.g.torsor_period_bound(), support).size());
    }
  }
}

TEST_CASE("nc-projective and severi-brauer enumerations match") {
  for (unsigned n : {1u, 2u, 3u, 4u}) {
    const std::vector<std::pair<FieldSpec, EnumerationWindow>> fields{
        {RR, {}},
        {FieldSpec::finite_field(7), {}},
        {FieldSpec::padic(3), window(n, {}, false)},
        {QQ, window(n, {2, 3})}};
    for (const auto& [k, w] : fields) {
      auto nc = enumerate_twists(Geometry::make(GeometryKind::nc_projective, n), k, w);
      auto sb = enumerate_twists(Geometry::make(GeometryKind::severi_brauer, n), k, w);
      REQUIRE(nc.points.size() == sb.points.size());
      CHECK(nc.orbit_count == sb.orbit_count);
      for (std::size_t i = 0; i < nc.points.size(); ++i) {
        CHECK(nc.points[i].orbit == sb.points[i].orbit);
        CHECK(nc.points[i].point.torsor() == sb.points[i].point.torsor());
        CHECK(nc.points[i].point.twist() == sb.points[i].point.twist());
      }
    }
  }
}

TEST_CASE("k1 distinguisher") {
  auto mod_p1 = TwistPoint::make(P1, BrauerClass::zero(RR), BrauerClass::zero(RR));
  auto mod_h = TwistPoint::make(P1, BrauerClass::zero(RR), H);
  auto mod_c = TwistPoint::make(P1, H, BrauerClass::zero(RR));
  auto d1 = k1_distinguisher(mod_p1, mod_h);
  REQUIRE(d1);
  CHECK(d1->torsion_first == std::pair(2, 2));
  CHECK(d1->torsion_second == std::pair(1, 1));
  auto d2 = k1_distinguisher(mod_p1, mod_c);
  REQUIRE(d2);
  CHECK(d2->torsion_first == std::pair(2, 2));
  CHECK(d2->torsion_second == std::pair(2, 1));
  CHECK_FALSE(k1_distinguisher(mod_c, mod_c));
  auto rational = TwistPoint::make(P1, BrauerClass::zero(QQ), BrauerClass::zero(QQ));
  CHECK_FALSE(k1_distinguisher(rational, act(quaternion_class(-1, -1, QQ), rational)));
}

TEST_CASE("unsupported combinations") {
  CHECK_THROWS_AS(enumerate_twists(Geometry::make(GeometryKind::quadric_even, 1), RR, {}), Unsupported);
  CHECK_THROWS_AS(enumerate_twists(Geometry::make(GeometryKind::quadric_odd, 1), FieldSpec::finite_field(25), {}),
                  Unsupported);
  CHECK_THROWS_AS(TwistPoint::make(P1, quaternion_class(-1, -1, QQ), H), InvalidArgument);
  auto sb2 = Geometry::make(GeometryKind::severi_brauer, 2);
  auto third = BrauerClass::from_invariants(QQ, {{Place::finite(2), Rational(1, 3)}, {Place::finite(3), Rational(2, 3)}});
  CHECK_THROWS_AS(TwistPoint::make(sb2, third, BrauerClass::zero(QQ)), InvalidArgument);
}
