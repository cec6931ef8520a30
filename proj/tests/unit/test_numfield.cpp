#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "padic_oracle.hpp"
#include "twistbr/error.hpp"
#include "twistbr/numfield.hpp"

using namespace twistbr;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::vector<Place> places_for(const Rational& a, const Rational& b) {
  std::vector<Place> out{Place::real()};
  mpz_class prod = 2 * a.get_num() * a.get_den() * b.get_num() * b.get_den();
  for (long p : oracle::small_prime_divisors(prod)) out.push_back(Place::finite(p));
  return out;
}

}  // namespace

TEST_CASE("factorize") {
  CHECK(factorize(1).factors.empty());
  auto f = factorize(-12);
  CHECK(f.sign == -1);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == std::pair<Integer, unsigned>(2, 2));
  CHECK(f.factors[1] == std::pair<Integer, unsigned>(3, 1));
  auto g = factorize(9973);
  REQUIRE(g.factors.size() == 1);
  CHECK(g.factors[0].first == 9973);
  CHECK(oracle::is_small_prime(9973));
  CHECK_THROWS_AS(factorize(0), InvalidArgument);
}

TEST_CASE("factorization round-trips") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> dist(-1000000, 1000000);
  for (int i = 0; i < 500; ++i) {
    long n = dist(rng);
    if (n == 0) continue;
    auto f = factorize(n);
    CHECK(f.value() == n);
    for (std::size_t j = 1; j < f.factors.size(); ++j) CHECK(f.factors[j - 1].first < f.factors[j].first);
    for (const auto& [p, e] : f.factors) CHECK(is_prime(p));
  }
}

TEST_CASE("legendre symbol") {
  CHECK(legendre_symbol(1, 7) == 1);
  CHECK(legendre_symbol(14, 7) == 0);
  CHECK(legendre_symbol(3, 7) == -1);
  CHECK_THROWS_AS(legendre_symbol(3, 2), InvalidArgument);
  CHECK_THROWS_AS(legendre_symbol(3, 9), InvalidArgument);
  for (long p : {3L, 5L, 7L, 11L, 13L, 101L}) {
    std::set<long> squares;
    for (long x = 1; x < p; ++x) squares.insert(x * x % p);
    for (long a = -2 * p; a <= 2 * p; ++a) {
      long r = ((a % p) + p) % p;
      int expected = r == 0 ? 0 : (squares.count(r) ? 1 : -1);
      CHECK(legendre_symbol(a, p) == expected);
    }
    // multiplicative
    for (long a = 1; a < p; ++a)
      for (long b = 1; b < p; ++b)
        CHECK(legendre_symbol(a * b, p) == legendre_symbol(a, p) * legendre_symbol(b, p));
  }
}

TEST_CASE("least nonresidue") {
  CHECK(least_nonresidue(3) == 2);
  CHECK(least_nonresidue(7) == 3);
  CHECK(least_nonresidue(17) == 3);
  CHECK(least_nonresidue(23) == 5);
}

TEST_CASE("hilbert symbol examples") {
  CHECK(hilbert_symbol(-1, -1, Place::real()) == -1);
  for (long b : {-7L, -1L, 2L, 3L, 30L})
    for (const auto& v : {Place::real(), Place::finite(2), Place::finite(3), Place::finite(7)})
      CHECK(hilbert_symbol(1, b, v) == 1);
  CHECK(hilbert_symbol(-1, -1, Place::finite(2)) == -1);
  oracle::LocalIsotropyOracle o;
  CHECK(o.hilbert(-1, -1, 2) == -1);
  CHECK_THROWS_AS(hilbert_symbol(0, 3, Place::finite(3)), InvalidArgument);
}

TEST_CASE("hilbert symbol agrees with the solubility oracle") {
  oracle::LocalIsotropyOracle o;
  for (long a = -12; a <= 12; ++a)
    for (long b = -12; b <= 12; ++b) {
      if (a == 0 || b == 0) continue;
      CHECK(hilbert_symbol(a, b, Place::real()) == oracle::real_hilbert(a, b));
      for (long p : {2L, 3L, 5L, 7L, 11L}) {
        INFO("a=", a, " b=", b, " p=", p);
        CHECK(hilbert_symbol(a, b, Place::finite(p)) == o.hilbert(a, b, p));
      }
    }
  // non-integral arguments
  CHECK(hilbert_symbol(q(1, 2), q(-3, 4), Place::finite(2)) == o.hilbert(q(1, 2), q(-3, 4), 2));
  CHECK(hilbert_symbol(q(5, 9), q(3, 25), Place::finite(5)) == o.hilbert(q(5, 9), q(3, 25), 5));
}

TEST_CASE("hilbert reciprocity and bimultiplicativity") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> h(1, 10000);
  std::uniform_int_distribution<int> sign(0, 1);
  auto draw = [&] { return q(sign(rng) ? h(rng) : -h(rng), h(rng)); };
  for (int i = 0; i < 300; ++i) {
    Rational a = draw(), b = draw(), c = draw();
    int product = 1;
    for (const auto& v : places_for(a, b)) product *= hilbert_symbol(a, b, v);
    CHECK(product == 1);
    for (const auto& v : places_for(a * c, b)) {
      CHECK(hilbert_symbol(a * c, b, v) == hilbert_symbol(a, b, v) * hilbert_symbol(c, b, v));
      CHECK(hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v));
    }
  }
}

TEST_CASE("square class examples") {
  CHECK(square_class(18, FieldSpec::rationals()).rep() == 2);
  CHECK(square_class(-4, FieldSpec::reals()).rep() == -1);
  auto five = square_class(5, FieldSpec::padic(2));
  CHECK(five.rep() == 5);
  CHECK_FALSE(five.is_trivial());
  CHECK(square_class(17, FieldSpec::padic(2)).is_trivial());  // 17 = 1 mod 8
  CHECK_THROWS_AS(square_class(0, FieldSpec::rationals()), InvalidArgument);
  CHECK_THROWS_AS(square_class(q(1, 5), FieldSpec::finite_field(5)), InvalidArgument);
}

TEST_CASE("square class is invariant under squares") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> dist(-300, 300);
  const std::vector<FieldSpec> fields{FieldSpec::rationals(), FieldSpec::reals(), FieldSpec::padic(2),
                                      FieldSpec::padic(3),    FieldSpec::padic(7), FieldSpec::finite_field(11)};
  for (const auto& k : fields) {
    const auto reps = k.kind() == FieldKind::rationals ? std::vector<Integer>{} : square_class_representatives(k);
    for (int i = 0; i < 200; ++i) {
      long x = dist(rng), y = dist(rng), z = dist(rng) | 1;
      if (x == 0 || y == 0) continue;
      if (k.kind() == FieldKind::finite_field && (x % 11 == 0 || y % 11 == 0)) continue;
      Rational xr = k.kind() == FieldKind::finite_field ? Rational(x) : q(x, z);
      Rational y2 = Rational(y) * y;
      auto c = square_class(xr, k);
      CHECK(square_class(xr * y2, k) == c);
      if (k.kind() != FieldKind::rationals)
        CHECK(std::find(reps.begin(), reps.end(), c.rep()) != reps.end());
    }
  }
  CHECK(square_class_representatives(FieldSpec::padic(3)).size() == 4);
  CHECK(square_class_representatives(FieldSpec::padic(2)).size() == 8);
  CHECK(square_class_representatives(FieldSpec::reals()).size() == 2);
  CHECK(square_class_representatives(FieldSpec::finite_field(9)).size() == 1);
  CHECK(square_class_representatives(FieldSpec::finite_field(27)).size() == 2);
  CHECK_THROWS_AS(square_class_representatives(FieldSpec::rationals()), InvalidArgument);
}

TEST_CASE("p-adic square classes match the oracle") {
  // same class iff <a, -b> is isotropic
  oracle::LocalIsotropyOracle o;
  for (long p : {2L, 3L, 5L})
    for (long a = -20; a <= 20; ++a)
      for (long b = -20; b <= 20; ++b) {
        if (a == 0 || b == 0) continue;
        bool same = square_class(a, FieldSpec::padic(p)) == square_class(b, FieldSpec::padic(p));
        CHECK(same == o.isotropic({Rational(a), Rational(-b)}, p));
      }
}

TEST_CASE("field and place parsing") {
  CHECK(FieldSpec::parse("reals") == FieldSpec::reals());
  CHECK(FieldSpec::parse("Q") == FieldSpec::rationals());
  CHECK(FieldSpec::parse("padic:5") == FieldSpec::padic(5));
  CHECK(FieldSpec::parse("finite:9").extension_degree() == 2);
  CHECK(FieldSpec::parse("finite:9").prime() == 3);
  CHECK(FieldSpec::parse("finite:8").is_characteristic_two());
  CHECK_THROWS_AS(FieldSpec::parse("finite:6"), InvalidArgument);
  CHECK_THROWS_AS(FieldSpec::parse("padic:4"), InvalidArgument);
  CHECK_THROWS_AS(FieldSpec::parse("complex"), InvalidArgument);
  CHECK(Place::parse("inf").is_real());
  CHECK(Place::parse("∞").is_real());
  CHECK(Place::parse("13").prime() == 13);
  CHECK_THROWS_AS(Place::parse("15"), InvalidArgument);
  CHECK(parse_rational("-6/4") == q(-3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidArgument);
  CHECK(valuation(q(24, 5), 2) == 3);
  CHECK(valuation(q(24, 5), 5) == -1);
  CHECK(squarefree_part(q(-50, 3)) == -6);
}
