#pragma once

// Exact arithmetic over the ground fields R, F_q, Q_p and Q: factorization,
// square classes, and the local symbols at the places of Q.

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace twistbr {

using Integer = mpz_class;
using Rational = mpq_class;

enum class FieldKind { reals, finite_field, padic, rationals };

/// Ground field descriptor. Elements of every supported field are handed
/// around as exact rationals: for F_q they are read in the prime subfield,
/// for Q_p they are the rationals sitting inside Q_p.
class FieldSpec {
 public:
  static FieldSpec reals();
  static FieldSpec rationals();
  /// q must be a prime power >= 2.
  static FieldSpec finite_field(const Integer& q);
  /// p must be prime.
  static FieldSpec padic(const Integer& p);

  /// Accepts "reals", "rationals", "finite:<q>" (alias "fq:<q>") and
  /// "padic:<p>" (alias "qp:<p>").
  static FieldSpec parse(std::string_view text);

  FieldKind kind() const noexcept { return kind_; }
  /// Residue characteristic for F_q, the prime for Q_p; 0 otherwise.
  const Integer& prime() const noexcept { return prime_; }
  /// q for F_q; 0 otherwise.
  const Integer& order() const noexcept { return order_; }
  /// m with q = p^m for F_q; 0 otherwise.
  unsigned extension_degree() const noexcept { return degree_; }
  Integer characteristic() const;
  bool is_characteristic_two() const;

  std::string to_string() const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind_ == b.kind_ && a.prime_ == b.prime_ && a.order_ == b.order_;
  }

 private:
  FieldSpec(FieldKind kind, Integer prime, Integer order, unsigned degree)
      : kind_(kind), prime_(std::move(prime)), order_(std::move(order)), degree_(degree) {}

  FieldKind kind_;
  Integer prime_;
  Integer order_;
  unsigned degree_;
};

/// A place of Q: the real place, or the place of a prime p.
/// Ordered with the real place first, then primes increasing.
class Place {
 public:
  static Place real() { return Place(Integer(0)); }
  static Place finite(const Integer& p);
  /// "inf", "∞", "infinity" or a prime.
  static Place parse(std::string_view text);

  bool is_real() const noexcept { return prime_ == 0; }
  const Integer& prime() const noexcept { return prime_; }
  std::string to_string() const;

  friend bool operator==(const Place& a, const Place& b) { return a.prime_ == b.prime_; }
  friend bool operator<(const Place& a, const Place& b) { return a.prime_ < b.prime_; }

 private:
  explicit Place(Integer p) : prime_(std::move(p)) {}
  Integer prime_;
};

struct Factorization {
  int sign = 1;
  std::vector<std::pair<Integer, unsigned>> factors;  // primes strictly increasing

  Integer value() const;
};

bool is_prime(const Integer& n);
Factorization factorize(const Integer& n);
/// Distinct primes dividing the numerator or denominator of x.
std::vector<Integer> prime_support(const Rational& x);

int legendre_symbol(const Integer& a, const Integer& p);

/// Smallest positive quadratic non-residue modulo an odd prime p.
Integer least_nonresidue(const Integer& p);

/// p-adic valuation of a nonzero rational.
long valuation(const Rational& x, const Integer& p);

/// Hilbert symbol (a, b)_v for nonzero rationals; +1 or -1.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

/// Signed squarefree integer in the rational square class of x.
Integer squarefree_part(const Rational& x);

/// Canonical representative of x modulo squares in a field.
///  Q:      signed squarefree integer
///  R:      +1 / -1
///  Q_p:    p odd: one of 1, u, p, up with u the least non-residue;
///          p = 2: 2^e * w with e in {0, 1} and w in {1, 3, 5, 7}
///  F_q:    1 or the least non-residue (q odd, odd degree); 1 otherwise
class SquareClass {
 public:
  SquareClass(FieldSpec field, Integer rep) : field_(std::move(field)), rep_(std::move(rep)) {}

  const FieldSpec& field() const noexcept { return field_; }
  const Integer& rep() const noexcept { return rep_; }
  bool is_trivial() const { return rep_ == 1; }

  friend bool operator==(const SquareClass& a, const SquareClass& b) {
    return a.field_ == b.field_ && a.rep_ == b.rep_;
  }

 private:
  FieldSpec field_;
  Integer rep_;
};

SquareClass square_class(const Rational& x, const FieldSpec& k);

/// Canonical square-class representatives of k in a fixed order
/// (R, F_q and Q_p only; Q has infinitely many).
std::vector<Integer> square_class_representatives(const FieldSpec& k);

/// Rejects zero and elements that do not live in k (for F_q: denominators
/// divisible by the characteristic). Returns x unchanged.
const Rational& require_field_element(const Rational& x, const FieldSpec& k);

/// Parses "3", "-7", "1/2", "-3/4".
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

}  // namespace twistbr
