#pragma once

// Br(k) for k in {R, F_q, Q_p, Q}, realized as finite-support vectors of
// local invariants in Q/Z.

#include <compare>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "twistbr/numfield.hpp"

namespace twistbr {

class BrauerClass {
 public:
  using InvariantMap = std::map<Place, Rational>;

  static BrauerClass zero(const FieldSpec& k);

  /// Reduces every value into [0, 1), drops zeros, then validates against
  /// the field: R carries only the real place with value 0 or 1/2, F_q
  /// carries nothing, Q_p only its own place, and over Q the real value is
  /// 0 or 1/2 and the invariants sum to 0 mod 1.
  static BrauerClass from_invariants(const FieldSpec& k, const InvariantMap& invariants);

  const FieldSpec& field() const noexcept { return field_; }
  const InvariantMap& invariants() const noexcept { return invariants_; }
  Rational invariant(const Place& v) const;
  bool is_zero() const noexcept { return invariants_.empty(); }

  std::string to_string() const;

  friend bool operator==(const BrauerClass& a, const BrauerClass& b) {
    return a.field_ == b.field_ && a.invariants_ == b.invariants_;
  }
  /// Lexicographic on the dense invariant vector over the sorted places.
  friend std::strong_ordering operator<=>(const BrauerClass& a, const BrauerClass& b);

 private:
  BrauerClass(FieldSpec field, InvariantMap invariants)
      : field_(std::move(field)), invariants_(std::move(invariants)) {}

  FieldSpec field_;
  InvariantMap invariants_;
};

/// Class of the quaternion algebra (a, b)_k.
BrauerClass quaternion_class(const Rational& a, const Rational& b, const FieldSpec& k);

BrauerClass tensor(const BrauerClass& x, const BrauerClass& y);
BrauerClass inverse(const BrauerClass& x);
/// n * x in the group law (n may be negative).
BrauerClass multiple(const BrauerClass& x, const Integer& n);

/// Order of x in Br(k).
Integer period(const BrauerClass& x);
/// Schur index. Over R, F_q and Q_p this is the period; over Q it is the
/// lcm of the local indices, which again equals the period
/// (Albert-Brauer-Hasse-Noether).
Integer index(const BrauerClass& x);

/// All x with m x = 0, restricted to support in `support` over Q, in
/// lexicographic order.
std::vector<BrauerClass> enumerate_torsion(const FieldSpec& k, const Integer& m,
                                           const std::vector<Place>& support);

/// Finite slice of Br(k) used wherever Br(k) is enumerated. Over R and F_q
/// the whole group is finite and the window is ignored; Q_p needs a torsion
/// bound and Q needs both a torsion bound and a support set.
struct EnumerationWindow {
  std::optional<Integer> torsion_bound;
  std::vector<Place> support;

  /// Throws InvalidArgument when k needs window data that is missing.
  void validate_for(const FieldSpec& k) const;
  bool is_relevant_for(const FieldSpec& k) const;
  bool contains(const BrauerClass& x) const;
};

/// The window slice of Br(k) as a list (a subgroup), lexicographic order.
std::vector<BrauerClass> window_classes(const FieldSpec& k, const EnumerationWindow& window);

/// The cyclic subgroup generated by x (finite: x has finite period).
std::vector<BrauerClass> cyclic_subgroup(const BrauerClass& x);

/// Some (a, b) with quaternion_class(a, b, k) == x, searching squarefree
/// |a|, |b| <= bound over Q. Returns nothing when x is not 2-torsion or
/// the search fails.
std::optional<std::pair<Rational, Rational>> quaternion_presentation(const BrauerClass& x,
                                                                     long bound = 200);

}  // namespace twistbr
