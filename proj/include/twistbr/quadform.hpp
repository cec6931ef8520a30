#pragma once

// Nondegenerate quadratic forms over R, Q_p, Q and odd F_q: classical
// invariants, isotropy and equivalence through the local-global principle,
// similarity, and the Brauer classes of the even and full Clifford algebras.

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "twistbr/brauer.hpp"
#include "twistbr/numfield.hpp"

namespace twistbr {

/// Diagonal form <a_1, ..., a_r>. Coefficients are kept exactly as given.
class QuadraticForm {
 public:
  /// Rejects rank 0, zero coefficients, characteristic 2, and
  /// coefficients that are not elements of the field.
  QuadraticForm(FieldSpec field, std::vector<Rational> diag);

  const FieldSpec& field() const noexcept { return field_; }
  std::span<const Rational> diag() const noexcept { return diag_; }
  std::size_t rank() const noexcept { return diag_.size(); }

  QuadraticForm scaled(const Rational& lambda) const;
  QuadraticForm orthogonal_sum(const QuadraticForm& other) const;
  /// Same coefficients read over k: identity, Q -> R, Q -> Q_p, or Q -> F_q
  /// when every coefficient is a unit at the characteristic.
  QuadraticForm over(const FieldSpec& k) const;

  std::string to_string() const;

  friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
    return a.field_ == b.field_ && a.diag_ == b.diag_;
  }

 private:
  FieldSpec field_;
  std::vector<Rational> diag_;
};

class GramMatrix {
 public:
  /// Square, symmetric, entries in the field, characteristic != 2.
  /// Degeneracy is detected by diagonalize().
  GramMatrix(FieldSpec field, std::vector<std::vector<Rational>> entries);

  const FieldSpec& field() const noexcept { return field_; }
  const std::vector<std::vector<Rational>>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  FieldSpec field_;
  std::vector<std::vector<Rational>> entries_;
};

struct Signature {
  unsigned positive = 0;
  unsigned negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Complete isometry invariants of a form over its field.
///  disc:  unsigned discriminant prod(a_i) as a square-class representative
///  hasse: places with Hasse-Witt invariant prod_{i<j} (a_i, a_j)_v = -1;
///         finite places only over Q (the real one follows from the
///         signature), the field's own place over Q_p, empty otherwise
struct FormInvariants {
  FieldSpec field;
  std::size_t rank = 0;
  Integer disc = 1;
  Signature signature;  // R and Q only
  std::set<Integer> hasse_minus;

  int hasse_at(const Place& v) const;
  friend bool operator==(const FormInvariants&, const FormInvariants&) = default;
};

FormInvariants invariants(const QuadraticForm& q);

QuadraticForm diagonalize(const GramMatrix& g);

/// Signed discriminant (-1)^(r(r-1)/2) prod(a_i).
SquareClass discriminant(const QuadraticForm& q);

/// prod_{i<j} (a_i, a_j)_v. The place must belong to the field (any place
/// over Q, the real place over R, p over Q_p).
int hasse_invariant(const QuadraticForm& q, const Place& v);

/// Signature over R or Q.
Signature signature(const QuadraticForm& q);

bool is_isotropic(const QuadraticForm& q, const FieldSpec& k);
bool is_isotropic(const QuadraticForm& q);
/// q represents a (a != 0) over q's field.
bool represents(const QuadraticForm& q, const Rational& a);

bool equivalent(const QuadraticForm& q1, const QuadraticForm& q2, const FieldSpec& k);

/// Some lambda with q1 ~= lambda * q2 over k, or nothing when the forms are
/// not similar. Over R, F_q and Q_p every square class is tried. Over Q the
/// search runs over similarity_factor_window(q1, q2) first; the decision
/// itself is exact (canonical similarity representatives), and should the
/// window miss an existing factor the search continues with further primes.
std::optional<Rational> similar(const QuadraticForm& q1, const QuadraticForm& q2, const FieldSpec& k);

/// Square classes generated by -1 and the primes dividing
/// 2 * disc(q1) * disc(q2) * (all coefficients), ordered by |lambda| with
/// the positive class first.
std::vector<Integer> similarity_factor_window(const QuadraticForm& q1, const QuadraticForm& q2);

/// Lexicographically least diagonalization of q over its field with
/// square-class representative entries, ordered 1, -1, 2, -2, 3, ... over Q
/// and by the representative order elsewhere. Isometric forms share it.
QuadraticForm canonical_form(const QuadraticForm& q);
/// Canonical representative of the similarity class of q. Similar forms
/// share it.
QuadraticForm canonical_similarity_form(const QuadraticForm& q);

/// [C_0(q)] for odd rank.
BrauerClass even_clifford_class(const QuadraticForm& q);
/// [C(q)] for even rank.
BrauerClass full_clifford_class(const QuadraticForm& q);
/// Witt (Clifford) invariant: even_clifford_class for odd rank,
/// full_clifford_class for even rank.
BrauerClass clifford_invariant(const QuadraticForm& q);

/// Sum over i<j of the quaternion classes (a_i, a_j).
BrauerClass hasse_witt_class(const QuadraticForm& q);

}  // namespace twistbr
