#pragma once

// Twisted Brauer sets of genus-0 curves, Severi-Brauer varieties, smooth
// quadrics and the noncommutative Severi-Brauer schemes of the generalized
// Kronecker quiver. A twist point is a torsor class (which twisted form of
// the variety) together with a Brauer class modulo the stabilizer of that
// torsor under the tensor action of Br(k).

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "twistbr/brauer.hpp"
#include "twistbr/quadform.hpp"

namespace twistbr {

enum class GeometryKind { genus0, severi_brauer, quadric_odd, quadric_even, nc_projective };

/// genus0:         P^1
/// severi_brauer:  P^(n-1), torsors are degree-n central simple algebras
/// quadric_odd:    quadric hypersurface in P^(2n), forms of rank 2n+1
/// quadric_even:   quadric hypersurface in P^(2n-1), forms of rank 2n
/// nc_projective:  representations of the Kronecker quiver with n arrows
class Geometry {
 public:
  static Geometry genus0() { return Geometry(GeometryKind::genus0, 1); }
  /// n >= 1.
  static Geometry make(GeometryKind kind, unsigned n);
  /// "genus0", "severi-brauer:<n>", "quadric-odd:<n>", "quadric-even:<n>",
  /// "nc-projective:<n>". Curves of higher genus ("genus1", "genus:<g>")
  /// raise Unsupported.
  static Geometry parse(std::string_view text);

  GeometryKind kind() const noexcept { return kind_; }
  unsigned n() const noexcept { return n_; }
  bool is_quadric() const noexcept {
    return kind_ == GeometryKind::quadric_odd || kind_ == GeometryKind::quadric_even;
  }
  /// Rank of the defining form (quadrics only).
  std::size_t form_rank() const;
  /// Torsor classes are killed by this integer (Brauer-class torsors only).
  unsigned torsor_period_bound() const;

  std::string to_string() const;
  friend bool operator==(const Geometry&, const Geometry&) = default;

 private:
  Geometry(GeometryKind kind, unsigned n) : kind_(kind), n_(n) {}
  GeometryKind kind_;
  unsigned n_;
};

/// Brauer class of the torsor algebra, or the form cutting out the quadric.
using TorsorDatum = std::variant<BrauerClass, QuadraticForm>;

const FieldSpec& torsor_field(const TorsorDatum& t);
std::string torsor_to_string(const TorsorDatum& t);

class TwistPoint {
 public:
  /// Validates the torsor against the geometry and reduces the data:
  /// forms become their canonical similarity representative and the twist
  /// becomes the least element of its coset modulo the stabilizer.
  static TwistPoint make(const Geometry& g, const TorsorDatum& torsor, const BrauerClass& twist);

  const Geometry& geometry() const noexcept { return geometry_; }
  const TorsorDatum& torsor() const noexcept { return torsor_; }
  const BrauerClass& twist() const noexcept { return twist_; }
  const FieldSpec& field() const noexcept { return twist_.field(); }

  std::string to_string() const;
  friend bool operator==(const TwistPoint&, const TwistPoint&) = default;

 private:
  TwistPoint(Geometry g, TorsorDatum torsor, BrauerClass twist)
      : geometry_(g), torsor_(std::move(torsor)), twist_(std::move(twist)) {}

  Geometry geometry_;
  TorsorDatum torsor_;
  BrauerClass twist_;
};

struct AutShape {
  unsigned integer_factors = 2;  // shift and line-bundle twists
  std::string reductive_quotient;  // "PGL2", "PGL<n>" or "PSO(q)"
  std::string to_string() const;  // "Z x (Z x| PGL2)"
  friend bool operator==(const AutShape&, const AutShape&) = default;
};

struct ClassificationSchema {
  Geometry geometry;
  FieldSpec field;
  AutShape aut_shape;
  std::string action;              // how Br(k) acts on twist points
  std::string torsor_set;          // "H1(k,PGL2)", "H1(k,PGL<n>)", "H1(k,PSO(q))"
  std::string torsor_set_description;
  std::string stabilizer_rule;     // "amitsur-cyclic", "always-trivial", "clifford-cyclic"
  std::string obstruction_group = "H3(k,Gm)";
  bool obstruction_vanishes = true;
  bool surjective = true;
  /// Complete torsor list over R, F_q and Q_p; absent over Q.
  std::optional<std::vector<TorsorDatum>> torsors;
};

ClassificationSchema schema(const Geometry& g, const FieldSpec& k);
/// Checks the geometry-dependent fields of s against the fixed table.
bool schema_consistent(const ClassificationSchema& s);

/// ind(D (x) k(Y)) for the quadric Y = {p = 0}:
///   rank 2n+1:  gcd(ind D, 2^(n-1) ind(D + [C_0(p)]))
///   rank 2n:    gcd(ind D, 2^(n-2) ind(D + [C(p)])), n >= 2
Integer index_reduction(const BrauerClass& d, const QuadraticForm& p);

/// The full stabilizer subgroup of Br(k) at the torsor (always finite),
/// sorted. A torsor form is used as given: for quadric surfaces the
/// Clifford class changes by (lambda, d) under scaling by lambda.
std::vector<BrauerClass> stabilizer_group(const Geometry& g, const TorsorDatum& torsor);
/// stabilizer_group intersected with the window; k must be the torsor's
/// field.
std::vector<BrauerClass> stabilizer(const Geometry& g, const TorsorDatum& torsor, const FieldSpec& k,
                                    const EnumerationWindow& window);

TwistPoint act(const BrauerClass& alpha, const TwistPoint& t);
/// Geometry and field must agree.
bool same_twist(const TwistPoint& a, const TwistPoint& b);

/// Torsor forms of a quadric geometry up to similarity, built from window
/// coefficients (all square classes over R, F_q, Q_p; +-products of the
/// window's finite primes over Q), canonical and sorted.
std::vector<QuadraticForm> enumerate_torsor_forms(const Geometry& g, const FieldSpec& k,
                                                  const EnumerationWindow& window);

/// "complete: ..." over R and F_q, "window: ..." over Q_p and Q. The
/// window must be valid for k.
std::string describe_window(const FieldSpec& k, const EnumerationWindow& window);

struct EnumeratedTwist {
  std::size_t orbit = 0;
  TwistPoint point;
};

struct TwistEnumeration {
  std::vector<EnumeratedTwist> points;  // grouped by orbit, twists ascending inside an orbit
  std::size_t orbit_count = 0;
  bool window_relative = false;  // true over Q and over Q_p (torsion bound)
  std::string window_label;
};

TwistEnumeration enumerate_twists(const Geometry& g, const FieldSpec& k, const EnumerationWindow& window);

/// <1, -a, -b> for a quaternion class (a, b): the conic whose function field
/// splits exactly the multiples of the class.
QuadraticForm conic_form(const BrauerClass& quaternion);

struct K1Distinction {
  std::pair<int, int> torsion_first;
  std::pair<int, int> torsion_second;
  std::string explanation;
};

/// Over R for genus0 only: the points decompose into two factor algebras
/// (twist and twist + torsor class), each R or H up to Morita equivalence;
/// the orders of the torsion in their K_1 tell distinct points apart.
/// Nothing for equal points or other geometries and fields.
std::optional<K1Distinction> k1_distinguisher(const TwistPoint& a, const TwistPoint& b);

}  // namespace twistbr
