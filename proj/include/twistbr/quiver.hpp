#pragma once

// Finite acyclic quivers and species (quivers whose vertices carry division
// algebras, recorded by their dimension over the base field): Cartan
// matrices, Euler forms on K_0, unimodular congruence of Euler forms, and
// the reduced norm of Hamilton's quaternions.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistbr/numfield.hpp"

namespace twistbr {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

struct Arrow {
  std::size_t source = 0;
  std::size_t target = 0;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

class Quiver {
 public:
  /// Vertices 0..vertex_count-1. Rejects out-of-range ends and directed
  /// cycles (loops included).
  Quiver(std::size_t vertex_count, std::vector<Arrow> arrows);

  /// Two vertices, n parallel arrows 0 -> 1.
  static Quiver kronecker(unsigned n);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }

 private:
  std::size_t vertex_count_;
  std::vector<Arrow> arrows_;
};

struct SpeciesArrow {
  std::size_t source = 0;
  std::size_t target = 0;
  std::int64_t dimension = 1;  // of the bimodule over the base field
  friend bool operator==(const SpeciesArrow&, const SpeciesArrow&) = default;
};

class Species {
 public:
  /// Dimensions >= 1, arrows in range and acyclic, each bimodule dimension
  /// divisible by the dimensions of both end algebras.
  Species(std::vector<std::int64_t> vertex_dimensions, std::vector<SpeciesArrow> arrows);

  /// Every vertex labelled by the base field, every arrow one-dimensional.
  static Species from_quiver(const Quiver& q);

  const std::vector<std::int64_t>& vertex_dimensions() const noexcept { return dims_; }
  const std::vector<SpeciesArrow>& arrows() const noexcept { return arrows_; }
  std::size_t vertex_count() const noexcept { return dims_.size(); }
  /// Vertices in a topological order (sources first, ties by index).
  std::vector<std::size_t> topological_order() const;

 private:
  std::vector<std::int64_t> dims_;
  std::vector<SpeciesArrow> arrows_;
};

/// C[i][j] = dimension over the base field of the paths from i to j, with
/// C[i][i] = d_i. Vertex order as given.
IntMatrix cartan_matrix(const Species& s);

/// Euler pairing <P_i, P_j> = dim Hom(P_i, P_j) in the basis of
/// indecomposable projectives; equals the Cartan matrix since the path
/// algebra of an acyclic species is hereditary.
IntMatrix euler_form(const Species& s);

/// Euler pairing chi(O(i), O(j)) = binom(j - i + n, n) for j >= i of the
/// exceptional collection O, O(1), ..., O(n) on P^n.
IntMatrix euler_form_projective_space(unsigned n);

/// Bareiss fraction-free determinant; throws when it exceeds 64 bits.
std::int64_t determinant(const IntMatrix& m);

enum class CongruenceStatus { found, absent_certified, unknown_beyond_radius };

struct CongruenceResult {
  CongruenceStatus status = CongruenceStatus::unknown_beyond_radius;
  std::optional<IntMatrix> transform;  // P with P^T e1 P = e2, det P = +-1
  std::string certificate;
};

/// Searches unimodular P with entries in [-bound, bound] and
/// P^T e1 P = e2. Distinct |det| certifies absence; an exhausted search
/// reports unknown_beyond_radius.
CongruenceResult congruent_unimodular(const IntMatrix& e1, const IntMatrix& e2, unsigned bound);

/// a + b i + c j + d k in Hamilton's quaternions over Q.
struct Quaternion {
  Rational a, b, c, d;
  friend Quaternion operator*(const Quaternion& x, const Quaternion& y);
  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// a^2 + b^2 + c^2 + d^2.
Rational reduced_norm(const Quaternion& x);

/// Whether v (nonzero) is a reduced norm from M_2(R) (split) or from H.
bool reduced_norm_image_contains(const Rational& v, bool split);

}  // namespace twistbr
