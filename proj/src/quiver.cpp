#include "twistbr/quiver.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "twistbr/error.hpp"

namespace twistbr {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw InvalidArgument("integer overflow in matrix arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw InvalidArgument("integer overflow in matrix arithmetic");
  return r;
}

// Kahn's algorithm; smallest available index first. Empty result: cyclic.
std::vector<std::size_t> topo_sort(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& [s, t] : edges) ++indegree[t];
  std::vector<std::size_t> order;
  std::vector<bool> done(n, false);
  while (order.size() < n) {
    std::size_t next = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!done[v] && indegree[v] == 0) {
        next = v;
        break;
      }
    if (next == n) return {};
    done[next] = true;
    order.push_back(next);
    for (const auto& [s, t] : edges)
      if (s == next) --indegree[t];
  }
  return order;
}

void require_square(const IntMatrix& m, const char* what) {
  for (const auto& row : m)
    if (row.size() != m.size()) throw InvalidArgument(std::string(what) + " is not a square matrix");
}

// x^T m y
std::int64_t pairing(const std::vector<std::int64_t>& x, const IntMatrix& m, const std::vector<std::int64_t>& y) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    std::int64_t row = 0;
    for (std::size_t j = 0; j < y.size(); ++j) row = checked_add(row, checked_mul(m[i][j], y[j]));
    total = checked_add(total, checked_mul(x[i], row));
  }
  return total;
}

IntMatrix transpose_times_times(const IntMatrix& p, const IntMatrix& m) {
  const std::size_t n = p.size();
  IntMatrix out(n, std::vector<std::int64_t>(n, 0));
  std::vector<std::vector<std::int64_t>> cols(n, std::vector<std::int64_t>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) cols[j][i] = p[i][j];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = pairing(cols[i], m, cols[j]);
  return out;
}

class CongruenceSearch {
 public:
  CongruenceSearch(const IntMatrix& e1, const IntMatrix& e2, unsigned bound) : e1_(e1), e2_(e2), n_(e1.size()) {
    std::vector<std::int64_t> v(n_, -static_cast<std::int64_t>(bound));
    const std::int64_t b = bound;
    while (true) {
      if (std::any_of(v.begin(), v.end(), [](std::int64_t x) { return x != 0; })) vectors_.push_back(v);
      std::size_t i = 0;
      while (i < n_ && v[i] == b) v[i++] = -b;
      if (i == n_) break;
      ++v[i];
    }
    columns_.resize(n_);
  }

  std::optional<IntMatrix> run() { return extend(0) ? std::optional<IntMatrix>(assemble()) : std::nullopt; }

 private:
  bool extend(std::size_t j) {
    if (j == n_) {
      std::int64_t d = determinant(assemble());
      return d == 1 || d == -1;
    }
    for (const auto& v : vectors_) {
      if (pairing(v, e1_, v) != e2_[j][j]) continue;
      bool ok = true;
      for (std::size_t i = 0; i < j && ok; ++i)
        ok = pairing(columns_[i], e1_, v) == e2_[i][j] && pairing(v, e1_, columns_[i]) == e2_[j][i];
      if (!ok) continue;
      columns_[j] = v;
      if (extend(j + 1)) return true;
    }
    return false;
  }

  IntMatrix assemble() const {
    IntMatrix p(n_, std::vector<std::int64_t>(n_, 0));
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < n_; ++i) p[i][j] = columns_[j][i];
    return p;
  }

  const IntMatrix& e1_;
  const IntMatrix& e2_;
  std::size_t n_;
  std::vector<std::vector<std::int64_t>> vectors_;
  std::vector<std::vector<std::int64_t>> columns_;
};

}  // namespace

Quiver::Quiver(std::size_t vertex_count, std::vector<Arrow> arrows)
    : vertex_count_(vertex_count), arrows_(std::move(arrows)) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& a : arrows_) {
    if (a.source >= vertex_count_ || a.target >= vertex_count_)
      throw InvalidArgument("arrow " + std::to_string(a.source) + " -> " + std::to_string(a.target) +
                            " leaves the vertex range");
    edges.emplace_back(a.source, a.target);
  }
  if (vertex_count_ > 0 && topo_sort(vertex_count_, edges).empty())
    throw InvalidArgument("quiver has a directed cycle; its path algebra is infinite-dimensional");
}

Quiver Quiver::kronecker(unsigned n) { return Quiver(2, std::vector<Arrow>(n, Arrow{0, 1})); }

Species::Species(std::vector<std::int64_t> vertex_dimensions, std::vector<SpeciesArrow> arrows)
    : dims_(std::move(vertex_dimensions)), arrows_(std::move(arrows)) {
  for (auto d : dims_)
    if (d < 1) throw InvalidArgument("vertex algebra dimensions must be >= 1");
  for (const auto& a : arrows_) {
    if (a.source >= dims_.size() || a.target >= dims_.size())
      throw InvalidArgument("arrow " + std::to_string(a.source) + " -> " + std::to_string(a.target) +
                            " leaves the vertex range");
    if (a.dimension < 1) throw InvalidArgument("bimodule dimensions must be >= 1");
    std::int64_t l = std::lcm(dims_[a.source], dims_[a.target]);
    if (a.dimension % l != 0)
      throw InvalidArgument("bimodule dimension " + std::to_string(a.dimension) + " on arrow " +
                            std::to_string(a.source) + " -> " + std::to_string(a.target) +
                            " is not divisible by both end dimensions");
  }
  if (!dims_.empty() && topological_order().empty())
    throw InvalidArgument("species has a directed cycle; its path algebra is infinite-dimensional");
}

Species Species::from_quiver(const Quiver& q) {
  std::vector<SpeciesArrow> arrows;
  for (const auto& a : q.arrows()) arrows.push_back({a.source, a.target, 1});
  return Species(std::vector<std::int64_t>(q.vertex_count(), 1), std::move(arrows));
}

std::vector<std::size_t> Species::topological_order() const {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& a : arrows_) edges.emplace_back(a.source, a.target);
  return topo_sort(dims_.size(), edges);
}

IntMatrix cartan_matrix(const Species& s) {
  const std::size_t n = s.vertex_count();
  const auto& d = s.vertex_dimensions();
  IntMatrix c(n, std::vector<std::int64_t>(n, 0));
  auto order = s.topological_order();
  // sinks first: C[i][.] needs C[k][.] for every arrow i -> k
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t i = *it;
    c[i][i] = d[i];
    for (const auto& a : s.arrows()) {
      if (a.source != i) continue;
      const std::size_t k = a.target;
      // tensoring with a D_k-module of dimension C[k][j] over D_k
      for (std::size_t j = 0; j < n; ++j)
        c[i][j] = checked_add(c[i][j], checked_mul(a.dimension, c[k][j] / d[k]));
    }
  }
  return c;
}

IntMatrix euler_form(const Species& s) { return cartan_matrix(s); }

IntMatrix euler_form_projective_space(unsigned n) {
  if (n < 1) throw InvalidArgument("projective space dimension must be >= 1");
  IntMatrix e(n + 1, std::vector<std::int64_t>(n + 1, 0));
  for (unsigned i = 0; i <= n; ++i)
    for (unsigned j = i; j <= n; ++j) {
      Integer b;
      mpz_bin_uiui(b.get_mpz_t(), j - i + n, n);
      if (!b.fits_slong_p()) throw InvalidArgument("binomial coefficient exceeds 64 bits");
      e[i][j] = b.get_si();
    }
  return e;
}

std::int64_t determinant(const IntMatrix& m) {
  require_square(m, "determinant input");
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(m[i][j]);
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  Integer det = sign * a[n - 1][n - 1];
  if (!det.fits_slong_p()) throw InvalidArgument("determinant exceeds 64-bit range");
  return det.get_si();
}

CongruenceResult congruent_unimodular(const IntMatrix& e1, const IntMatrix& e2, unsigned bound) {
  require_square(e1, "first Euler form");
  require_square(e2, "second Euler form");
  if (e1.size() != e2.size())
    throw InvalidArgument("Euler forms of different rank (" + std::to_string(e1.size()) + " vs " +
                          std::to_string(e2.size()) + ")");
  CongruenceResult result;
  const std::int64_t d1 = determinant(e1), d2 = determinant(e2);
  if (d1 != d2 && d1 != -d2) {
    result.status = CongruenceStatus::absent_certified;
    result.certificate = "|det| differs: " + std::to_string(d1 < 0 ? -d1 : d1) + " vs " +
                         std::to_string(d2 < 0 ? -d2 : d2);
    return result;
  }
  const std::size_t n = e1.size();
  IntMatrix identity(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) identity[i][i] = 1;
  std::optional<IntMatrix> p;
  if (e1 == e2)
    p = identity;
  else
    p = CongruenceSearch(e1, e2, bound).run();
  if (p) {
    if (transpose_times_times(*p, e1) != e2) throw std::logic_error("congruence search returned a wrong transform");
    result.status = CongruenceStatus::found;
    result.transform = std::move(p);
    result.certificate = "P^T e1 P = e2 with det P = " + std::to_string(determinant(*result.transform));
  } else {
    result.status = CongruenceStatus::unknown_beyond_radius;
    result.certificate = "no unimodular transform with entries in [-" + std::to_string(bound) + ", " +
                         std::to_string(bound) + "]";
  }
  return result;
}

Quaternion operator*(const Quaternion& x, const Quaternion& y) {
  return Quaternion{x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
                    x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
                    x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
                    x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a};
}

Rational reduced_norm(const Quaternion& x) { return x.a * x.a + x.b * x.b + x.c * x.c + x.d * x.d; }

bool reduced_norm_image_contains(const Rational& v, bool split) {
  if (v == 0) throw InvalidArgument("reduced norms of units are nonzero");
  return split || v > 0;
}

}  // namespace twistbr
