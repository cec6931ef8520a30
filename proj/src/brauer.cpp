#include "twistbr/brauer.hpp"

#include <algorithm>
#include <set>

#include "twistbr/error.hpp"

namespace twistbr {

namespace {

Rational frac(const Rational& r) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  Rational out = r - fl;
  out.canonicalize();
  return out;
}

Rational half() { return Rational(1, 2); }

std::vector<Integer> squarefree_candidates(long bound) {
  // 1, -1, 2, -2, 3, -3, 5, -5, ... ordered by absolute value, positive first
  std::vector<Integer> out;
  for (long n = 1; n <= bound; ++n) {
    if (squarefree_part(Rational(n)) != n) continue;
    out.emplace_back(n);
    out.emplace_back(-n);
  }
  return out;
}

}  // namespace

BrauerClass BrauerClass::zero(const FieldSpec& k) { return BrauerClass(k, {}); }

BrauerClass BrauerClass::from_invariants(const FieldSpec& k, const InvariantMap& invariants) {
  InvariantMap reduced;
  Rational total = 0;
  for (const auto& [place, value] : invariants) {
    Rational r = frac(value);
    if (r == 0) continue;
    switch (k.kind()) {
      case FieldKind::finite_field:
        throw InvalidArgument("Br(" + k.to_string() + ") is trivial; nonzero invariant at " + place.to_string());
      case FieldKind::reals:
        if (!place.is_real()) throw InvalidArgument("a real Brauer class only has the real place");
        break;
      case FieldKind::padic:
        if (place.is_real() || place.prime() != k.prime())
          throw InvalidArgument("a class over " + k.to_string() + " only has the place " + k.prime().get_str());
        break;
      case FieldKind::rationals: break;
    }
    if (place.is_real() && r != half())
      throw InvalidArgument("the invariant at the real place must be 0 or 1/2, got " + twistbr::to_string(r));
    reduced.emplace(place, r);
    total += r;
  }
  if (k.kind() == FieldKind::rationals && frac(total) != 0)
    throw InvalidArgument("local invariants of a class over Q must sum to 0 mod 1 (sum is " +
                          twistbr::to_string(frac(total)) + ")");
  return BrauerClass(k, std::move(reduced));
}

Rational BrauerClass::invariant(const Place& v) const {
  auto it = invariants_.find(v);
  return it == invariants_.end() ? Rational(0) : it->second;
}

std::string BrauerClass::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [place, value] : invariants_) {
    if (!first) out += ", ";
    first = false;
    out += place.to_string() + ":" + twistbr::to_string(value);
  }
  return out + "}";
}

std::strong_ordering operator<=>(const BrauerClass& a, const BrauerClass& b) {
  if (!(a.field_ == b.field_)) return a.field_.to_string() <=> b.field_.to_string();
  auto ia = a.invariants_.begin(), ib = b.invariants_.begin();
  while (ia != a.invariants_.end() || ib != b.invariants_.end()) {
    // the earliest place present in either vector decides; absent means 0
    if (ib == b.invariants_.end() || (ia != a.invariants_.end() && ia->first < ib->first))
      return std::strong_ordering::greater;
    if (ia == a.invariants_.end() || ib->first < ia->first) return std::strong_ordering::less;
    if (ia->second != ib->second)
      return ia->second < ib->second ? std::strong_ordering::less : std::strong_ordering::greater;
    ++ia;
    ++ib;
  }
  return std::strong_ordering::equal;
}

BrauerClass quaternion_class(const Rational& a, const Rational& b, const FieldSpec& k) {
  if (k.is_characteristic_two())
    throw InvalidArgument("quaternion algebras (a, b) need characteristic != 2");
  require_field_element(a, k);
  require_field_element(b, k);
  BrauerClass::InvariantMap inv;
  switch (k.kind()) {
    case FieldKind::finite_field: break;
    case FieldKind::reals:
      if (a < 0 && b < 0) inv.emplace(Place::real(), half());
      break;
    case FieldKind::padic: {
      Place v = Place::finite(k.prime());
      if (hilbert_symbol(a, b, v) == -1) inv.emplace(v, half());
      break;
    }
    case FieldKind::rationals: {
      std::set<Integer> primes{2};
      for (const auto& p : prime_support(a)) primes.insert(p);
      for (const auto& p : prime_support(b)) primes.insert(p);
      if (hilbert_symbol(a, b, Place::real()) == -1) inv.emplace(Place::real(), half());
      for (const auto& p : primes) {
        Place v = Place::finite(p);
        if (hilbert_symbol(a, b, v) == -1) inv.emplace(v, half());
      }
      break;
    }
  }
  return BrauerClass::from_invariants(k, inv);
}

BrauerClass tensor(const BrauerClass& x, const BrauerClass& y) {
  if (!(x.field() == y.field()))
    throw InvalidArgument("cannot tensor classes over " + x.field().to_string() + " and " +
                          y.field().to_string());
  BrauerClass::InvariantMap sum = x.invariants();
  for (const auto& [place, value] : y.invariants()) sum[place] += value;
  return BrauerClass::from_invariants(x.field(), sum);
}

BrauerClass inverse(const BrauerClass& x) { return multiple(x, -1); }

BrauerClass multiple(const BrauerClass& x, const Integer& n) {
  BrauerClass::InvariantMap scaled;
  for (const auto& [place, value] : x.invariants()) scaled.emplace(place, value * n);
  return BrauerClass::from_invariants(x.field(), scaled);
}

Integer period(const BrauerClass& x) {
  Integer l = 1;
  for (const auto& kv : x.invariants()) l = lcm(l, Integer(kv.second.get_den()));
  return l;
}

Integer index(const BrauerClass& x) { return period(x); }

std::vector<BrauerClass> enumerate_torsion(const FieldSpec& k, const Integer& m,
                                           const std::vector<Place>& support) {
  if (m < 1) throw InvalidArgument("torsion bound must be a positive integer");
  switch (k.kind()) {
    case FieldKind::finite_field: return {BrauerClass::zero(k)};
    case FieldKind::reals: {
      std::vector<BrauerClass> out{BrauerClass::zero(k)};
      if (mpz_even_p(m.get_mpz_t())) out.push_back(BrauerClass::from_invariants(k, {{Place::real(), half()}}));
      return out;
    }
    case FieldKind::padic: {
      std::vector<BrauerClass> out;
      Place v = Place::finite(k.prime());
      for (Integer j = 0; j < m; ++j) out.push_back(BrauerClass::from_invariants(k, {{v, Rational(j, m)}}));
      return out;
    }
    case FieldKind::rationals: break;
  }
  std::set<Place> places(support.begin(), support.end());
  if (m > 1 && places.empty()) throw InvalidArgument("enumeration over Q needs a nonempty support set");
  std::vector<Place> sorted(places.begin(), places.end());
  // value lists per place, ascending
  std::vector<std::vector<Rational>> values;
  for (const auto& v : sorted) {
    std::vector<Rational> vals;
    if (v.is_real()) {
      vals.emplace_back(0);
      if (mpz_even_p(m.get_mpz_t())) vals.push_back(half());
    } else {
      for (Integer j = 0; j < m; ++j) {
        Rational r(j, m);
        r.canonicalize();
        vals.push_back(r);
      }
    }
    values.push_back(std::move(vals));
  }
  std::vector<BrauerClass> out;
  std::vector<std::size_t> digit(sorted.size(), 0);
  while (true) {
    Rational total = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) total += values[i][digit[i]];
    if (frac(total) == 0) {
      BrauerClass::InvariantMap inv;
      for (std::size_t i = 0; i < sorted.size(); ++i)
        if (values[i][digit[i]] != 0) inv.emplace(sorted[i], values[i][digit[i]]);
      out.push_back(BrauerClass::from_invariants(k, inv));
    }
    // odometer with the last place varying fastest gives lexicographic order
    std::size_t i = sorted.size();
    while (i > 0) {
      --i;
      if (++digit[i] < values[i].size()) break;
      digit[i] = 0;
      if (i == 0) return out;
    }
    if (sorted.empty()) return out;
  }
}

void EnumerationWindow::validate_for(const FieldSpec& k) const {
  if (torsion_bound && *torsion_bound < 1) throw InvalidArgument("torsion bound must be positive");
  if (k.kind() == FieldKind::padic && !torsion_bound)
    throw InvalidArgument("Br(" + k.to_string() + ") is infinite: a torsion bound is required");
  if (k.kind() == FieldKind::rationals) {
    if (!torsion_bound) throw InvalidArgument("Br(Q) is infinite: a torsion bound is required");
    if (support.empty()) throw InvalidArgument("Br(Q) is infinite: a support set of places is required");
  }
}

bool EnumerationWindow::is_relevant_for(const FieldSpec& k) const {
  return k.kind() == FieldKind::padic || k.kind() == FieldKind::rationals;
}

bool EnumerationWindow::contains(const BrauerClass& x) const {
  const FieldSpec& k = x.field();
  if (!is_relevant_for(k)) return true;
  if (torsion_bound && !multiple(x, *torsion_bound).is_zero()) return false;
  if (k.kind() == FieldKind::rationals) {
    for (const auto& kv : x.invariants())
      if (std::find(support.begin(), support.end(), kv.first) == support.end()) return false;
  }
  return true;
}

std::vector<BrauerClass> window_classes(const FieldSpec& k, const EnumerationWindow& window) {
  window.validate_for(k);
  switch (k.kind()) {
    case FieldKind::reals: return enumerate_torsion(k, 2, {});
    case FieldKind::finite_field: return {BrauerClass::zero(k)};
    case FieldKind::padic: return enumerate_torsion(k, *window.torsion_bound, {});
    case FieldKind::rationals: return enumerate_torsion(k, *window.torsion_bound, window.support);
  }
  return {};
}

std::vector<BrauerClass> cyclic_subgroup(const BrauerClass& x) {
  std::vector<BrauerClass> out{BrauerClass::zero(x.field())};
  for (BrauerClass y = x; !y.is_zero(); y = tensor(y, x)) out.push_back(y);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::pair<Rational, Rational>> quaternion_presentation(const BrauerClass& x, long bound) {
  if (period(x) > 2) return std::nullopt;
  const FieldSpec& k = x.field();
  switch (k.kind()) {
    case FieldKind::finite_field: return std::pair<Rational, Rational>{1, 1};
    case FieldKind::reals:
      return x.is_zero() ? std::pair<Rational, Rational>{1, 1} : std::pair<Rational, Rational>{-1, -1};
    case FieldKind::padic: {
      auto reps = square_class_representatives(k);
      for (const auto& a : reps)
        for (const auto& b : reps)
          if (quaternion_class(a, b, k) == x) return std::pair<Rational, Rational>{a, b};
      return std::nullopt;
    }
    case FieldKind::rationals: break;
  }
  if (x.is_zero()) return std::pair<Rational, Rational>{1, 1};
  auto cands = squarefree_candidates(bound);
  // sweep pairs by increasing max(|a|, |b|)
  for (std::size_t h = 0; h < cands.size(); ++h) {
    for (std::size_t j = 0; j <= h; ++j) {
      if (quaternion_class(cands[h], cands[j], k) == x) return std::pair<Rational, Rational>{cands[h], cands[j]};
      if (quaternion_class(cands[j], cands[h], k) == x) return std::pair<Rational, Rational>{cands[j], cands[h]};
    }
  }
  return std::nullopt;
}

}  // namespace twistbr
