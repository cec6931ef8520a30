#include "twistbr/quadform.hpp"

#include <algorithm>
#include <stdexcept>

#include "twistbr/error.hpp"

namespace twistbr {

namespace {

Integer mod_positive(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

bool is_local_square(const Rational& x, const Place& v) {
  if (v.is_real()) return x > 0;
  return square_class(x, FieldSpec::padic(v.prime())).is_trivial();
}

Rational product(std::span<const Rational> xs) {
  Rational p = 1;
  for (const auto& x : xs) p *= x;
  return p;
}

// Order on square-class representatives: by |a|, positive before negative.
bool entry_less(const Rational& a, const Rational& b) {
  Rational aa = abs(a), ab = abs(b);
  if (aa != ab) return aa < ab;
  return a > b;
}

bool form_less(const QuadraticForm& a, const QuadraticForm& b) {
  return std::lexicographical_compare(a.diag().begin(), a.diag().end(), b.diag().begin(), b.diag().end(),
                                      entry_less);
}

void require_same_field(const QuadraticForm& a, const QuadraticForm& b) {
  if (!(a.field() == b.field()))
    throw InvalidArgument("forms over different fields: " + a.field().to_string() + " and " +
                          b.field().to_string());
}

void require_place_of(const FieldSpec& k, const Place& v) {
  switch (k.kind()) {
    case FieldKind::rationals: return;
    case FieldKind::reals:
      if (v.is_real()) return;
      break;
    case FieldKind::padic:
      if (!v.is_real() && v.prime() == k.prime()) return;
      break;
    case FieldKind::finite_field: break;
  }
  throw InvalidArgument("place " + v.to_string() + " is not a place of " + k.to_string());
}

// ------------------------------------------------------ invariant calculus

// Serre's criterion for a form of given rank, discriminant and Hasse
// invariant over Q_p.
bool padic_isotropic(std::size_t rank, const Rational& disc, int eps, const Place& v) {
  switch (rank) {
    case 0:
    case 1: return false;
    case 2: return is_local_square(-disc, v);
    case 3: return hilbert_symbol(-1, -disc, v) == eps;
    case 4: return !is_local_square(disc, v) || eps == hilbert_symbol(-1, -1, v);
    default: return true;
  }
}

std::set<Integer> relevant_primes(const FormInvariants& inv, const Rational& extra) {
  std::set<Integer> primes(inv.hasse_minus.begin(), inv.hasse_minus.end());
  primes.insert(2);
  for (const auto& p : prime_support(inv.disc)) primes.insert(p);
  for (const auto& p : prime_support(extra)) primes.insert(p);
  return primes;
}

bool isotropic(const FormInvariants& inv) {
  const FieldSpec& k = inv.field;
  switch (k.kind()) {
    case FieldKind::finite_field:
      return inv.rank >= 3 || (inv.rank == 2 && square_class(-Rational(inv.disc), k).is_trivial());
    case FieldKind::reals: return inv.signature.positive > 0 && inv.signature.negative > 0;
    case FieldKind::padic: {
      Place v = Place::finite(k.prime());
      return padic_isotropic(inv.rank, inv.disc, inv.hasse_at(v), v);
    }
    case FieldKind::rationals: break;
  }
  if (inv.rank < 2) return false;
  if (inv.rank == 2) return squarefree_part(-Rational(inv.disc)) == 1;
  if (inv.signature.positive == 0 || inv.signature.negative == 0) return false;
  for (const auto& p : relevant_primes(inv, 1)) {
    Place v = Place::finite(p);
    if (!padic_isotropic(inv.rank, inv.disc, inv.hasse_at(v), v)) return false;
  }
  return true;
}

void shift_signature(Signature& s, const Rational& a, int delta) {
  unsigned& slot = a > 0 ? s.positive : s.negative;
  if (delta < 0 && slot == 0) throw std::logic_error("signature underflow");
  slot = static_cast<unsigned>(static_cast<int>(slot) + delta);
}

// Invariants of q ⊥ <a>.
FormInvariants add_entry(const FormInvariants& inv, const Rational& a) {
  FormInvariants out = inv;
  const FieldSpec& k = inv.field;
  out.rank = inv.rank + 1;
  out.disc = square_class(Rational(inv.disc) * a, k).rep();
  if (k.kind() == FieldKind::reals || k.kind() == FieldKind::rationals) shift_signature(out.signature, a, +1);
  out.hasse_minus.clear();
  if (k.kind() == FieldKind::padic) {
    Place v = Place::finite(k.prime());
    if (inv.hasse_at(v) * hilbert_symbol(inv.disc, a, v) == -1) out.hasse_minus.insert(k.prime());
  } else if (k.kind() == FieldKind::rationals) {
    for (const auto& p : relevant_primes(inv, a)) {
      Place v = Place::finite(p);
      if (inv.hasse_at(v) * hilbert_symbol(inv.disc, a, v) == -1) out.hasse_minus.insert(p);
    }
  }
  return out;
}

// Invariants of q1 where q ~= <a> ⊥ q1.
FormInvariants remove_entry(const FormInvariants& inv, const Rational& a) {
  FormInvariants out = inv;
  const FieldSpec& k = inv.field;
  out.rank = inv.rank - 1;
  out.disc = square_class(Rational(inv.disc) * a, k).rep();
  if (k.kind() == FieldKind::reals || k.kind() == FieldKind::rationals) shift_signature(out.signature, a, -1);
  out.hasse_minus.clear();
  if (k.kind() == FieldKind::padic) {
    Place v = Place::finite(k.prime());
    if (inv.hasse_at(v) * hilbert_symbol(a, out.disc, v) == -1) out.hasse_minus.insert(k.prime());
  } else if (k.kind() == FieldKind::rationals) {
    for (const auto& p : relevant_primes(inv, a)) {
      Place v = Place::finite(p);
      if (inv.hasse_at(v) * hilbert_symbol(a, out.disc, v) == -1) out.hasse_minus.insert(p);
    }
  }
  return out;
}

bool represents(const FormInvariants& inv, const Rational& a) {
  if (inv.rank == 1) return square_class(a * Rational(inv.disc), inv.field).is_trivial();
  return isotropic(add_entry(inv, -a));
}

// Square-class representatives in canonical entry order.
class CandidateStream {
 public:
  explicit CandidateStream(const FieldSpec& k) : field_(k) {
    if (k.kind() != FieldKind::rationals) {
      for (const auto& r : square_class_representatives(k)) finite_.emplace_back(r);
      std::sort(finite_.begin(), finite_.end(), entry_less);
    }
  }

  Rational next() {
    if (field_.kind() != FieldKind::rationals) {
      if (pos_ >= finite_.size()) throw std::logic_error("square-class candidates exhausted");
      return finite_[pos_++];
    }
    if (pending_negative_) {
      pending_negative_ = false;
      return -Rational(current_);
    }
    do {
      ++current_;
      if (current_ > 100000000) throw std::logic_error("square-class candidate search exceeded its bound");
    } while (squarefree_part(Rational(current_)) != current_);
    pending_negative_ = true;
    return Rational(current_);
  }

 private:
  FieldSpec field_;
  std::vector<Rational> finite_;
  std::size_t pos_ = 0;
  Integer current_ = 0;
  bool pending_negative_ = false;
};

QuadraticForm form_from_invariants(FormInvariants inv) {
  std::vector<Rational> entries;
  const FieldSpec field = inv.field;
  while (inv.rank > 1) {
    CandidateStream stream(field);
    while (true) {
      Rational a = stream.next();
      if (represents(inv, a)) {
        entries.push_back(a);
        inv = remove_entry(inv, a);
        break;
      }
    }
  }
  entries.emplace_back(inv.disc);
  return QuadraticForm(field, std::move(entries));
}

Integer smallest_nonsplit_prime(const Rational& d) {
  for (Integer p = 2;; mpz_nextprime(p.get_mpz_t(), p.get_mpz_t()))
    if (!is_local_square(d, Place::finite(p))) return p;
}

int real_hasse(const Signature& s) {
  unsigned n = s.negative;
  return ((n * (n - 1) / 2) & 1) ? -1 : 1;
}

// Even rank over Q with non-square signed discriminant: the similarity
// class of q consists of the forms with the same rank and discriminant
// whose Hasse vector differs from q's by ((lambda, d)_v)_v for some
// lambda, the signature flipping exactly when lambda < 0. Those sign
// vectors are the ones supported on the places where d is not a local
// square with product 1. Normalize: keep the larger positive index, clear
// every -1 at non-split finite places, leaving one at the least non-split
// prime when the parity forces it.
FormInvariants normalize_even_similarity(const FormInvariants& inv, const Integer& signed_disc) {
  FormInvariants out = inv;
  const Signature& s = inv.signature;
  const bool d_negative = signed_disc < 0;
  bool flip = s.positive < s.negative;
  std::set<Integer> keep, nonsplit_bad;
  for (const auto& p : inv.hasse_minus) {
    if (is_local_square(signed_disc, Place::finite(p)))
      keep.insert(p);
    else
      nonsplit_bad.insert(p);
  }
  std::size_t parity = nonsplit_bad.size();
  if (d_negative) {
    if (s.positive == s.negative) flip = (parity & 1) != 0;
    if (flip) ++parity;
  }
  if (flip) out.signature = Signature{s.negative, s.positive};
  out.hasse_minus = keep;
  if (parity & 1) out.hasse_minus.insert(smallest_nonsplit_prime(signed_disc));
  std::size_t minus_count = out.hasse_minus.size();
  if (real_hasse(out.signature) * ((minus_count & 1) ? -1 : 1) != 1)
    throw std::logic_error("similarity normalization broke the product formula");
  return out;
}

Integer signed_disc_rep(const QuadraticForm& q) { return discriminant(q).rep(); }

template <class T, class Ops>
std::vector<T> symmetric_eliminate(std::vector<std::vector<T>> a, const Ops& ops) {
  const std::size_t n = a.size();
  auto swap_index = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    for (auto& row : a) std::swap(row[i], row[j]);
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (ops.is_zero(a[i][i])) {
      std::size_t j = i + 1;
      while (j < n && ops.is_zero(a[j][j])) ++j;
      if (j < n) {
        swap_index(i, j);
      } else {
        j = i + 1;
        while (j < n && ops.is_zero(a[i][j])) ++j;
        if (j == n) throw InvalidArgument("degenerate Gram matrix");
        // a_jj = 0, so e_i <- e_i + t e_j with t = 1 / (2 a_ij) has norm 1
        const T t = ops.div(ops.one(), ops.add(a[i][j], a[i][j]));
        for (std::size_t c = 0; c < n; ++c) a[i][c] = ops.add(a[i][c], ops.mul(t, a[j][c]));
        for (std::size_t r = 0; r < n; ++r) a[r][i] = ops.add(a[r][i], ops.mul(t, a[r][j]));
      }
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (ops.is_zero(a[j][i])) continue;
      T f = ops.div(a[j][i], a[i][i]);
      for (std::size_t c = 0; c < n; ++c) a[j][c] = ops.sub(a[j][c], ops.mul(f, a[i][c]));
      for (std::size_t r = 0; r < n; ++r) a[r][j] = ops.sub(a[r][j], ops.mul(f, a[r][i]));
    }
  }
  std::vector<T> diag;
  for (std::size_t i = 0; i < n; ++i) diag.push_back(a[i][i]);
  return diag;
}

struct RationalOps {
  Rational one() const { return 1; }
  bool is_zero(const Rational& x) const { return x == 0; }
  Rational add(const Rational& x, const Rational& y) const { return x + y; }
  Rational sub(const Rational& x, const Rational& y) const { return x - y; }
  Rational mul(const Rational& x, const Rational& y) const { return x * y; }
  Rational div(const Rational& x, const Rational& y) const { return x / y; }
};

struct ModularOps {
  Integer p;
  Integer one() const { return 1; }
  bool is_zero(const Integer& x) const { return x == 0; }
  Integer add(const Integer& x, const Integer& y) const { return mod_positive(Integer(x + y), p); }
  Integer sub(const Integer& x, const Integer& y) const { return mod_positive(Integer(x - y), p); }
  Integer mul(const Integer& x, const Integer& y) const { return mod_positive(Integer(x * y), p); }
  Integer div(const Integer& x, const Integer& y) const {
    Integer inv;
    mpz_invert(inv.get_mpz_t(), y.get_mpz_t(), p.get_mpz_t());
    return mul(x, inv);
  }
  Integer reduce(const Rational& x) const {
    Integer inv, den = mod_positive(x.get_den(), p);
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    return mod_positive(Integer(x.get_num() * inv), p);
  }
};

}  // namespace

// ------------------------------------------------------------ form objects

QuadraticForm::QuadraticForm(FieldSpec field, std::vector<Rational> diag)
    : field_(std::move(field)), diag_(std::move(diag)) {
  if (diag_.empty()) throw InvalidArgument("a quadratic form needs rank >= 1");
  if (field_.is_characteristic_two()) throw InvalidArgument("quadratic forms in characteristic 2 are not supported");
  for (const auto& a : diag_) require_field_element(a, field_);
}

QuadraticForm QuadraticForm::scaled(const Rational& lambda) const {
  require_field_element(lambda, field_);
  std::vector<Rational> d(diag_.begin(), diag_.end());
  for (auto& a : d) a *= lambda;
  return QuadraticForm(field_, std::move(d));
}

QuadraticForm QuadraticForm::orthogonal_sum(const QuadraticForm& other) const {
  require_same_field(*this, other);
  std::vector<Rational> d(diag_.begin(), diag_.end());
  d.insert(d.end(), other.diag_.begin(), other.diag_.end());
  return QuadraticForm(field_, std::move(d));
}

QuadraticForm QuadraticForm::over(const FieldSpec& k) const {
  if (k == field_) return *this;
  if (field_.kind() == FieldKind::rationals) return QuadraticForm(k, diag_);
  throw InvalidArgument("cannot read a form over " + field_.to_string() + " as a form over " + k.to_string());
}

std::string QuadraticForm::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < diag_.size(); ++i) {
    if (i) out += ", ";
    out += twistbr::to_string(diag_[i]);
  }
  return out + ">";
}

GramMatrix::GramMatrix(FieldSpec field, std::vector<std::vector<Rational>> entries)
    : field_(std::move(field)), entries_(std::move(entries)) {
  if (field_.is_characteristic_two()) throw InvalidArgument("quadratic forms in characteristic 2 are not supported");
  const std::size_t n = entries_.size();
  if (n == 0) throw InvalidArgument("empty Gram matrix");
  for (const auto& row : entries_)
    if (row.size() != n) throw InvalidArgument("Gram matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (entries_[i][j] != entries_[j][i]) throw InvalidArgument("Gram matrix is not symmetric");
      if (field_.kind() == FieldKind::finite_field && entries_[i][j] != 0 &&
          mpz_divisible_p(entries_[i][j].get_den_mpz_t(), field_.prime().get_mpz_t()))
        throw InvalidArgument(to_string(entries_[i][j]) + " is not an element of " + field_.to_string());
    }
}

int FormInvariants::hasse_at(const Place& v) const {
  switch (field.kind()) {
    case FieldKind::finite_field: return 1;
    case FieldKind::reals:
      if (!v.is_real()) throw InvalidArgument("only the real place belongs to R");
      return real_hasse(signature);
    case FieldKind::padic:
      if (v.is_real() || v.prime() != field.prime())
        throw InvalidArgument("place " + v.to_string() + " is not the place of " + field.to_string());
      return hasse_minus.count(field.prime()) ? -1 : 1;
    case FieldKind::rationals:
      if (v.is_real()) return real_hasse(signature);
      return hasse_minus.count(v.prime()) ? -1 : 1;
  }
  return 1;
}

FormInvariants invariants(const QuadraticForm& q) {
  FormInvariants inv{q.field(), 0, 1, {}, {}};
  const FieldSpec& k = q.field();
  inv.rank = q.rank();
  inv.disc = square_class(product(q.diag()), k).rep();
  if (k.kind() == FieldKind::reals || k.kind() == FieldKind::rationals)
    for (const auto& a : q.diag()) shift_signature(inv.signature, a, +1);
  // prod_{i<j} (a_i, a_j) = prod_j (a_1 ... a_{j-1}, a_j) by bimultiplicativity
  auto hasse = [&](const Place& v) {
    int eps = 1;
    Rational prefix = q.diag()[0];
    for (std::size_t j = 1; j < q.rank(); ++j) {
      eps *= hilbert_symbol(prefix, q.diag()[j], v);
      prefix *= q.diag()[j];
    }
    return eps;
  };
  if (k.kind() == FieldKind::padic) {
    if (hasse(Place::finite(k.prime())) == -1) inv.hasse_minus.insert(k.prime());
  } else if (k.kind() == FieldKind::rationals) {
    std::set<Integer> primes{2};
    for (const auto& a : q.diag())
      for (const auto& p : prime_support(a)) primes.insert(p);
    for (const auto& p : primes)
      if (hasse(Place::finite(p)) == -1) inv.hasse_minus.insert(p);
  }
  return inv;
}

QuadraticForm diagonalize(const GramMatrix& g) {
  const FieldSpec& k = g.field();
  std::vector<Rational> diag;
  if (k.kind() == FieldKind::finite_field) {
    ModularOps ops{k.prime()};
    std::vector<std::vector<Integer>> m;
    for (const auto& row : g.entries()) {
      std::vector<Integer> r;
      for (const auto& x : row) r.push_back(x == 0 ? Integer(0) : ops.reduce(x));
      m.push_back(std::move(r));
    }
    for (const auto& x : symmetric_eliminate(m, ops)) diag.emplace_back(x);
  } else {
    diag = symmetric_eliminate(g.entries(), RationalOps{});
  }
  for (auto& a : diag) a = Rational(square_class(a, k).rep());
  return QuadraticForm(k, std::move(diag));
}

SquareClass discriminant(const QuadraticForm& q) {
  const std::size_t r = q.rank();
  Rational d = product(q.diag());
  if ((r * (r - 1) / 2) & 1) d = -d;
  return square_class(d, q.field());
}

int hasse_invariant(const QuadraticForm& q, const Place& v) {
  if (q.field().kind() == FieldKind::finite_field)
    throw InvalidArgument("Hasse invariants are evaluated at places of R, Q_p or Q");
  require_place_of(q.field(), v);
  int eps = 1;
  for (std::size_t i = 0; i < q.rank(); ++i)
    for (std::size_t j = i + 1; j < q.rank(); ++j) eps *= hilbert_symbol(q.diag()[i], q.diag()[j], v);
  return eps;
}

Signature signature(const QuadraticForm& q) {
  if (q.field().kind() != FieldKind::reals && q.field().kind() != FieldKind::rationals)
    throw InvalidArgument("signature needs an ordered field (R or Q)");
  Signature s;
  for (const auto& a : q.diag()) shift_signature(s, a, +1);
  return s;
}

bool is_isotropic(const QuadraticForm& q, const FieldSpec& k) { return isotropic(invariants(q.over(k))); }

bool is_isotropic(const QuadraticForm& q) { return isotropic(invariants(q)); }

bool represents(const QuadraticForm& q, const Rational& a) {
  require_field_element(a, q.field());
  return represents(invariants(q), a);
}

bool equivalent(const QuadraticForm& q1, const QuadraticForm& q2, const FieldSpec& k) {
  require_same_field(q1, q2);
  return invariants(q1.over(k)) == invariants(q2.over(k));
}

QuadraticForm canonical_form(const QuadraticForm& q) { return form_from_invariants(invariants(q)); }

QuadraticForm canonical_similarity_form(const QuadraticForm& q) {
  const FieldSpec& k = q.field();
  switch (k.kind()) {
    case FieldKind::reals: {
      Signature s = signature(q);
      return canonical_form(s.positive >= s.negative ? q : q.scaled(-1));
    }
    case FieldKind::padic:
    case FieldKind::finite_field: {
      std::optional<QuadraticForm> best;
      for (const auto& lambda : square_class_representatives(k)) {
        QuadraticForm c = canonical_form(q.scaled(lambda));
        if (!best || form_less(c, *best)) best = c;
      }
      return *best;
    }
    case FieldKind::rationals: break;
  }
  const Integer d = signed_disc_rep(q);
  if (q.rank() % 2 == 1) return canonical_form(q.scaled(d));  // makes the signed discriminant trivial
  FormInvariants inv = invariants(q);
  if (d == 1) {
    if (inv.signature.positive < inv.signature.negative) return canonical_form(q.scaled(-1));
    return form_from_invariants(inv);
  }
  return form_from_invariants(normalize_even_similarity(inv, d));
}

std::vector<Integer> similarity_factor_window(const QuadraticForm& q1, const QuadraticForm& q2) {
  std::set<Integer> primes{2};
  for (const auto* q : {&q1, &q2})
    for (const auto& a : q->diag())
      for (const auto& p : prime_support(a)) primes.insert(p);
  std::vector<Integer> positive{1};
  for (const auto& p : primes) {
    std::size_t n = positive.size();
    for (std::size_t i = 0; i < n; ++i) positive.push_back(positive[i] * p);
  }
  std::sort(positive.begin(), positive.end());
  std::vector<Integer> out;
  for (const auto& x : positive) {
    out.push_back(x);
    out.push_back(-x);
  }
  return out;
}

std::optional<Rational> similar(const QuadraticForm& q1, const QuadraticForm& q2, const FieldSpec& k) {
  require_same_field(q1, q2);
  if (q1.rank() != q2.rank())
    throw InvalidArgument("similarity needs forms of equal rank (" + std::to_string(q1.rank()) + " vs " +
                          std::to_string(q2.rank()) + ")");
  QuadraticForm a = q1.over(k), b = q2.over(k);
  if (!(canonical_similarity_form(a) == canonical_similarity_form(b))) return std::nullopt;
  const FormInvariants target = invariants(a);
  auto works = [&](const Integer& lambda) { return invariants(b.scaled(lambda)) == target; };
  if (k.kind() != FieldKind::rationals) {
    std::vector<Rational> reps;
    for (const auto& r : square_class_representatives(k)) reps.emplace_back(r);
    std::sort(reps.begin(), reps.end(), entry_less);
    for (const auto& r : reps)
      if (works(r.get_num())) return r;
    throw std::logic_error("similar forms without a similarity factor among the square classes");
  }
  const std::vector<Integer> window = similarity_factor_window(a, b);
  for (const auto& lambda : window)
    if (works(lambda)) return Rational(lambda);
  // The window can miss: the factor may need an auxiliary prime carrying a
  // prescribed set of Hilbert symbols against the discriminant.
  Integer ell = 2;
  std::vector<Integer> extra;
  for (int round = 0; round < 200; ++round) {
    mpz_nextprime(ell.get_mpz_t(), ell.get_mpz_t());
    if (std::find(window.begin(), window.end(), ell) != window.end()) continue;
    for (const auto& lambda : window) {
      if (works(lambda * ell)) return Rational(lambda * ell);
      for (const auto& m : extra)
        if (works(lambda * ell * m)) return Rational(lambda * ell * m);
    }
    extra.push_back(ell);
  }
  throw std::logic_error("similarity factor search failed for " + q1.to_string() + " and " + q2.to_string());
}

BrauerClass hasse_witt_class(const QuadraticForm& q) {
  const FieldSpec& k = q.field();
  if (k.kind() == FieldKind::finite_field) return BrauerClass::zero(k);
  FormInvariants inv = invariants(q);
  BrauerClass::InvariantMap m;
  const Rational half(1, 2);
  if (k.kind() != FieldKind::padic && inv.hasse_at(Place::real()) == -1) m.emplace(Place::real(), half);
  for (const auto& p : inv.hasse_minus) m.emplace(Place::finite(p), half);
  return BrauerClass::from_invariants(k, m);
}

// c(q) = s(q) + correction, with s the Hasse-Witt class and d = prod(a_i):
//   r = 1, 2 (mod 8): 0        r = 3, 4: (-1, -d)
//   r = 5, 6:        (-1, -1)  r = 7, 0: (-1, d)
BrauerClass clifford_invariant(const QuadraticForm& q) {
  const FieldSpec& k = q.field();
  if (k.kind() == FieldKind::finite_field) return BrauerClass::zero(k);
  const Rational d = product(q.diag());
  BrauerClass correction = BrauerClass::zero(k);
  switch (q.rank() % 8) {
    case 3:
    case 4: correction = quaternion_class(-1, -d, k); break;
    case 5:
    case 6: correction = quaternion_class(-1, -1, k); break;
    case 7:
    case 0: correction = quaternion_class(-1, d, k); break;
    default: break;
  }
  return tensor(hasse_witt_class(q), correction);
}

BrauerClass even_clifford_class(const QuadraticForm& q) {
  if (q.rank() % 2 == 0)
    throw InvalidArgument("the even Clifford algebra is central simple only for odd rank (rank " +
                          std::to_string(q.rank()) + ")");
  return clifford_invariant(q);
}

BrauerClass full_clifford_class(const QuadraticForm& q) {
  if (q.rank() % 2 == 1)
    throw InvalidArgument("the full Clifford algebra is central simple only for even rank (rank " +
                          std::to_string(q.rank()) + ")");
  return clifford_invariant(q);
}

}  // namespace twistbr
