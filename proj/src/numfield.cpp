#include "twistbr/numfield.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "twistbr/error.hpp"

namespace twistbr {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Integer mod_positive(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

// Brent's variant of Pollard rho; n odd composite.
Integer pollard_brent(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    auto step = [&](const Integer& v) { return Integer((v * v + c) % n); };
    Integer y = 2, x, ys, q = 1, g = 1;
    const unsigned long m = 64;
    unsigned long r = 1;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = step(y);
      for (unsigned long k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          q = (q * abs(Integer(x - y))) % n;
        }
        g = gcd(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd(Integer(abs(Integer(x - ys))), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(Integer(n / d), out);
}

Integer unit_residue(const Rational& u, const Integer& modulus) {
  // u has numerator and denominator prime to the modulus
  Integer inv;
  Integer den = mod_positive(u.get_den(), modulus);
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
  return mod_positive(Integer(u.get_num() * inv), modulus);
}

Rational strip_prime(const Rational& x, const Integer& p, long& v) {
  Integer num = x.get_num(), den = x.get_den();
  v = static_cast<long>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()));
  v -= static_cast<long>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()));
  Rational u(num, den);
  u.canonicalize();
  return u;
}

int unit_legendre(const Rational& u, const Integer& p) {
  return legendre_symbol(u.get_num(), p) * legendre_symbol(u.get_den(), p);
}

}  // namespace

// ---------------------------------------------------------------- FieldSpec

FieldSpec FieldSpec::reals() { return FieldSpec(FieldKind::reals, 0, 0, 0); }

FieldSpec FieldSpec::rationals() { return FieldSpec(FieldKind::rationals, 0, 0, 0); }

FieldSpec FieldSpec::finite_field(const Integer& q) {
  if (q < 2) throw InvalidArgument("finite field order must be a prime power >= 2, got " + q.get_str());
  Factorization f = factorize(q);
  if (f.factors.size() != 1)
    throw InvalidArgument("finite field order must be a prime power, got " + q.get_str());
  return FieldSpec(FieldKind::finite_field, f.factors[0].first, q, f.factors[0].second);
}

FieldSpec FieldSpec::padic(const Integer& p) {
  if (!is_prime(p)) throw InvalidArgument("p-adic field needs a prime, got " + p.get_str());
  return FieldSpec(FieldKind::padic, p, 0, 0);
}

FieldSpec FieldSpec::parse(std::string_view text) {
  text = trim(text);
  if (text == "reals" || text == "real" || text == "R") return reals();
  if (text == "rationals" || text == "Q") return rationals();
  auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    std::string_view head = text.substr(0, colon);
    std::string_view arg = trim(text.substr(colon + 1));
    if (!all_digits(arg)) throw InvalidArgument("bad field parameter in '" + std::string(text) + "'");
    Integer n{std::string(arg)};
    if (head == "finite" || head == "fq") return finite_field(n);
    if (head == "padic" || head == "qp") return padic(n);
  }
  throw InvalidArgument("unknown field '" + std::string(text) +
                        "' (expected reals, rationals, finite:<q> or padic:<p>)");
}

Integer FieldSpec::characteristic() const {
  return kind_ == FieldKind::finite_field ? prime_ : Integer(0);
}

bool FieldSpec::is_characteristic_two() const {
  return kind_ == FieldKind::finite_field && prime_ == 2;
}

std::string FieldSpec::to_string() const {
  switch (kind_) {
    case FieldKind::reals: return "reals";
    case FieldKind::rationals: return "rationals";
    case FieldKind::finite_field: return "finite:" + order_.get_str();
    case FieldKind::padic: return "padic:" + prime_.get_str();
  }
  return {};
}

// -------------------------------------------------------------------- Place

Place Place::finite(const Integer& p) {
  if (!is_prime(p)) throw InvalidArgument("a finite place needs a prime, got " + p.get_str());
  return Place(p);
}

Place Place::parse(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "∞" || text == "infinity" || text == "oo") return real();
  if (!all_digits(text)) throw InvalidArgument("bad place '" + std::string(text) + "'");
  return finite(Integer(std::string(text)));
}

std::string Place::to_string() const { return is_real() ? "inf" : prime_.get_str(); }

// ------------------------------------------------------------ factorization

Integer Factorization::value() const {
  Integer v = sign;
  for (const auto& [p, e] : factors) {
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    v *= pe;
  }
  return v;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

Factorization factorize(const Integer& n) {
  if (n == 0) throw InvalidArgument("cannot factorize zero");
  Factorization result;
  result.sign = n < 0 ? -1 : 1;
  Integer m = abs(n);
  std::map<Integer, unsigned> found;
  for (unsigned long d = 2; d < 10000; d += (d == 2 ? 1 : 2)) {
    if (m == 1) break;
    if (Integer(d) * d > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      ++found[Integer(d)];
      m /= d;
    }
  }
  factor_into(m, found);
  for (auto& [p, e] : found) result.factors.emplace_back(p, e);
  return result;
}

std::vector<Integer> prime_support(const Rational& x) {
  if (x == 0) throw InvalidArgument("prime support of zero is undefined");
  std::map<Integer, unsigned> primes;
  for (const auto& [p, e] : factorize(x.get_num()).factors) primes[p] = e;
  for (const auto& [p, e] : factorize(x.get_den()).factors) primes[p] = e;
  std::vector<Integer> out;
  for (const auto& kv : primes) out.push_back(kv.first);
  return out;
}

// ------------------------------------------------------------------ symbols

int legendre_symbol(const Integer& a, const Integer& p) {
  if (p <= 2 || !is_prime(p)) throw InvalidArgument("Legendre symbol needs an odd prime, got " + p.get_str());
  Integer r = mod_positive(a, p);
  if (r == 0) return 0;
  Integer e = (p - 1) / 2, t;
  mpz_powm(t.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return t == 1 ? 1 : -1;
}

Integer least_nonresidue(const Integer& p) {
  for (Integer a = 2;; ++a)
    if (legendre_symbol(a, p) == -1) return a;
}

long valuation(const Rational& x, const Integer& p) {
  if (x == 0) throw InvalidArgument("valuation of zero is undefined");
  long v = 0;
  strip_prime(x, p, v);
  return v;
}

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  if (a == 0 || b == 0) throw InvalidArgument("Hilbert symbol needs nonzero arguments");
  if (v.is_real()) return (a < 0 && b < 0) ? -1 : 1;
  const Integer& p = v.prime();
  long alpha = 0, beta = 0;
  Rational u = strip_prime(a, p, alpha);
  Rational w = strip_prime(b, p, beta);
  alpha &= 1;
  beta &= 1;
  if (p != 2) {
    int s = 1;
    bool eps_p = mpz_tstbit(Integer((p - 1) / 2).get_mpz_t(), 0);
    if (alpha && beta && eps_p) s = -s;
    if (beta) s *= unit_legendre(u, p);
    if (alpha) s *= unit_legendre(w, p);
    return s;
  }
  // (u, v)_2 = (-1)^(eps(u) eps(v) + alpha omega(v) + beta omega(u))
  auto residue8 = [](const Rational& x) {
    Integer r = mod_positive(Integer(x.get_num() * x.get_den()), 8);
    return static_cast<int>(r.get_si());
  };
  int ur = residue8(u), wr = residue8(w);
  auto eps = [](int x) { return ((x - 1) / 2) & 1; };
  auto omega = [](int x) { return ((x * x - 1) / 8) & 1; };
  int e = eps(ur) * eps(wr) + static_cast<int>(alpha) * omega(wr) + static_cast<int>(beta) * omega(ur);
  return (e & 1) ? -1 : 1;
}

// ------------------------------------------------------------ square classes

Integer squarefree_part(const Rational& x) {
  if (x == 0) throw InvalidArgument("zero has no square class");
  Integer out = x < 0 ? -1 : 1;
  std::map<Integer, unsigned> exps;
  for (const auto& [p, e] : factorize(x.get_num()).factors) exps[p] += e;
  for (const auto& [p, e] : factorize(x.get_den()).factors) exps[p] += e;
  for (const auto& [p, e] : exps)
    if (e & 1) out *= p;
  return out;
}

const Rational& require_field_element(const Rational& x, const FieldSpec& k) {
  if (x == 0) throw InvalidArgument("zero is not allowed here");
  if (k.kind() == FieldKind::finite_field) {
    const Integer& p = k.prime();
    if (mpz_divisible_p(x.get_den().get_mpz_t(), p.get_mpz_t()))
      throw InvalidArgument(to_string(x) + " is not an element of " + k.to_string());
    if (mpz_divisible_p(x.get_num().get_mpz_t(), p.get_mpz_t()))
      throw InvalidArgument(to_string(x) + " is zero in " + k.to_string());
  }
  return x;
}

SquareClass square_class(const Rational& x, const FieldSpec& k) {
  require_field_element(x, k);
  switch (k.kind()) {
    case FieldKind::rationals: return SquareClass(k, squarefree_part(x));
    case FieldKind::reals: return SquareClass(k, x < 0 ? -1 : 1);
    case FieldKind::padic: {
      const Integer& p = k.prime();
      long v = 0;
      Rational u = strip_prime(x, p, v);
      Integer rep = (v & 1) ? p : Integer(1);
      if (p == 2) {
        rep *= mod_positive(Integer(u.get_num() * u.get_den()), 8);
      } else if (unit_legendre(u, p) != 1) {
        rep *= least_nonresidue(p);
      }
      return SquareClass(k, rep);
    }
    case FieldKind::finite_field: {
      const Integer& p = k.prime();
      if (p == 2 || k.extension_degree() % 2 == 0) return SquareClass(k, 1);
      Integer r = unit_residue(x, p);
      return SquareClass(k, legendre_symbol(r, p) == 1 ? Integer(1) : least_nonresidue(p));
    }
  }
  return SquareClass(k, 1);
}

std::vector<Integer> square_class_representatives(const FieldSpec& k) {
  switch (k.kind()) {
    case FieldKind::reals: return {1, -1};
    case FieldKind::finite_field:
      if (k.prime() == 2 || k.extension_degree() % 2 == 0) return {1};
      return {1, least_nonresidue(k.prime())};
    case FieldKind::padic: {
      const Integer& p = k.prime();
      if (p == 2) return {1, 2, 3, 5, 6, 7, 10, 14};
      Integer u = least_nonresidue(p);
      std::vector<Integer> reps{1, u, p, Integer(u * p)};
      std::sort(reps.begin(), reps.end());
      return reps;
    }
    case FieldKind::rationals: break;
  }
  throw InvalidArgument("the rationals have infinitely many square classes");
}

// ------------------------------------------------------------------ parsing

Integer parse_integer(std::string_view text) {
  text = trim(text);
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) throw InvalidArgument("bad integer '" + std::string(text) + "'");
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  return Integer(s);
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  std::string_view den_text = trim(text.substr(slash + 1));
  if (!all_digits(den_text)) throw InvalidArgument("bad rational '" + std::string(text) + "'");
  Integer den(std::string{den_text});
  if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }
std::string to_string(const Integer& x) { return x.get_str(); }

}  // namespace twistbr
