#include "wcilink/coefficient.hpp"

namespace wcilink {

namespace {

std::uint64_t reduce_signed(std::int64_t v, std::uint64_t p) {
  const auto sp = static_cast<std::int64_t>(p);
  std::int64_t r = v % sp;
  if (r < 0) r += sp;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t mpz_mod_u64(const mpz_class& z, std::uint64_t p) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p));
}

Residue to_residue(const Rational& q, std::uint64_t p) {
  const std::uint64_t num = mpz_mod_u64(q.get_num(), p);
  const std::uint64_t den = mpz_mod_u64(q.get_den(), p);
  if (den == 0) {
    throw std::domain_error("denominator of " + rational_string(q) + " vanishes mod " +
                            std::to_string(p));
  }
  return Residue{mul_mod(num, inv_mod(den, p), p), p};
}

}  // namespace

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1U) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1U;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw std::domain_error("inverse of zero residue");
  // Extended Euclid on signed 128-bit to stay exact for any 64-bit modulus.
  __int128 t = 0, new_t = 1;
  __int128 r = p, new_r = a % p;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::domain_error("residue not invertible");
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

bool is_probable_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // Deterministic witness set for 64-bit inputs.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::string rational_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Coefficient::Coefficient(const Rational& q) : value_(q) {
  std::get<Rational>(value_).canonicalize();
}

Coefficient Coefficient::residue(std::int64_t v, std::uint64_t p) {
  if (p < 2) throw std::invalid_argument("modulus must be a prime >= 2");
  Coefficient c;
  c.value_ = Residue{reduce_signed(v, p), p};
  return c;
}

Coefficient Coefficient::fraction(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q(num, den);
  return Coefficient(q);
}

bool Coefficient::is_zero() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 0;
  return std::get<Rational>(value_) == 0;
}

bool Coefficient::is_one() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 1;
  return std::get<Rational>(value_) == 1;
}

std::uint64_t Coefficient::modulus() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->modulus;
  return 0;
}

const Rational& Coefficient::rational() const {
  if (is_residue()) throw FieldMismatch("coefficient is a residue, not a rational");
  return std::get<Rational>(value_);
}

std::uint64_t Coefficient::residue_value() const {
  if (!is_residue()) throw FieldMismatch("coefficient is rational, not a residue");
  return std::get<Residue>(value_).value;
}

Coefficient Coefficient::reduce(std::uint64_t p) const {
  if (const auto* r = std::get_if<Residue>(&value_)) {
    if (r->modulus != p) throw FieldMismatch("cannot reduce a residue to a different modulus");
    return *this;
  }
  Coefficient c;
  c.value_ = to_residue(std::get<Rational>(value_), p);
  return c;
}

Coefficient Coefficient::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero coefficient");
  if (const auto* r = std::get_if<Residue>(&value_)) {
    Coefficient c;
    c.value_ = Residue{inv_mod(r->value, r->modulus), r->modulus};
    return c;
  }
  Rational q = 1 / std::get<Rational>(value_);
  return Coefficient(q);
}

Coefficient Coefficient::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  if (const auto* r = std::get_if<Residue>(&value_)) {
    Coefficient c;
    c.value_ = Residue{pow_mod(r->value, static_cast<std::uint64_t>(e), r->modulus), r->modulus};
    return c;
  }
  Rational base = std::get<Rational>(value_);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Coefficient(Rational(num, den));
}

Coefficient Coefficient::operator-() const {
  if (const auto* r = std::get_if<Residue>(&value_)) {
    Coefficient c;
    c.value_ = Residue{r->value == 0 ? 0 : r->modulus - r->value, r->modulus};
    return c;
  }
  return Coefficient(Rational(-std::get<Rational>(value_)));
}

namespace {

// Bring both operands into a common domain.
std::uint64_t common_modulus(const Coefficient& a, const Coefficient& b) {
  const std::uint64_t pa = a.modulus();
  const std::uint64_t pb = b.modulus();
  if (pa != 0 && pb != 0 && pa != pb) {
    throw FieldMismatch("residues modulo " + std::to_string(pa) + " and " + std::to_string(pb) +
                        " do not combine");
  }
  return pa != 0 ? pa : pb;
}

}  // namespace

Coefficient& Coefficient::operator+=(const Coefficient& o) {
  const std::uint64_t p = common_modulus(*this, o);
  if (p == 0) {
    Rational& q = std::get<Rational>(value_);
    q += std::get<Rational>(o.value_);
    return *this;
  }
  const std::uint64_t a = reduce(p).residue_value();
  const std::uint64_t b = o.reduce(p).residue_value();
  std::uint64_t s = a + b;
  if (s >= p) s -= p;
  value_ = Residue{s, p};
  return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& o) { return *this += -o; }

Coefficient& Coefficient::operator*=(const Coefficient& o) {
  const std::uint64_t p = common_modulus(*this, o);
  if (p == 0) {
    Rational& q = std::get<Rational>(value_);
    q *= std::get<Rational>(o.value_);
    return *this;
  }
  value_ = Residue{mul_mod(reduce(p).residue_value(), o.reduce(p).residue_value(), p), p};
  return *this;
}

Coefficient& Coefficient::operator/=(const Coefficient& o) { return *this *= o.inverse(); }

bool operator==(const Coefficient& a, const Coefficient& b) {
  const std::uint64_t p = common_modulus(a, b);
  if (p == 0) return std::get<Rational>(a.value_) == std::get<Rational>(b.value_);
  return a.reduce(p).residue_value() == b.reduce(p).residue_value();
}

std::string Coefficient::to_string() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return std::to_string(r->value);
  return rational_string(std::get<Rational>(value_));
}

Coefficient Field::from_int(std::int64_t v) const {
  if (p == 0) return Coefficient(static_cast<long>(v));
  return Coefficient::residue(v, p);
}

std::string Field::to_string() const { return p == 0 ? "Q" : "F_" + std::to_string(p); }

}  // namespace wcilink
