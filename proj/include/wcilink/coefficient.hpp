// Exact scalars: rationals (GMP) and residues modulo a word-sized prime.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace wcilink {

using Rational = mpq_class;

/// Default prime for sampling and witnesses: 2^31 - 1.
inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;

class FieldMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Residue class in Z/pZ, stored in [0, p).
struct Residue {
  std::uint64_t value = 0;
  std::uint64_t modulus = 0;
};

/// A field element: either a rational in lowest terms or a residue mod p.
///
/// Mixed arithmetic coerces the rational operand into the prime field, so
/// integer and fraction literals combine with residues of any modulus.
/// Residues of two different moduli never combine.
class Coefficient {
 public:
  Coefficient() : value_(Rational(0)) {}
  Coefficient(long v) : value_(Rational(v)) {}  // NOLINT(implicit)
  Coefficient(int v) : value_(Rational(v)) {}   // NOLINT(implicit)
  Coefficient(const Rational& q);               // NOLINT(implicit)

  static Coefficient residue(std::int64_t v, std::uint64_t p);
  static Coefficient fraction(long num, long den);

  bool is_zero() const;
  bool is_one() const;
  bool is_residue() const { return std::holds_alternative<Residue>(value_); }
  /// 0 for rationals.
  std::uint64_t modulus() const;

  const Rational& rational() const;
  std::uint64_t residue_value() const;

  /// Image in Z/pZ; throws if a rational denominator is divisible by p.
  Coefficient reduce(std::uint64_t p) const;

  Coefficient inverse() const;
  Coefficient pow(long e) const;
  Coefficient operator-() const;

  Coefficient& operator+=(const Coefficient& o);
  Coefficient& operator-=(const Coefficient& o);
  Coefficient& operator*=(const Coefficient& o);
  Coefficient& operator/=(const Coefficient& o);

  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
  friend Coefficient operator/(Coefficient a, const Coefficient& b) { return a /= b; }
  friend bool operator==(const Coefficient& a, const Coefficient& b);

  /// Rationals print as "p/q" (or "p"); residues print their representative.
  std::string to_string() const;

 private:
  std::variant<Rational, Residue> value_;
};

/// Coefficient domain selector: p == 0 means Q.
struct Field {
  std::uint64_t p = 0;

  static Field rationals() { return Field{0}; }
  static Field prime(std::uint64_t p) { return Field{p}; }

  bool is_prime() const { return p != 0; }
  Coefficient from_int(std::int64_t v) const;
  Coefficient zero() const { return from_int(0); }
  Coefficient one() const { return from_int(1); }
  std::string to_string() const;
};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);
bool is_probable_prime(std::uint64_t n);

/// "p/q" rendering used throughout reports.
std::string rational_string(const Rational& q);

}  // namespace wcilink
