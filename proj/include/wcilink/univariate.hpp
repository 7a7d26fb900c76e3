// Dense univariate polynomials over F_p: gcd, roots, irreducibility.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "wcilink/polynomial.hpp"

namespace wcilink {

/// Coefficients low degree first, trailing zeros trimmed.
struct UPoly {
  std::vector<std::uint64_t> c;
  std::uint64_t p = 0;

  UPoly() = default;
  UPoly(std::vector<std::uint64_t> coeffs, std::uint64_t modulus);
  static UPoly x(std::uint64_t p) { return UPoly({0, 1}, p); }
  static UPoly constant(std::uint64_t v, std::uint64_t p) { return UPoly({v % p}, p); }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  std::uint64_t lead() const { return c.empty() ? 0 : c.back(); }
  std::uint64_t operator()(std::uint64_t at) const;
  void trim();
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.p == b.p && a.c == b.c; }
};

UPoly operator+(const UPoly& a, const UPoly& b);
UPoly operator-(const UPoly& a, const UPoly& b);
UPoly operator*(const UPoly& a, const UPoly& b);
UPoly scale(const UPoly& a, std::uint64_t k);
/// Quotient and remainder; b must be nonzero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly monic(const UPoly& a);
/// Monic gcd (zero when both inputs are zero).
UPoly gcd(UPoly a, UPoly b);
UPoly derivative(const UPoly& a);
/// base^e mod m.
UPoly powmod(UPoly base, std::uint64_t e, const UPoly& m);

/// Distinct roots in F_p, ascending.
std::vector<std::uint64_t> roots(const UPoly& f, std::mt19937_64& rng);
/// Rabin's test; degree <= 0 counts as not irreducible.
bool is_irreducible(const UPoly& f);
bool is_squarefree(const UPoly& f);

/// Some a with a^k = v, if one exists.
std::optional<std::uint64_t> kth_root(std::uint64_t v, unsigned k, std::uint64_t p, std::mt19937_64& rng);

/// A polynomial in one variable of `f` whose other variables are absent.
/// Rationals are reduced mod p.
UPoly to_upoly(const Polynomial& f, std::size_t var, std::uint64_t p);
Polynomial from_upoly(const UPoly& u, const RingPtr& ring, std::size_t var);

}  // namespace wcilink
