// Division, determinants, resultants and irreducibility certificates.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "wcilink/polynomial.hpp"

namespace wcilink {

struct DivisionResult {
  Polynomial quotient;
  Polynomial remainder;
};

/// Grevlex leading-term division by a single divisor. The remainder is zero
/// exactly when g divides f.
DivisionResult divide_with_remainder(const Polynomial& f, const Polynomial& g);
std::optional<Polynomial> exact_quotient(const Polynomial& f, const Polynomial& g);

/// Fraction-free Bareiss elimination; entries share one ring.
Polynomial determinant(std::vector<std::vector<Polynomial>> m);

std::vector<std::vector<Polynomial>> sylvester_matrix(const Polynomial& f, const Polynomial& g,
                                                      std::size_t var);
/// Sylvester resultant eliminating `var`; throws on a zero input.
Polynomial resultant(const Polynomial& f, const Polynomial& g, std::size_t var);

/// Sound test that gcd(a, b) is a unit. false means "not certified", not "shares a factor".
bool coprime_certificate(const Polynomial& a, const Polynomial& b, std::mt19937_64& rng,
                         std::string* how = nullptr, std::uint64_t p = kDefaultPrime);

enum class Irreducibility { Irreducible, Reducible, Unknown };

struct IrreducibilityVerdict {
  Irreducibility kind = Irreducibility::Unknown;
  std::string method;
  std::string witness;
  /// Present for Reducible; product verified equal to the input.
  std::optional<std::pair<Polynomial, Polynomial>> factors;
};

std::string to_string(Irreducibility k);

IrreducibilityVerdict irreducibility_verdict(const Polynomial& f, int trials, std::uint64_t seed,
                                             std::uint64_t p = kDefaultPrime);

}  // namespace wcilink
