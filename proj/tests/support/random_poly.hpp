// Seeded random polynomials for property tests.
#pragma once

#include <random>

#include "wcilink/polynomial.hpp"

namespace testsupport {

using wcilink::Polynomial;
using wcilink::RingPtr;

struct RandomPolySpec {
  int terms = 6;
  int max_degree = 4;
  long coeff_bound = 9;       // rationals drawn from [-bound, bound]
  std::uint64_t modulus = 0;  // 0 means Q
};

Polynomial random_polynomial(const RingPtr& ring, const RandomPolySpec& spec, std::mt19937_64& rng);

/// Coefficient uniform in F_p (p > 0) or a small nonzero integer.
wcilink::Coefficient random_coefficient(std::uint64_t p, std::mt19937_64& rng, bool nonzero = true);

}  // namespace testsupport
