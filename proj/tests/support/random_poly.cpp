#include "random_poly.hpp"

#include <algorithm>

namespace testsupport {

wcilink::Coefficient random_coefficient(std::uint64_t p, std::mt19937_64& rng, bool nonzero) {
  for (;;) {
    wcilink::Coefficient c;
    if (p == 0) {
      std::uniform_int_distribution<long> d(-9, 9);
      c = wcilink::Coefficient(d(rng));
    } else {
      std::uniform_int_distribution<std::uint64_t> d(0, p - 1);
      c = wcilink::Coefficient::residue(static_cast<std::int64_t>(d(rng)), p);
    }
    if (!nonzero || !c.is_zero()) return c;
  }
}

Polynomial random_polynomial(const RingPtr& ring, const RandomPolySpec& spec, std::mt19937_64& rng) {
  Polynomial f(ring);
  std::uniform_int_distribution<int> exp(0, spec.max_degree);
  std::uniform_int_distribution<long> coeff(-spec.coeff_bound, spec.coeff_bound);
  for (int k = 0; k < spec.terms; ++k) {
    wcilink::Monomial m(ring->size());
    int budget = spec.max_degree;
    for (auto& e : m) {
      e = std::min(exp(rng), budget);
      budget -= e;
    }
    std::shuffle(m.begin(), m.end(), rng);
    if (spec.modulus == 0) {
      f.add_term(m, wcilink::Coefficient(coeff(rng)));
    } else {
      f.add_term(m, random_coefficient(spec.modulus, rng));
    }
  }
  return f;
}

}  // namespace testsupport
