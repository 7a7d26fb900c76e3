#include "chart_oracle.hpp"

#include "wcilink/algorithms.hpp"
#include "wcilink/substitution.hpp"

namespace testsupport {

using namespace wcilink;

ChartDiscrepancy chart_discrepancy(const Germ& germ, const WeightVector& b) {
  const RingPtr& ring = germ.ring;
  const std::size_t n = ring->size();
  const long r = b.denominator();
  ChartDiscrepancy out;
  for (std::size_t k = 0; k < n; ++k) {
    // Slot k now holds the chart parameter u.
    const Polynomial u = Polynomial::variable(ring, k);
    Substitution chart = Substitution::identity(ring);
    std::vector<Polynomial> images;
    for (std::size_t j = 0; j < n; ++j) {
      const auto e = static_cast<unsigned>(b.numerators()[j]);
      Polynomial img = j == k ? u.pow(e) : Polynomial::variable(ring, j) * u.pow(e);
      chart.set(j, img);
      images.push_back(img);
    }
    std::vector<std::vector<Polynomial>> jac = jacobian(images);
    const Polynomial det = determinant(jac);
    long ord = det.min_degree_in(k);
    for (const auto& f : germ.equations) ord -= chart.apply(f).min_degree_in(k);
    Rational a(ord + 1, r);
    a -= 1;
    a.canonicalize();
    out.per_chart.push_back(a);
  }
  out.value = out.per_chart.front();
  for (const auto& a : out.per_chart) out.agree = out.agree && a == out.value;
  return out;
}

}  // namespace testsupport
