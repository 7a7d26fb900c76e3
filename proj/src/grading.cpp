#include "wcilink/grading.hpp"

#include <numeric>

namespace wcilink {

WeightVector::WeightVector(std::vector<long> numerators, long denominator)
    : num_(std::move(numerators)), r_(denominator) {
  if (r_ < 1) throw WeightError("weight denominator must be >= 1");
}

WeightVector WeightVector::from_rationals(const std::vector<Rational>& ws) {
  mpz_class l = 1;
  for (const auto& q : ws) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<long> nums;
  for (const auto& q : ws) {
    mpz_class n = q.get_num() * (l / q.get_den());
    nums.push_back(n.get_si());
  }
  return WeightVector(std::move(nums), l.get_si());
}

std::string WeightVector::to_string() const {
  std::string body = "(";
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (i) body += ",";
    body += std::to_string(num_[i]);
  }
  body += ")";
  return r_ == 1 ? body : "1/" + std::to_string(r_) + body;
}

Rational weight_of(const Monomial& m, const WeightVector& w) {
  if (m.size() != w.size()) {
    throw WeightError("weight vector has " + std::to_string(w.size()) + " entries, monomial has " +
                      std::to_string(m.size()));
  }
  long s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s += w.numerators()[i] * m[i];
  return Rational(s, w.denominator());
}

Polynomial w_component(const Polynomial& f, const WeightVector& w, const Rational& d) {
  Polynomial out(f.ring());
  for (const auto& [m, c] : f.terms()) {
    if (weight_of(m, w) == d) out.add_term(m, c);
  }
  return out;
}

std::map<Rational, Polynomial> w_components(const Polynomial& f, const WeightVector& w) {
  std::map<Rational, Polynomial> out;
  for (const auto& [m, c] : f.terms()) {
    auto it = out.try_emplace(weight_of(m, w), f.ring()).first;
    it->second.add_term(m, c);
  }
  return out;
}

Rational w_order(const Polynomial& f, const WeightVector& w) {
  if (f.is_zero()) throw WeightError("weighted order of the zero polynomial");
  std::optional<Rational> best;
  for (const auto& [m, c] : f.terms()) {
    Rational q = weight_of(m, w);
    if (!best || q < *best) best = q;
  }
  return *best;
}

bool contains_monomial(const Polynomial& f, const Monomial& m) { return !f.coefficient(m).is_zero(); }

std::optional<Rational> quasi_homogeneous_degree(const Polynomial& f, const WeightVector& w) {
  if (f.is_zero()) throw WeightError("degree of the zero polynomial");
  const Rational d = weight_of(f.terms().begin()->first, w);
  for (const auto& [m, c] : f.terms()) {
    if (weight_of(m, w) != d) return std::nullopt;
  }
  return d;
}

RingPtr prepend_variable(const RingPtr& ring, const std::string& u) {
  if (ring->find(u)) throw std::invalid_argument("variable '" + u + "' already exists");
  std::vector<std::string> names{u};
  names.insert(names.end(), ring->names().begin(), ring->names().end());
  return make_ring(std::move(names));
}

Polynomial toric_transform(const Polynomial& f, const WeightVector& w, const std::string& u) {
  RingPtr target = prepend_variable(f.ring(), u);
  Polynomial out(target);
  if (f.is_zero()) return out;
  const Rational d0 = w_order(f, w);
  for (const auto& [m, c] : f.terms()) {
    const Rational shift = weight_of(m, w) - d0;
    if (shift.get_den() != 1) {
      throw WeightError("u-exponent " + rational_string(shift) + " of " +
                        monomial_string(*f.ring(), m) + " is not integral");
    }
    Monomial e{static_cast<int>(shift.get_num().get_si())};
    e.insert(e.end(), m.begin(), m.end());
    out.add_term(e, c);
  }
  return out;
}

}  // namespace wcilink
