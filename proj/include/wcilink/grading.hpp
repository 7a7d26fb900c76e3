// Rational weight vectors and the filtration they induce on polynomials.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wcilink/polynomial.hpp"

namespace wcilink {

/// Weights (n_0, ..., n_k) / r with r >= 1.
class WeightVector {
 public:
  WeightVector() = default;
  WeightVector(std::vector<long> numerators, long denominator = 1);
  static WeightVector from_rationals(const std::vector<Rational>& ws);

  std::size_t size() const { return num_.size(); }
  long denominator() const { return r_; }
  const std::vector<long>& numerators() const { return num_; }
  Rational operator[](std::size_t i) const { return Rational(num_.at(i), r_); }

  /// "1/11(6,1,7,2,9,0)" or "(0,4,1,2,1)".
  std::string to_string() const;

 private:
  std::vector<long> num_;
  long r_ = 1;
};

class WeightError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Rational weight_of(const Monomial& m, const WeightVector& w);

/// Terms of f of w-weight exactly d.
Polynomial w_component(const Polynomial& f, const WeightVector& w, const Rational& d);

/// All nonzero components keyed by weight; their sum is f.
std::map<Rational, Polynomial> w_components(const Polynomial& f, const WeightVector& w);

/// Smallest term weight; throws on the zero polynomial.
Rational w_order(const Polynomial& f, const WeightVector& w);

bool contains_monomial(const Polynomial& f, const Monomial& m);

/// Degree if f is w-homogeneous; throws WeightError on zero.
std::optional<Rational> quasi_homogeneous_degree(const Polynomial& f, const WeightVector& w);

/// u^{-d0} f(x_i u^{w_i}) over the ring (u, x_0, ...), d0 the least term weight.
Polynomial toric_transform(const Polynomial& f, const WeightVector& w, const std::string& u);

/// Ring with an extra leading variable.
RingPtr prepend_variable(const RingPtr& ring, const std::string& u);

}  // namespace wcilink
