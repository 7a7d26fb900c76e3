// Weighted projective spaces, rank-2 toric varieties, and complete
// intersections inside them.
#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "wcilink/grading.hpp"
#include "wcilink/polynomial.hpp"

namespace wcilink {

class AmbientError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class WPS {
 public:
  WPS(std::vector<long> weights, std::vector<std::string> names);
  /// Names x0, x1, ...
  explicit WPS(std::vector<long> weights);

  std::size_t size() const { return weights_.size(); }
  int dimension() const { return static_cast<int>(weights_.size()) - 1; }
  const std::vector<long>& weights() const { return weights_; }
  long weight(std::size_t i) const { return weights_.at(i); }
  const RingPtr& ring() const { return ring_; }
  WeightVector grading() const { return WeightVector(weights_); }
  std::size_t index(std::string_view name) const { return ring_->index(name); }

  /// Every n of the n+1 weights are coprime.
  bool well_formed() const;
  /// "P(1,2,3)" or, labelled, "P(1_u,6_w,...)".
  std::string to_string(bool labelled = false) const;

 private:
  std::vector<long> weights_;
  RingPtr ring_;
};

struct AmbientAnalysis {
  bool well_formed = false;      // the weighted projective space itself
  bool wci_well_formed = false;  // also accounts for the degrees
  long fano_index = 0;
  Rational amplitude;            // A^n for the generator A: prod d / prod a
};

AmbientAnalysis analyze_ambient(const WPS& p, const std::vector<long>& degrees);

using Bidegree = std::array<long, 2>;

long cross(const Bidegree& a, const Bidegree& b);
Bidegree primitive(const Bidegree& v);

/// Cox ring C[x_1..x_n] graded by Z^2 with irrelevant ideal
/// (x_1..x_m) ∩ (x_{m+1}..x_n) after the columns are sorted by angle.
class Rank2Toric {
 public:
  Rank2Toric(std::vector<Bidegree> columns, std::vector<std::string> names, std::size_t split);

  std::size_t size() const { return columns_.size(); }
  std::size_t split() const { return split_; }
  const std::vector<Bidegree>& columns() const { return columns_; }
  const Bidegree& column(std::size_t i) const { return columns_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  const RingPtr& ring() const { return ring_; }
  std::size_t index(std::string_view name) const { return ring_->index(name); }
  WeightVector row(int r) const;
  Bidegree bidegree(const Monomial& m) const;
  /// Common bidegree of every term, if any.
  std::optional<Bidegree> bidegree(const Polynomial& f) const;

  std::vector<std::vector<long>> matrix() const;
  std::string to_string() const;

 private:
  std::vector<Bidegree> columns_;
  std::vector<std::string> names_;
  std::size_t split_;
  RingPtr ring_;
};

/// Weighted blowup of P at the coordinate point of `center`, with weights
/// b/a_center on the remaining variables in their declared order.
/// Columns come out as u, center, then the rest stably sorted by angle.
Rank2Toric blowup_ambient(const WPS& p, std::string_view center, const WeightVector& b,
                          const std::string& u = "u");

using Ambient = std::variant<WPS, Rank2Toric>;

struct WCISpec {
  Ambient ambient;
  std::vector<Polynomial> equations;
  /// One entry per equation: {d} on a WPS, {d1, d2} on a rank-2 toric variety.
  std::vector<std::vector<long>> degrees;

  const RingPtr& ring() const;
  /// Throws AmbientError naming the first equation that is not homogeneous of its degree.
  void validate() const;
};

}  // namespace wcilink
