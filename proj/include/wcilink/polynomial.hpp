// Sparse multivariate polynomials over Q or F_p.
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wcilink/coefficient.hpp"

namespace wcilink {

class UnknownVariable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RingMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Ordered list of variable names shared by the polynomials built over it.
class Ring {
 public:
  explicit Ring(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws UnknownVariable.
  std::size_t index(std::string_view name) const;

 private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names);
bool same_ring(const RingPtr& a, const RingPtr& b);

/// Exponent vector, one slot per ring variable.
using Monomial = std::vector<int>;

int degree(const Monomial& m);

/// Graded reverse lexicographic order in declared variable order.
struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Coefficient, GrevlexGreater>;

  explicit Polynomial(RingPtr ring);
  Polynomial(RingPtr ring, const Coefficient& c);

  static Polynomial variable(RingPtr ring, std::size_t i);
  static Polynomial variable(RingPtr ring, std::string_view name);
  static Polynomial term(RingPtr ring, Monomial m, const Coefficient& c);

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }

  Coefficient coefficient(const Monomial& m) const;
  Coefficient constant_term() const;
  /// -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;
  int min_degree_in(std::size_t var) const;
  bool involves(std::size_t var) const;
  std::vector<std::size_t> variables() const;
  /// Modulus carried by the coefficients; 0 when rational or zero.
  std::uint64_t modulus() const;

  /// Coefficient of var^k, as a polynomial free of var.
  Polynomial coefficient_of(std::size_t var, int k) const;
  /// Terms in grevlex-descending order; throws on zero.
  const std::pair<const Monomial, Coefficient>& leading_term() const;

  Polynomial derivative(std::size_t var) const;
  Polynomial pow(unsigned e) const;
  /// Same polynomial expressed over another ring, matching variables by name.
  Polynomial in_ring(const RingPtr& target) const;
  /// Coefficients mapped into F_p.
  Polynomial reduce(std::uint64_t p) const;
  Polynomial scaled(const Coefficient& c) const;

  void add_term(const Monomial& m, const Coefficient& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Coefficient& c, const Polynomial& p) { return p.scaled(c); }
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

 private:
  void check_ring(const Polynomial& o) const;

  RingPtr ring_;
  TermMap terms_;
};

std::string monomial_string(const Ring& ring, const Monomial& m);

/// Exact evaluation; point.size() must equal the ring size.
Coefficient evaluate(const Polynomial& f, const std::vector<Coefficient>& point);

/// Row j holds the partials of fs[j].
std::vector<std::vector<Polynomial>> jacobian(const std::vector<Polynomial>& fs);

/// Rank of a coefficient matrix by Gaussian elimination.
std::size_t matrix_rank(std::vector<std::vector<Coefficient>> rows);

}  // namespace wcilink
