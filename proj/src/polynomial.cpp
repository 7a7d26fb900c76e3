#include "wcilink/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace wcilink {

Ring::Ring(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw std::invalid_argument("empty variable name");
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) throw std::invalid_argument("duplicate variable name " + names_[i]);
    }
  }
}

std::optional<std::size_t> Ring::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Ring::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw UnknownVariable("unknown variable '" + std::string(name) + "'");
}

RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const Ring>(std::move(names));
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && a->names() == b->names());
}

int degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool GrevlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const int da = degree(a);
  const int db = degree(b);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw std::invalid_argument("polynomial needs a ring");
}

Polynomial::Polynomial(RingPtr ring, const Coefficient& c) : Polynomial(std::move(ring)) {
  add_term(Monomial(ring_->size(), 0), c);
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i) {
  if (i >= ring->size()) throw UnknownVariable("variable index out of range");
  Monomial m(ring->size(), 0);
  m[i] = 1;
  return term(std::move(ring), std::move(m), Coefficient(1));
}

Polynomial Polynomial::variable(RingPtr ring, std::string_view name) {
  const std::size_t i = ring->index(name);
  return variable(std::move(ring), i);
}

Polynomial Polynomial::term(RingPtr ring, Monomial m, const Coefficient& c) {
  if (m.size() != ring->size()) throw std::invalid_argument("monomial length does not match ring");
  Polynomial p(std::move(ring));
  p.add_term(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree(terms_.begin()->first) == 0);
}

Coefficient Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Coefficient(0) : it->second;
}

Coefficient Polynomial::constant_term() const { return coefficient(Monomial(ring_->size(), 0)); }

int Polynomial::total_degree() const {
  // Grevlex is degree-compatible, so the first term has maximal degree.
  return terms_.empty() ? -1 : degree(terms_.begin()->first);
}

int Polynomial::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

int Polynomial::min_degree_in(std::size_t var) const {
  if (terms_.empty()) return -1;
  int d = terms_.begin()->first[var];
  for (const auto& [m, c] : terms_) d = std::min(d, m[var]);
  return d;
}

bool Polynomial::involves(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first[var] > 0; });
}

std::vector<std::size_t> Polynomial::variables() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    if (involves(i)) out.push_back(i);
  }
  return out;
}

std::uint64_t Polynomial::modulus() const {
  for (const auto& [m, c] : terms_) {
    if (c.modulus() != 0) return c.modulus();
  }
  return 0;
}

Polynomial Polynomial::coefficient_of(std::size_t var, int k) const {
  Polynomial out(ring_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == k) {
      Monomial r = m;
      r[var] = 0;
      out.add_term(r, c);
    }
  }
  return out;
}

const std::pair<const Monomial, Coefficient>& Polynomial::leading_term() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return *terms_.begin();
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial out(ring_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial r = m;
    r[var] -= 1;
    out.add_term(r, c * Coefficient(static_cast<long>(m[var])));
  }
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(ring_, Coefficient(1));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::in_ring(const RingPtr& target) const {
  if (same_ring(ring_, target)) {
    Polynomial out = *this;
    out.ring_ = target;
    return out;
  }
  std::vector<std::optional<std::size_t>> where(ring_->size());
  for (std::size_t i = 0; i < ring_->size(); ++i) where[i] = target->find(ring_->name(i));
  Polynomial out(target);
  for (const auto& [m, c] : terms_) {
    Monomial r(target->size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!where[i]) {
        throw RingMismatch("variable '" + ring_->name(i) + "' is missing from the target ring");
      }
      r[*where[i]] += m[i];
    }
    out.add_term(r, c);
  }
  return out;
}

Polynomial Polynomial::reduce(std::uint64_t p) const {
  Polynomial out(ring_);
  for (const auto& [m, c] : terms_) out.add_term(m, c.reduce(p));
  return out;
}

Polynomial Polynomial::scaled(const Coefficient& c) const {
  Polynomial out(ring_);
  if (c.is_zero()) return out;
  for (const auto& [m, a] : terms_) out.add_term(m, a * c);
  return out;
}

void Polynomial::add_term(const Monomial& m, const Coefficient& c) {
  if (m.size() != ring_->size()) throw std::invalid_argument("monomial length does not match ring");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Polynomial::check_ring(const Polynomial& o) const {
  if (!same_ring(ring_, o.ring_)) throw RingMismatch("polynomials live in different rings");
}

Polynomial Polynomial::operator-() const { return scaled(Coefficient(-1)); }

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_ring(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_ring(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_ring(b);
  Polynomial out(a.ring_);
  Monomial m(a.ring_->size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  a.check_ring(b);
  if (a.terms_.size() != b.terms_.size()) return false;
  auto it = b.terms_.begin();
  for (const auto& [m, c] : a.terms_) {
    if (it->first != m || !(it->second == c)) return false;
    ++it;
  }
  return true;
}

std::string monomial_string(const Ring& ring, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += ring.name(i);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string coeff = c.to_string();
    bool negative = !coeff.empty() && coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool unit_monomial = degree(m) == 0;
    if (unit_monomial) {
      os << coeff;
    } else if (coeff == "1") {
      os << monomial_string(*ring_, m);
    } else {
      os << coeff << "*" << monomial_string(*ring_, m);
    }
  }
  return os.str();
}

Coefficient evaluate(const Polynomial& f, const std::vector<Coefficient>& point) {
  if (point.size() != f.ring()->size()) throw std::invalid_argument("point length does not match ring");
  // Cache powers per variable; exponents here stay small.
  std::vector<std::vector<Coefficient>> powers(point.size());
  auto power = [&](std::size_t i, int e) -> const Coefficient& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Coefficient(1));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * point[i]);
    return cache[static_cast<std::size_t>(e)];
  };
  Coefficient sum(0);
  for (const auto& [m, c] : f.terms()) {
    Coefficient t = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] > 0) t *= power(i, m[i]);
    }
    sum += t;
  }
  return sum;
}

std::vector<std::vector<Polynomial>> jacobian(const std::vector<Polynomial>& fs) {
  std::vector<std::vector<Polynomial>> rows;
  for (const auto& f : fs) {
    std::vector<Polynomial> row;
    for (std::size_t i = 0; i < f.ring()->size(); ++i) row.push_back(f.derivative(i));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::size_t matrix_rank(std::vector<std::vector<Coefficient>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const Coefficient inv = rows[rank][c].inverse();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c].is_zero()) continue;
      const Coefficient factor = rows[r][c] * inv;
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= factor * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace wcilink
