#include "wcilink/univariate.hpp"

#include <algorithm>

namespace wcilink {

UPoly::UPoly(std::vector<std::uint64_t> coeffs, std::uint64_t modulus) : c(std::move(coeffs)), p(modulus) {
  for (auto& v : c) v %= p;
  trim();
}

void UPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

std::uint64_t UPoly::operator()(std::uint64_t at) const {
  std::uint64_t acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = (mul_mod(acc, at, p) + c[i]) % p;
  return acc;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  UPoly r;
  r.p = a.p ? a.p : b.p;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    std::uint64_t s = (i < a.c.size() ? a.c[i] : 0) + (i < b.c.size() ? b.c[i] : 0);
    r.c[i] = s >= r.p ? s - r.p : s;
  }
  r.trim();
  return r;
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  const std::uint64_t p = a.p ? a.p : b.p;
  UPoly nb = b;
  nb.p = p;
  for (auto& v : nb.c) v = v == 0 ? 0 : p - v;
  return a + nb;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  UPoly r;
  r.p = a.p ? a.p : b.p;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      r.c[i + j] = (r.c[i + j] + mul_mod(a.c[i], b.c[j], r.p)) % r.p;
    }
  }
  r.trim();
  return r;
}

UPoly scale(const UPoly& a, std::uint64_t k) {
  UPoly r = a;
  for (auto& v : r.c) v = mul_mod(v, k % a.p, a.p);
  r.trim();
  return r;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const std::uint64_t p = b.p;
  UPoly rem = a;
  rem.p = p;
  UPoly quo;
  quo.p = p;
  if (rem.degree() < b.degree()) return {quo, rem};
  quo.c.assign(static_cast<std::size_t>(rem.degree() - b.degree() + 1), 0);
  const std::uint64_t inv = inv_mod(b.lead(), p);
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    const auto shift = static_cast<std::size_t>(rem.degree() - b.degree());
    const std::uint64_t k = mul_mod(rem.lead(), inv, p);
    quo.c[shift] = k;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      const std::uint64_t t = mul_mod(k, b.c[j], p);
      std::uint64_t& slot = rem.c[shift + j];
      slot = slot >= t ? slot - t : slot + p - t;
    }
    rem.trim();
  }
  quo.trim();
  return {quo, rem};
}

UPoly monic(const UPoly& a) {
  if (a.is_zero()) return a;
  return scale(a, inv_mod(a.lead(), a.p));
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

UPoly derivative(const UPoly& a) {
  UPoly r;
  r.p = a.p;
  for (std::size_t i = 1; i < a.c.size(); ++i) r.c.push_back(mul_mod(a.c[i], i % a.p, a.p));
  r.trim();
  return r;
}

UPoly powmod(UPoly base, std::uint64_t e, const UPoly& m) {
  UPoly result = UPoly::constant(1, m.p);
  base = divmod(base, m).second;
  while (e > 0) {
    if (e & 1U) result = divmod(result * base, m).second;
    e >>= 1U;
    if (e > 0) base = divmod(base * base, m).second;
  }
  return result;
}

namespace {

// Equal-degree splitting of a squarefree product of distinct linear factors.
void split_linear(const UPoly& f, std::mt19937_64& rng, std::vector<std::uint64_t>& out) {
  if (f.degree() <= 0) return;
  if (f.degree() == 1) {
    const UPoly m = monic(f);
    out.push_back(m.c[0] == 0 ? 0 : f.p - m.c[0]);
    return;
  }
  const std::uint64_t p = f.p;
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
  for (;;) {
    const UPoly shift({dist(rng), 1}, p);
    UPoly h = powmod(shift, (p - 1) / 2, f) - UPoly::constant(1, p);
    UPoly g = gcd(f, h);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      split_linear(g, rng, out);
      split_linear(divmod(f, g).first, rng, out);
      return;
    }
  }
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// x^(p^k) mod f by repeated Frobenius.
UPoly frobenius_power(const UPoly& f, int k) {
  UPoly r = UPoly::x(f.p);
  for (int i = 0; i < k; ++i) r = powmod(r, f.p, f);
  return r;
}

}  // namespace

std::vector<std::uint64_t> roots(const UPoly& f, std::mt19937_64& rng) {
  if (f.is_zero()) throw std::domain_error("roots of the zero polynomial");
  std::vector<std::uint64_t> out;
  const std::uint64_t p = f.p;
  if (p <= 2048) {
    for (std::uint64_t a = 0; a < p; ++a) {
      if (f(a) == 0) out.push_back(a);
    }
    return out;
  }
  if (f.degree() <= 0) return out;
  // gcd with x^p - x isolates the product of distinct linear factors.
  const UPoly xp = powmod(UPoly::x(p), p, f);
  UPoly g = gcd(f, xp - UPoly::x(p));
  split_linear(g, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_squarefree(const UPoly& f) {
  if (f.degree() <= 0) return true;
  return gcd(f, derivative(f)).degree() == 0;
}

bool is_irreducible(const UPoly& f) {
  const int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const UPoly x = UPoly::x(f.p);
  if (!(divmod(frobenius_power(f, n) - x, f).second.is_zero())) return false;
  for (std::uint64_t q : prime_divisors(static_cast<std::uint64_t>(n))) {
    const UPoly h = frobenius_power(f, n / static_cast<int>(q)) - x;
    if (gcd(f, h).degree() != 0) return false;
  }
  return true;
}

std::optional<std::uint64_t> kth_root(std::uint64_t v, unsigned k, std::uint64_t p, std::mt19937_64& rng) {
  v %= p;
  if (v == 0 || k == 1) return v;
  std::vector<std::uint64_t> c(k + 1, 0);
  c[0] = p - v;
  c[k] = 1;
  auto rs = roots(UPoly(c, p), rng);
  if (rs.empty()) return std::nullopt;
  return rs.front();
}

UPoly to_upoly(const Polynomial& f, std::size_t var, std::uint64_t p) {
  std::vector<std::uint64_t> c(static_cast<std::size_t>(std::max(f.degree_in(var), 0) + 1), 0);
  for (const auto& [m, coeff] : f.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i != var && m[i] != 0) throw std::invalid_argument("polynomial is not univariate");
    }
    c[static_cast<std::size_t>(m[var])] = coeff.reduce(p).residue_value();
  }
  return UPoly(std::move(c), p);
}

Polynomial from_upoly(const UPoly& u, const RingPtr& ring, std::size_t var) {
  Polynomial out(ring);
  Monomial m(ring->size(), 0);
  for (std::size_t i = 0; i < u.c.size(); ++i) {
    m[var] = static_cast<int>(i);
    if (u.c[i] != 0) out.add_term(m, Coefficient::residue(static_cast<std::int64_t>(u.c[i]), u.p));
  }
  return out;
}

}  // namespace wcilink
