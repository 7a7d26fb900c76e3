#include "wcilink/algorithms.hpp"

#include <algorithm>
#include <set>

#include "wcilink/univariate.hpp"

namespace wcilink {

namespace {

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

// f restricted to x_i = values[i] for every i != var, as a univariate mod p.
UPoly specialize(const Polynomial& f, std::size_t var, const std::vector<std::uint64_t>& values,
                 std::uint64_t p) {
  std::vector<std::uint64_t> c(static_cast<std::size_t>(std::max(f.degree_in(var), 0) + 1), 0);
  for (const auto& [m, coeff] : f.terms()) {
    std::uint64_t t = coeff.reduce(p).residue_value();
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i != var && m[i] > 0) t = mul_mod(t, pow_mod(values[i], static_cast<std::uint64_t>(m[i]), p), p);
    }
    auto& slot = c[static_cast<std::size_t>(m[var])];
    slot = (slot + t) % p;
  }
  return UPoly(std::move(c), p);
}

std::vector<std::uint64_t> random_point(std::size_t n, std::uint64_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
  std::vector<std::uint64_t> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

std::set<std::size_t> variable_set(const Polynomial& f) {
  auto v = f.variables();
  return {v.begin(), v.end()};
}

// Does some variable of the monomial m divide every term of f?
bool shares_variable_with(const Polynomial& monomial, const Polynomial& f) {
  const Monomial& m = monomial.terms().begin()->first;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] > 0 && f.min_degree_in(i) > 0) return true;
  }
  return false;
}

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  if (n == 0 || n > 1000000) return out;
  const long v = n.get_si();
  for (long d = 1; d <= v; ++d) {
    if (v % d == 0) out.emplace_back(d);
  }
  return out;
}

// Rational roots of a univariate with rational coefficients (small coefficients only).
std::vector<Rational> rational_roots(const Polynomial& f, std::size_t var) {
  std::vector<Rational> out;
  mpz_class l = 1;
  for (const auto& [m, c] : f.terms()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rational().get_den_mpz_t());
  }
  const int lo = f.min_degree_in(var);
  const int hi = f.degree_in(var);
  const mpz_class a0 = Rational(f.coefficient_of(var, lo).constant_term().rational() * l).get_num();
  const mpz_class an = Rational(f.coefficient_of(var, hi).constant_term().rational() * l).get_num();
  if (lo > 0) out.emplace_back(0);
  std::set<Rational> seen;
  for (const auto& d : divisors(a0)) {
    for (const auto& e : divisors(an)) {
      for (int sign : {1, -1}) {
        Rational r(sign * d, e);
        r.canonicalize();
        if (!seen.insert(r).second) continue;
        std::vector<Coefficient> pt(f.ring()->size(), Coefficient(0));
        pt[var] = Coefficient(r);
        if (evaluate(f, pt).is_zero()) out.push_back(r);
      }
    }
  }
  return out;
}

// Search for a factor (x - r) or, for a binary form in (a, b), (a - r b).
std::optional<Polynomial> linear_factor(const Polynomial& f, std::mt19937_64& rng) {
  const auto vars = f.variables();
  const std::uint64_t p = f.modulus();
  const RingPtr& ring = f.ring();
  auto candidates_for = [&](const Polynomial& uni, std::size_t var) {
    std::vector<Coefficient> out;
    if (p != 0) {
      for (auto r : roots(to_upoly(uni, var, p), rng)) out.push_back(Coefficient::residue(static_cast<std::int64_t>(r), p));
    } else {
      for (const auto& r : rational_roots(uni, var)) out.emplace_back(r);
    }
    return out;
  };
  if (vars.size() == 1) {
    const std::size_t x = vars[0];
    for (const auto& r : candidates_for(f, x)) {
      Polynomial lin = Polynomial::variable(ring, x) - Polynomial(ring, r);
      if (exact_quotient(f, lin)) return lin;
    }
    return std::nullopt;
  }
  if (vars.size() == 2) {
    bool homogeneous = true;
    const int d = f.total_degree();
    for (const auto& [m, c] : f.terms()) homogeneous = homogeneous && degree(m) == d;
    if (!homogeneous) return std::nullopt;
    const std::size_t a = vars[0];
    const std::size_t b = vars[1];
    Polynomial dehom(ring);
    for (const auto& [m, c] : f.terms()) {
      Monomial r = m;
      r[b] = 0;
      dehom.add_term(r, c);
    }
    for (const auto& r : candidates_for(dehom, a)) {
      Polynomial lin = Polynomial::variable(ring, a) - Polynomial::variable(ring, b).scaled(r);
      if (exact_quotient(f, lin)) return lin;
    }
  }
  return std::nullopt;
}

}  // namespace

DivisionResult divide_with_remainder(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw std::domain_error("division by the zero polynomial");
  const auto& [lm, lc] = g.leading_term();
  const Coefficient lc_inv = lc.inverse();
  Polynomial q(f.ring());
  Polynomial r(f.ring());
  Polynomial rest = f;
  Monomial shifted(lm.size());
  while (!rest.is_zero()) {
    const auto [m, c] = rest.leading_term();
    if (divides(lm, m)) {
      Monomial qm(m.size());
      for (std::size_t i = 0; i < m.size(); ++i) qm[i] = m[i] - lm[i];
      const Coefficient qc = c * lc_inv;
      q.add_term(qm, qc);
      for (const auto& [gm, gc] : g.terms()) {
        for (std::size_t i = 0; i < gm.size(); ++i) shifted[i] = gm[i] + qm[i];
        rest.add_term(shifted, -(qc * gc));
      }
    } else {
      r.add_term(m, c);
      rest.add_term(m, -c);
    }
  }
  return {std::move(q), std::move(r)};
}

std::optional<Polynomial> exact_quotient(const Polynomial& f, const Polynomial& g) {
  auto d = divide_with_remainder(f, g);
  if (!d.remainder.is_zero()) return std::nullopt;
  return std::move(d.quotient);
}

Polynomial determinant(std::vector<std::vector<Polynomial>> m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("determinant of an empty matrix");
  const RingPtr ring = m[0][0].ring();
  Polynomial prev(ring, Coefficient(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return Polynomial(ring);
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto q = exact_quotient(num, prev);
        if (!q) throw std::logic_error("Bareiss step was not exact");
        m[i][j] = std::move(*q);
      }
    }
    prev = m[k][k];
  }
  Polynomial det = m[n - 1][n - 1];
  return negate ? -det : det;
}

std::vector<std::vector<Polynomial>> sylvester_matrix(const Polynomial& f, const Polynomial& g,
                                                      std::size_t var) {
  const int df = f.degree_in(var);
  const int dg = g.degree_in(var);
  const auto n = static_cast<std::size_t>(df + dg);
  const RingPtr& ring = f.ring();
  std::vector<std::vector<Polynomial>> s(n, std::vector<Polynomial>(n, Polynomial(ring)));
  // Row i holds x^(dg-1-i) * f, then x^(df-1-j) * g; columns by descending power.
  for (int i = 0; i < dg; ++i) {
    for (int k = 0; k <= df; ++k) s[i][i + df - k] = f.coefficient_of(var, k);
  }
  for (int j = 0; j < df; ++j) {
    for (int k = 0; k <= dg; ++k) s[dg + j][j + dg - k] = g.coefficient_of(var, k);
  }
  return s;
}

Polynomial resultant(const Polynomial& f, const Polynomial& g, std::size_t var) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant with a zero polynomial");
  if (f.degree_in(var) + g.degree_in(var) == 0) return Polynomial(f.ring(), Coefficient(1));
  return determinant(sylvester_matrix(f, g, var));
}

bool coprime_certificate(const Polynomial& a, const Polynomial& b, std::mt19937_64& rng, std::string* how,
                         std::uint64_t p) {
  auto say = [&](const std::string& s) {
    if (how) *how = s;
    return true;
  };
  if (a.is_zero()) return b.is_constant() && !b.is_zero() && say("unit");
  if (b.is_zero()) return a.is_constant() && say("unit");
  if (a.is_constant() || b.is_constant()) return say("unit");
  const auto va = variable_set(a);
  const auto vb = variable_set(b);
  std::vector<std::size_t> shared;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(shared));
  if (shared.empty()) return say("disjoint variables");
  if (a.is_monomial()) return !shares_variable_with(a, b) && say("monomial against non-divisible");
  if (b.is_monomial()) return !shares_variable_with(b, a) && say("monomial against non-divisible");
  const std::uint64_t q = a.modulus() ? a.modulus() : (b.modulus() ? b.modulus() : p);
  for (std::size_t x : shared) {
    bool certified = false;
    for (int attempt = 0; attempt < 8 && !certified; ++attempt) {
      const auto pt = random_point(a.ring()->size(), q, rng);
      UPoly ua, ub;
      try {
        ua = specialize(a, x, pt, q);
        ub = specialize(b, x, pt, q);
      } catch (const std::domain_error&) {
        return false;
      }
      if (ua.degree() != a.degree_in(x) || ub.degree() != b.degree_in(x)) continue;
      certified = gcd(ua, ub).degree() == 0;
    }
    if (!certified) return false;
  }
  return say("specialized gcd is 1 in each shared variable");
}

std::string to_string(Irreducibility k) {
  switch (k) {
    case Irreducibility::Irreducible: return "irreducible";
    case Irreducibility::Reducible: return "reducible";
    case Irreducibility::Unknown: return "unknown";
  }
  return "unknown";
}

IrreducibilityVerdict irreducibility_verdict(const Polynomial& f, int trials, std::uint64_t seed, std::uint64_t p) {
  if (f.is_constant()) throw std::invalid_argument("irreducibility of a unit or zero");
  std::mt19937_64 rng(seed);
  const RingPtr& ring = f.ring();
  IrreducibilityVerdict v;
  auto reducible = [&](Polynomial g, std::string method) {
    auto h = exact_quotient(f, g);
    if (!h || !(g * *h == f)) throw std::logic_error("factor certificate failed to multiply back");
    v.kind = Irreducibility::Reducible;
    v.method = std::move(method);
    v.witness = "(" + g.to_string() + ") * (" + h->to_string() + ")";
    v.factors = std::make_pair(std::move(g), std::move(*h));
    return v;
  };

  if (f.total_degree() == 1) {
    v.kind = Irreducibility::Irreducible;
    v.method = "linear";
    return v;
  }
  for (std::size_t i = 0; i < ring->size(); ++i) {
    if (f.min_degree_in(i) > 0) return reducible(Polynomial::variable(ring, i), "monomial factor");
  }
  for (std::size_t i = 0; i < ring->size(); ++i) {
    if (f.degree_in(i) != 1) continue;
    std::string how;
    if (coprime_certificate(f.coefficient_of(i, 1), f.coefficient_of(i, 0), rng, &how, p)) {
      v.kind = Irreducibility::Irreducible;
      v.method = "linear in " + ring->name(i);
      v.witness = how;
      return v;
    }
  }
  if (auto lin = linear_factor(f, rng)) return reducible(*lin, "linear factor");

  Polynomial fp = f;
  try {
    fp = f.modulus() ? f : f.reduce(p);
  } catch (const std::domain_error&) {
    return v;
  }
  const std::uint64_t q = fp.modulus();
  const int d = f.total_degree();
  RingPtr line = make_ring({"s"});
  std::uniform_int_distribution<std::uint64_t> dist(0, q - 1);
  for (int t = 0; t < trials; ++t) {
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < ring->size(); ++i) {
      Polynomial im(line);
      im.add_term({0}, Coefficient::residue(static_cast<std::int64_t>(dist(rng)), q));
      im.add_term({1}, Coefficient::residue(static_cast<std::int64_t>(dist(rng)), q));
      images.push_back(std::move(im));
    }
    Polynomial r(line);
    for (const auto& [m, c] : fp.terms()) {
      Polynomial term(line, c);
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] > 0) term *= images[i].pow(static_cast<unsigned>(m[i]));
      }
      r += term;
    }
    const UPoly u = to_upoly(r, 0, q);
    if (u.degree() == d && is_irreducible(u)) {
      v.kind = Irreducibility::Irreducible;
      v.method = "line restriction mod " + std::to_string(q);
      v.witness = "irreducible restriction of degree " + std::to_string(d) + " after " + std::to_string(t + 1) +
                  " trial(s)";
      return v;
    }
  }
  v.method = "no certificate after " + std::to_string(trials) + " trial(s)";
  return v;
}

}  // namespace wcilink
