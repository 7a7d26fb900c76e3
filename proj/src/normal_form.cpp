#include <algorithm>
#include <random>

#include "wcilink/algorithms.hpp"
#include "wcilink/links.hpp"

namespace wcilink {

namespace {

const std::vector<std::string> kNames{"x", "y", "z", "t", "v", "w"};
const std::vector<long> kWeights{1, 2, 3, 4, 7, 11};

Monomial mono(std::initializer_list<int> e) { return Monomial(e); }

Coefficient draw(const Field& f, std::mt19937_64& rng) {
  if (f.is_prime()) return Coefficient::residue(static_cast<std::int64_t>(std::uniform_int_distribution<std::uint64_t>(1, f.p - 1)(rng)), f.p);
  long c = 0;
  while (c == 0) c = std::uniform_int_distribution<long>(-9, 9)(rng);
  return Coefficient(c);
}

Polynomial random_form(const RingPtr& ring, const std::vector<long>& weights, long d, const Field& f,
                       std::mt19937_64& rng, const std::vector<std::size_t>& allowed) {
  Polynomial out(ring);
  std::vector<long> w(weights.size(), 0);
  for (auto i : allowed) w[i] = weights[i];
  for (auto& m : monomials_of_degree(w, d)) {
    bool ok = true;
    for (std::size_t i = 0; i < m.size(); ++i) ok = ok && (m[i] == 0 || std::find(allowed.begin(), allowed.end(), i) != allowed.end());
    if (ok) out.add_term(m, draw(f, rng));
  }
  return out;
}

Polynomial var(const RingPtr& r, const char* n) { return Polynomial::variable(r, n); }

Coefficient det(std::vector<std::vector<Coefficient>> m) {
  const std::size_t n = m.size();
  Coefficient d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return Coefficient(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      d = -d;
    }
    d *= m[c][c];
    const Coefficient inv = m[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      const Coefficient k = m[r][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[r][j] -= k * m[c][j];
    }
  }
  return d;
}

}  // namespace

WPS x1214_ambient() { return WPS(kWeights, kNames); }
WPS hat_ambient() { return WPS({1, 1, 1, 2, 3}, {"u", "y", "z", "t", "v"}); }

std::vector<Monomial> monomials_of_degree(const std::vector<long>& weights, long d) {
  std::vector<Monomial> out;
  Monomial cur(weights.size(), 0);
  // Depth-first over exponents; weight-zero variables stay at exponent 0.
  auto rec = [&](auto&& self, std::size_t i, long left) -> void {
    if (i == weights.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    if (weights[i] <= 0) {
      self(self, i + 1, left);
      return;
    }
    for (long e = left / weights[i]; e >= 0; --e) {
      cur[i] = static_cast<int>(e);
      self(self, i + 1, left - e * weights[i]);
    }
    cur[i] = 0;
  };
  rec(rec, 0, d);
  return out;
}

WCISpec random_member_X1214(const Field& field, std::uint64_t seed, bool lambda_zero) {
  const WPS p = x1214_ambient();
  const RingPtr r = p.ring();
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 12014);
  const std::vector<std::size_t> all{0, 1, 2, 3, 4, 5};
  if (!lambda_zero) {
    return WCISpec{p, {random_form(r, kWeights, 12, field, rng, all), random_form(r, kWeights, 14, field, rng, all)}, {{12}, {14}}};
  }
  const Polynomial x = var(r, "x"), y = var(r, "y"), z = var(r, "z"), w = var(r, "w"), v = var(r, "v");
  const Polynomial a12 = random_form(r, kWeights, 12, field, rng, {1, 3});
  const Polynomial b4 = random_form(r, kWeights, 4, field, rng, {1, 3});
  const Polynomial c12 = random_form(r, kWeights, 12, field, rng, {1, 3});
  Polynomial g14(r);
  const Polynomial g14_all = random_form(r, kWeights, 14, field, rng, {0, 1, 2, 3});
  for (const auto& [m, c] : g14_all.terms()) {
    if (m[0] + m[2] >= 2) g14.add_term(m, c);
  }
  const Polynomial F1 = -(w * x) + a12 + z.pow(4) + z * z * y * b4;
  const Polynomial F2 = w * z + y * c12 + v * v + g14;

  Substitution s(r, r);
  s.set("x", x.scaled(draw(field, rng)));
  s.set("y", y.scaled(draw(field, rng)) + random_form(r, kWeights, 2, field, rng, {0}));
  s.set("z", z.scaled(draw(field, rng)) + random_form(r, kWeights, 3, field, rng, {0, 1}));
  s.set("t", var(r, "t").scaled(draw(field, rng)) + random_form(r, kWeights, 4, field, rng, {0, 1, 2}));
  s.set("v", v.scaled(draw(field, rng)) + random_form(r, kWeights, 7, field, rng, {0, 1, 2, 3}));
  s.set("w", w.scaled(draw(field, rng)) + random_form(r, kWeights, 11, field, rng, {0, 1, 2, 3, 4}));
  const Polynomial G1 = s.apply(F1).scaled(draw(field, rng));
  const Polynomial G2 = s.apply(F2).scaled(draw(field, rng)) + random_form(r, kWeights, 2, field, rng, {0, 1}) * s.apply(F1);
  return WCISpec{p, {G1, G2}, {{12}, {14}}};
}

Coefficient binary_cubic_resultant(const Polynomial& a, const Polynomial& c, std::size_t y, std::size_t t) {
  const std::size_t n = a.ring()->size();
  auto coeffs = [&](const Polynomial& f) {
    std::vector<Coefficient> out;
    for (int i = 3; i >= 0; --i) {
      Monomial m(n, 0);
      m[y] = 2 * i;
      m[t] = 3 - i;
      out.push_back(f.coefficient(m));
    }
    return out;
  };
  const auto A = coeffs(a), C = coeffs(c);
  std::vector<std::vector<Coefficient>> m(6, std::vector<Coefficient>(6));
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t j = 0; j < 4; ++j) {
      m[r][r + j] = A[j];
      m[r + 3][r + j] = C[j];
    }
  }
  return det(m);
}

NormalFormX1214 normal_form_X1214(const WCISpec& x) {
  if (x.equations.size() != 2) throw CertificateFailure("shape", "X_{12,14} needs two equations");
  return normal_form_X1214(x.equations[0], x.equations[1]);
}

NormalFormX1214 normal_form_X1214(const Polynomial& F1_in, const Polynomial& F2_in) {
  const WPS p = x1214_ambient();
  const RingPtr r = p.ring();
  Polynomial F1 = F1_in.in_ring(r), F2 = F2_in.in_ring(r);
  if (quasi_homogeneous_degree(F1, p.grading()) != Rational(12) || quasi_homogeneous_degree(F2, p.grading()) != Rational(14)) {
    throw CertificateFailure("shape", "equations must be quasi-homogeneous of degrees 12 and 14");
  }
  const Polynomial x = var(r, "x"), y = var(r, "y"), z = var(r, "z"), t = var(r, "t"), v = var(r, "v"), w = var(r, "w");
  const std::size_t iv = 4, iw = 5;

  auto criterion = [&](const Polynomial& f, const Monomial& m, const std::string& label) {
    const Coefficient c = f.coefficient(m);
    if (c.is_zero()) throw CertificateFailure("monomial " + label, label + " is absent, so X is not quasismooth there");
    return c;
  };
  criterion(F1, mono({1, 0, 0, 0, 0, 1}), "wx in F1");
  criterion(F2, mono({0, 0, 1, 0, 0, 1}), "wz in F2");
  criterion(F2, mono({0, 0, 0, 0, 2, 0}), "v^2 in F2");
  criterion(F1, mono({0, 0, 4, 0, 0, 0}), "z^4 in F1");

  NormalFormX1214 nf{r, F1, F2, Polynomial(r), Polynomial(r), Polynomial(r), Polynomial(r), Coefficient(0),
                     Substitution::identity(r), Substitution::identity(r), {Coefficient(1), Coefficient(1)},
                     {}, Coefficient(0), Coefficient(0), {}};
  std::vector<Substitution> inverses;
  auto change = [&](const Substitution& s, const Substitution& inv, std::string what) {
    F1 = s.apply(F1);
    F2 = s.apply(F2);
    nf.change = nf.change.then(s);
    inverses.push_back(inv);
    nf.steps.push_back(std::move(what));
  };
  auto scale = [&](std::size_t j, const Coefficient& k, std::string what) {
    (j == 0 ? F1 : F2) = (j == 0 ? F1 : F2).scaled(k);
    nf.scale[j] *= k;
    nf.steps.push_back(std::move(what));
  };

  scale(0, -F1.coefficient(mono({1, 0, 0, 0, 0, 1})).inverse(), "scale F1 so that wx has coefficient -1");

  {
    const Polynomial A = F2.coefficient_of(iw, 1);
    const Coefficient al = A.coefficient(mono({0, 0, 1, 0, 0, 0}));
    const Polynomial rest = A - z.scaled(al);
    if (!(rest.is_zero() && al.is_one())) {
      Substitution s(r, r), inv(r, r);
      s.set("z", (z - rest).scaled(al.inverse()));
      inv.set("z", z.scaled(al) + rest);
      change(s, inv, "z -> (z - (" + rest.to_string() + "))/(" + al.to_string() + ") so that F2 contains w only as wz");
    }
  }
  {
    const Coefficient cv = F2.coefficient(mono({0, 0, 0, 0, 2, 0}));
    if (!cv.is_one()) {
      Substitution s(r, r), inv(r, r);
      s.set("w", w.scaled(cv));
      inv.set("w", w.scaled(cv.inverse()));
      change(s, inv, "w -> " + cv.to_string() + "*w");
      scale(0, cv.inverse(), "divide F1 by " + cv.to_string());
      scale(1, cv.inverse(), "divide F2 by " + cv.to_string());
    }
  }
  // Alternate completing the square in v and moving x-multiples of F1 into w
  // until neither changes anything; the second round is already stable.
  for (int round = 0;; ++round) {
    if (round == 6) throw Inconsistency("normal form did not stabilize");
    bool moved = false;
    const Polynomial L = F2.coefficient_of(iv, 1);
    if (!L.is_zero()) {
      const Polynomial half = L.scaled(Coefficient(1) / Coefficient(2));
      Substitution s(r, r), inv(r, r);
      s.set("v", v - half);
      inv.set("v", v + half);
      change(s, inv, "v -> v - (" + half.to_string() + ") to complete the square in F2");
      moved = true;
    }
    const Polynomial f12 = F1.coefficient_of(0, 0);
    const auto P = exact_quotient(F1 + w * x - f12, x);
    if (!P || P->involves(iw)) throw Inconsistency("x-part of F1 is not of the form -wx + x*P");
    if (!P->is_zero()) {
      Substitution s(r, r), inv(r, r);
      s.set("w", w + *P);
      inv.set("w", w - *P);
      change(s, inv, "w -> w + (" + P->to_string() + ") to absorb the x-multiples of F1");
      moved = true;
    }
    if (!moved) break;
  }
  {
    const Coefficient c = criterion(F1, mono({0, 0, 4, 0, 0, 0}), "z^4 in F1");
    if (!c.is_one()) {
      Substitution s(r, r), inv(r, r);
      s.set("x", x.scaled(c));
      inv.set("x", x.scaled(c.inverse()));
      change(s, inv, "x -> " + c.to_string() + "*x");
      scale(0, c.inverse(), "divide F1 by " + c.to_string());
    }
  }

  // Read off the parts.
  const Polynomial f12 = F1 + w * x;
  if (f12.involves(0) || f12.involves(iw)) throw Inconsistency("F1 + wx still involves x or w");
  Substitution zv0(r, r);
  zv0.set("z", Polynomial(r));
  zv0.set("v", Polynomial(r));
  nf.a12 = zv0.apply(f12);
  nf.lambda = f12.coefficient(mono({0, 1, 1, 0, 1, 0}));
  const Polynomial R = f12 - nf.a12 - (y * z * v).scaled(nf.lambda) - z.pow(4);
  const auto b4 = exact_quotient(R, z * z * y);
  if (!b4 || b4->involves(0) || b4->involves(2) || b4->involves(iv)) {
    throw Inconsistency("F1 does not split as a12 + lambda yzv + z^4 + z^2 y b4: rest " + R.to_string());
  }
  nf.b4 = *b4;
  const Polynomial g = F2 - w * z - v * v;
  if (g.involves(iv) || g.involves(iw)) throw Inconsistency("F2 - wz - v^2 involves v or w");
  Substitution xz0(r, r);
  xz0.set("x", Polynomial(r));
  xz0.set("z", Polynomial(r));
  const auto c12 = exact_quotient(xz0.apply(g), y);
  if (!c12) throw Inconsistency("g'14(0, y, 0, t) is not divisible by y");
  nf.c12 = *c12;
  nf.g14 = g - y * nf.c12;
  nf.F1 = F1;
  nf.F2 = F2;

  for (const auto& [m, c] : nf.g14.terms()) {
    if (m[0] + m[2] < 2) throw Inconsistency("g14 is not in (x, z)^2: " + monomial_string(*r, m));
  }
  if (!nf.g14.is_zero() && w_order(nf.g14, WeightVector({6, 1, 7, 2, 0, 0}, 11)) < Rational(18, 11)) {
    throw Inconsistency("g14 has weighted order below 18/11");
  }
  nf.certificates.push_back("g14 in (x, z)^2 with weighted order >= 18/11 under 1/11(6,1,7,2)");

  nf.mu = nf.a12.coefficient(mono({0, 0, 0, 3, 0, 0}));
  if (nf.mu.is_zero()) throw CertificateFailure("nondegeneracy", "t^3 is absent from a12, so (y, t) = (0, 1) solves a12 = y c12 = 0");
  nf.resultant = binary_cubic_resultant(nf.a12, nf.c12, 1, 3);
  if (nf.resultant.is_zero()) {
    throw CertificateFailure("nondegeneracy", "a12 and c12 share a root in (y^2 : t), so a12 = y c12 = 0 has a nontrivial solution");
  }
  nf.certificates.push_back("t^3 in a12 with coefficient " + nf.mu.to_string());
  nf.certificates.push_back("Res(a12, c12) over (y^2 : t) = " + nf.resultant.to_string());

  // The inverse chain runs the steps backwards.
  nf.inverse = Substitution::identity(r);
  for (auto it = inverses.rbegin(); it != inverses.rend(); ++it) nf.inverse = nf.inverse.then(*it);
  return nf;
}

}  // namespace wcilink
