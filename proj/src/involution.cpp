#include <algorithm>
#include <future>
#include <random>
#include <thread>

#include "wcilink/algorithms.hpp"
#include "wcilink/links.hpp"
#include "wcilink/univariate.hpp"

namespace wcilink {

namespace {

Polynomial vanish(const Polynomial& f, const std::vector<std::string>& names) {
  Substitution s = Substitution::identity(f.ring());
  for (const auto& n : names) s.set(n, Polynomial(f.ring()));
  return s.apply(f);
}

// z-weight of a monomial once t and v are replaced by forms of z-degree 1 and 2.
int z_weight(const Monomial& m, std::size_t iz, std::size_t it, std::size_t iv) { return m[iz] + m[it] + 2 * m[iv]; }

Polynomial z_weight_part(const Polynomial& f, int k, std::size_t iz, std::size_t it, std::size_t iv) {
  Polynomial out(f.ring());
  for (const auto& [m, c] : f.terms()) {
    if (z_weight(m, iz, it, iv) == k) out.add_term(m, c);
  }
  return out;
}

int min_degree(const Polynomial& f, std::size_t var) { return f.is_zero() ? 0 : f.min_degree_in(var); }

std::vector<Coefficient> residues(const std::vector<std::uint64_t>& pt, std::uint64_t p) {
  std::vector<Coefficient> out;
  out.reserve(pt.size());
  for (auto v : pt) out.push_back(Coefficient::residue(static_cast<std::int64_t>(v), p));
  return out;
}

std::uint64_t value_mod(const Polynomial& f, const std::vector<Coefficient>& pt, std::uint64_t p) {
  return evaluate(f, pt).reduce(p).residue_value();
}

}  // namespace

CurveCertificate exclude_degree_one_curves(const NormalFormHatX& hat, std::uint64_t p) {
  const Polynomial& F = hat.F;
  const RingPtr& r = F.ring();
  const std::size_t iu = r->index("u"), iy = r->index("y"), iz = r->index("z"), it = r->index("t"), iv = r->index("v");
  CurveCertificate out;
  Monomial t3(r->size(), 0);
  t3[it] = 3;
  out.mu = hat.a6.coefficient(t3);
  if (out.mu.is_zero()) throw CertificateFailure("curves", "t^3 does not occur in a6");

  // (i) the half-degree case.
  const Polynomial half = vanish(F, {"u", "y"});
  Monomial zt3 = t3;
  zt3[iz] = 1;
  if (!(half == Polynomial::term(r, zt3, out.mu))) {
    throw Inconsistency("F^(0, 0, z, t, v) = " + half.to_string() + " is not mu t^3 z");
  }
  out.half_locus = "(u = y = 0) on X^ is (u = y = " + half.to_string() + " = 0), the two coordinate curves";

  // (ii) the top z-weight: z^5 u^2 alone.
  int top = 0;
  for (const auto& [m, c] : F.terms()) top = std::max(top, z_weight(m, iz, it, iv));
  const Polynomial head = z_weight_part(F, top, iz, it, iv);
  Monomial z5u2(r->size(), 0);
  z5u2[iz] = 5;
  z5u2[iu] = 2;
  if (top != 5 || !head.is_monomial() || head.terms().begin()->first != z5u2) {
    throw CertificateFailure("curves", "the z-weight 5 part of F^ is " + head.to_string());
  }
  out.top_z_component = head.to_string() + " is the only term divisible by z^5 after substitution, so l1 = u";

  // (iii) F^(0, y, z, t, v) = a6 z + y c6, and its z-weight 4 part is mu z t^3.
  const Polynomial on_u0 = vanish(F, {"u"});
  const Polynomial z = Polynomial::variable(r, iz), y = Polynomial::variable(r, iy);
  if (!(on_u0 == hat.a6 * z + y * hat.c6)) throw Inconsistency("F^(0, y, z, t, v) is not a6 z + y c6");
  const Polynomial w4 = z_weight_part(on_u0, 4, iz, it, iv);
  if (!(w4 == Polynomial::term(r, zt3, out.mu))) throw Inconsistency("z-weight 4 part is " + w4.to_string());
  out.ell2_certificate = "z^4 part of F^(0, y, z, z l2 + q1, ...) is mu l2^3 with mu = " + out.mu.to_string() + ", so l2 = 0";

  // t = alpha y^2 then needs a common root of a6(1, alpha) and c6(1, alpha).
  const RingPtr tr = make_ring({"t"});
  Substitution at(r, tr);
  at.set(iy, Polynomial(tr, Coefficient(1)));
  const UPoly a = to_upoly(at.apply(hat.a6), 0, p), c = to_upoly(at.apply(hat.c6), 0, p);
  std::mt19937_64 rng(p);
  out.alpha_roots = roots(a, rng);
  for (auto alpha : out.alpha_roots) {
    if (c(alpha) == 0) throw CertificateFailure("curves", "a6 and c6 share the root alpha = " + std::to_string(alpha));
    out.lines.push_back("alpha = " + std::to_string(alpha) + ": a6(1, alpha) = 0, c6(1, alpha) = " + std::to_string(c(alpha)));
  }
  out.resultant = binary_cubic_resultant(hat.a6, hat.c6, iy, it);
  if (out.resultant.is_zero()) throw CertificateFailure("curves", "a6 and c6 have a common factor");
  out.lines.push_back("Res(a6, c6) = " + out.resultant.to_string());
  return out;
}

Involutions build_involutions(const NormalFormX1214& nf, const LinkSigma& link) {
  const RingPtr hr = link.hat.F.ring();
  const Polynomial y = Polynomial::variable(hr, "y"), z = Polynomial::variable(hr, "z"), v = Polynomial::variable(hr, "v");
  Substitution chi = Substitution::identity(hr);
  chi.set("v", -v - (y * z * z).scaled(nf.lambda));

  Involutions out{chi, link.sigma, {}, false, false, 0, 0, {}};
  const Substitution twice = chi.then(chi);
  out.chi_squared_identity = true;
  for (std::size_t i = 0; i < hr->size(); ++i) {
    out.chi_squared_identity = out.chi_squared_identity && twice.apply(Polynomial::variable(hr, i)) == Polynomial::variable(hr, i);
  }
  out.chi_preserves_hat = chi.apply(link.hat.F) == link.hat.F;

  // sigma' = chi^-1 o sigma, and chi^-1 = chi.
  const std::size_t sy = 1, sz = 2, sv = 4;
  const auto& n = link.sigma.numerators;
  out.sigma_prime.numerators[sv] = -n[sv] - (n[sy] * n[sz] * n[sz]).scaled(nf.lambda);
  out.sigma_prime.description = "X -> X^, chi^-1 o sigma";

  const RingPtr xr = nf.ring;
  auto xv = [&](const char* name) { return Polynomial::variable(xr, name); };
  const Polynomial x = xv("x"), xy = xv("y"), xz = xv("z"), xvv = xv("v"), xw = xv("w");
  const Coefficient l = nf.lambda;
  RationalMap inv{xr, xr->names(), x1214_ambient().weights(), {}, {}, "birational involution of X"};
  inv.numerators = {x, xy, xz, xv("t"), -(xvv * x) - (xy * xz * xz).scaled(l),
                    xw * x * x - (xy * xz * xvv * x).scaled(l * Coefficient(2)) - (xy * xy * xz.pow(3)).scaled(l * l)};
  const Polynomial one(xr, Coefficient(1));
  inv.denominators = {one, one, one, one, x, x * x};
  out.involution_on_X = inv;

  // Valuations of the contracted divisor (x = 0) read from the maps at z = 1.
  const std::size_t ix = xr->index("x");
  out.nu_E_v = min_degree(link.sigma.numerators[sv], ix);
  out.nu_E_prime_v = min_degree(out.sigma_prime.numerators[sv], ix);
  out.notes.push_back("chi^: v -> -v - lambda y z^2 with lambda = " + l.to_string());
  out.notes.push_back("the involution moves w as well: w -> w - (2 lambda y z v x + lambda^2 y^2 z^3)/x^2 keeps F1");
  out.notes.push_back("nu_E(v) = " + rational_string(out.nu_E_v) + ", nu_E'(v) = " + rational_string(out.nu_E_prime_v));
  return out;
}

std::vector<std::uint64_t> sample_point(const WCISpec& v, std::uint64_t p, std::uint64_t seed,
                                        const std::vector<std::string>& nonzero) {
  const RingPtr& r = v.ring();
  const std::size_t n = r->size(), k = v.equations.size();
  if (k < 1 || k > 2) throw std::invalid_argument("sample_point handles one or two equations");
  std::vector<std::size_t> keep;
  for (const auto& name : nonzero) keep.push_back(r->index(name));
  const std::size_t last = n - 1, second = n - 2;
  const RingPtr sr = make_ring({r->name(second), r->name(last)});
  std::mt19937_64 rng(seed * 0x2545F4914F6CDD1DULL + 7);
  std::uniform_int_distribution<std::uint64_t> draw(0, p - 1);

  for (int attempt = 0; attempt < 400; ++attempt) {
    std::vector<std::uint64_t> pt(n, 0);
    Substitution s(r, sr);
    for (std::size_t i = 0; i + k < n; ++i) {
      pt[i] = draw(rng);
      s.set(i, Polynomial(sr, Coefficient::residue(static_cast<std::int64_t>(pt[i]), p)));
    }
    std::vector<Polynomial> e;
    for (const auto& f : v.equations) e.push_back(s.apply(f.reduce(p)));
    // A root of the last variable, optionally after eliminating it for the second.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> candidates;
    if (k == 1) {
      const UPoly u = to_upoly(e[0], 1, p);
      if (u.degree() < 1) continue;
      for (auto root : roots(u, rng)) candidates.emplace_back(pt[second], root);
    } else {
      if (e[0].is_zero() || e[1].is_zero()) continue;
      const Polynomial res = !e[0].involves(1) ? e[0] : !e[1].involves(1) ? e[1] : resultant(e[0], e[1], 1);
      if (res.is_zero()) continue;
      const UPoly ur = to_upoly(res, 0, p);
      if (ur.degree() < 1) continue;
      const std::vector<std::uint64_t> firsts = roots(ur, rng);
      const RingPtr lr = make_ring({r->name(last)});
      for (auto a : firsts) {
        Substitution fix(sr, lr);
        fix.set(std::size_t{0}, Polynomial(lr, Coefficient::residue(static_cast<std::int64_t>(a), p)));
        const UPoly g = gcd(to_upoly(fix.apply(e[0]), 0, p), to_upoly(fix.apply(e[1]), 0, p));
        if (g.degree() < 1) continue;
        for (auto b : roots(g, rng)) candidates.emplace_back(a, b);
      }
    }
    if (candidates.empty()) continue;
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (const auto& [a, b] : candidates) {
      pt[second] = a;
      pt[last] = b;
      if (std::any_of(keep.begin(), keep.end(), [&](std::size_t i) { return pt[i] == 0; })) continue;
      const auto c = residues(pt, p);
      if (std::all_of(v.equations.begin(), v.equations.end(), [&](const Polynomial& f) { return value_mod(f, c, p) == 0; })) {
        return pt;
      }
    }
  }
  throw std::runtime_error("sample_point: retry budget exhausted");
}

std::optional<std::vector<std::uint64_t>> apply_map(const RationalMap& m, const std::vector<std::uint64_t>& pt,
                                                    std::uint64_t p) {
  const auto c = residues(pt, p);
  std::vector<std::uint64_t> out;
  bool nonzero = false;
  for (std::size_t i = 0; i < m.numerators.size(); ++i) {
    const std::uint64_t d = value_mod(m.denominators[i], c, p);
    if (d == 0) return std::nullopt;
    out.push_back(mul_mod(value_mod(m.numerators[i], c, p), inv_mod(d, p), p));
    nonzero = nonzero || out.back() != 0;
  }
  if (!nonzero) return std::nullopt;
  return out;
}

bool projectively_equal(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                        const std::vector<long>& weights, std::uint64_t p) {
  if (a.size() != b.size() || a.size() != weights.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] == 0) != (b[i] == 0)) return false;
  }
  const auto it = std::find_if(a.begin(), a.end(), [](std::uint64_t v) { return v != 0; });
  if (it == a.end()) return false;
  const std::size_t i = static_cast<std::size_t>(it - a.begin());
  // b = s . a needs s^{w_i} = b_i / a_i.
  const std::uint64_t target = mul_mod(b[i], inv_mod(a[i], p), p);
  std::vector<std::uint64_t> c(static_cast<std::size_t>(weights[i]) + 1, 0);
  c[0] = (p - target) % p;
  c.back() = 1;
  std::mt19937_64 rng(target);
  for (auto s : roots(UPoly(c, p), rng)) {
    bool ok = true;
    for (std::size_t j = 0; ok && j < a.size(); ++j) ok = mul_mod(pow_mod(s, static_cast<std::uint64_t>(weights[j]), p), a[j], p) == b[j];
    if (ok) return true;
  }
  return false;
}

InvolutionCheck verify_involution(const WCISpec& v, const RationalMap& m, std::size_t samples, std::uint64_t seed,
                                  std::uint64_t p, bool parallel) {
  const std::vector<long>& weights = m.target_weights;
  struct One {
    bool ok = true;
    std::size_t resampled = 0;
    std::string failure;
  };
  auto one = [&](std::size_t k) {
    One r;
    for (std::uint64_t attempt = 0; attempt < 50; ++attempt) {
      const auto pt = sample_point(v, p, seed * 1000003 + k * 131 + attempt);
      const auto img = apply_map(m, pt, p);
      if (!img) {
        ++r.resampled;
        continue;
      }
      const auto c = residues(*img, p);
      for (std::size_t e = 0; e < v.equations.size(); ++e) {
        if (value_mod(v.equations[e], c, p) != 0) {
          r.ok = false;
          r.failure = "sample " + std::to_string(k) + ": the image misses equation " + std::to_string(e + 1);
          return r;
        }
      }
      const auto back = apply_map(m, *img, p);
      if (!back) {
        ++r.resampled;
        continue;
      }
      if (!projectively_equal(pt, *back, weights, p)) {
        r.ok = false;
        r.failure = "sample " + std::to_string(k) + ": applying the map twice moves the point";
      }
      return r;
    }
    r.ok = false;
    r.failure = "sample " + std::to_string(k) + ": denominators vanish on every resample";
    return r;
  };

  std::vector<One> results(samples);
  if (parallel && samples > 1) {
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(8, std::thread::hardware_concurrency()));
    const std::size_t chunk = (samples + workers - 1) / workers;
    std::vector<std::future<void>> jobs;
    for (std::size_t lo = 0; lo < samples; lo += chunk) {
      jobs.push_back(std::async(std::launch::async, [&, lo] {
        for (std::size_t k = lo; k < std::min(samples, lo + chunk); ++k) results[k] = one(k);
      }));
    }
    for (auto& j : jobs) j.get();
  } else {
    for (std::size_t k = 0; k < samples; ++k) results[k] = one(k);
  }

  InvolutionCheck out;
  out.passed = true;
  for (const auto& r : results) {
    out.resampled += r.resampled;
    if (!r.ok) {
      out.passed = false;
      out.failure = r.failure;
      break;
    }
    ++out.checked;
  }
  return out;
}

}  // namespace wcilink
