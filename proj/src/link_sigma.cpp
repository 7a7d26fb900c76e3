#include <algorithm>
#include <numeric>

#include "wcilink/algorithms.hpp"
#include "wcilink/links.hpp"

namespace wcilink {

namespace {

Polynomial vanish(const Polynomial& f, const std::vector<std::string>& names) {
  Substitution s = Substitution::identity(f.ring());
  for (const auto& n : names) s.set(n, Polynomial(f.ring()));
  return s.apply(f);
}

void expect(bool ok, const std::string& what) {
  if (!ok) throw Inconsistency(what);
}

}  // namespace

RationalMap RationalMap::identity(const WPS& p) {
  RationalMap m{p.ring(), p.ring()->names(), p.weights(), {}, {}, "identity"};
  for (std::size_t i = 0; i < p.size(); ++i) {
    m.numerators.push_back(Polynomial::variable(p.ring(), i));
    m.denominators.emplace_back(p.ring(), Coefficient(1));
  }
  return m;
}

std::string RationalMap::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < numerators.size(); ++i) {
    if (i) s += " : ";
    s += numerators[i].to_string();
    if (!denominators[i].is_constant() || !denominators[i].constant_term().is_one()) {
      s += " / (" + denominators[i].to_string() + ")";
    }
  }
  return s + ")";
}

Polynomial assemble_hat(const NormalFormHatX& h) {
  const RingPtr& r = h.F.ring();
  const Polynomial u = Polynomial::variable(r, "u"), y = Polynomial::variable(r, "y"),
                   z = Polynomial::variable(r, "z"), v = Polynomial::variable(r, "v");
  const Polynomial inner = h.a6 + (y * z * v * u).scaled(h.lambda) + z.pow(4) * u * u + z * z * y * u * h.b2;
  return inner * z + y * h.c6 + v * v * u + u * h.g6;
}

Polynomial hat_germ(const NormalFormHatX& hat) {
  const RingPtr roles = make_ring({"u", "t", "y", "v"});
  Substitution s(hat.F.ring(), roles);
  s.set("z", Polynomial(roles, Coefficient(1)));
  return s.apply(hat.F);
}

LinkSigma construct_link_sigma(const NormalFormX1214& nf, int trials, std::uint64_t seed) {
  const WPS P = x1214_ambient();
  const Rank2Toric T = blowup_ambient(P, "w", WeightVector({6, 1, 7, 2, 9}, 11));
  const WeightVector wt({6, 1, 7, 2, 9, 0}, 11);
  const Polynomial cF1 = toric_transform(nf.F1, wt, "u").in_ring(T.ring());
  const Polynomial cF2 = toric_transform(nf.F2, wt, "u").in_ring(T.ring());
  const auto d1 = T.bidegree(cF1), d2 = T.bidegree(cF2);
  expect(d1 && d2, "transported equations are not bihomogeneous");
  WCISpec Y{T, {cF1, cF2}, {{(*d1)[0], (*d1)[1]}, {(*d2)[0], (*d2)[1]}}};
  Y.validate();

  LinkTrace trace = run_two_ray_game(T);
  expect(trace.walls.size() == 3 && trace.walls[0].kind == WallKind::Small && trace.walls[1].kind == WallKind::Small &&
             trace.walls[2].kind == WallKind::Divisorial && trace.walls[2].contracted == "x",
         "the 2-ray game of the blowup does not have the expected small, small, divisorial pattern");

  std::vector<std::string> certs;
  const Polynomial a12 = nf.a12.in_ring(T.ring()), yc12 = (Polynomial::variable(nf.ring, "y") * nf.c12).in_ring(T.ring());
  {
    const Polynomial r1 = vanish(cF1, {"v", "z", "x"}), r2 = vanish(cF2, {"v", "z", "x"});
    if (!(r1 == a12 && r2 == yc12)) {
      throw Inconsistency("first wall: (v=z=x=0) on Y is (" + r1.to_string() + " = " + r2.to_string() + " = 0)");
    }
    trace.walls[0].restricted = RestrictedWall{
        "(v = z = x = 0) on Y = (x = z = v = a12 = y*c12 = 0)", true,
        "t^3 in a12 (coefficient " + nf.mu.to_string() + ") and Res(a12, c12) = " + nf.resultant.to_string() +
            " != 0, so y and t cannot both vanish on the locus"};
  }
  {
    const Polynomial r1 = vanish(cF1, {"z", "x"}), r2 = vanish(cF2, {"z", "x"});
    const Polynomial u = Polynomial::variable(T.ring(), "u"), v = Polynomial::variable(T.ring(), "v");
    if (!(r1 == a12 && r2 == yc12 + v * v * u)) {
      throw Inconsistency("second wall: (z=x=0) on Y is (" + r1.to_string() + " = " + r2.to_string() + " = 0)");
    }
    trace.walls[1].restricted =
        RestrictedWall{"Gamma = (z = x = 0) on Y = (x = z = a12 = y*c12 + v^2*u = 0)", false, "a curve, flipped"};
  }
  const ConeReport cones = cone_calculus(trace, {*d1, *d2});

  const Wall& last = trace.final_wall();
  const WPS target = last.target->space;
  expect(last.target->image_variables == std::vector<std::string>{"z"}, "the contracted divisor does not map to p_z");
  certs.push_back("the divisor (x = 0) contracts to p_z: every target coordinate except z carries a positive power of x");
  Substitution x1(T.ring(), target.ring());
  x1.set("x", Polynomial(target.ring(), Coefficient(1)));
  const Polynomial h1 = x1.apply(cF1), h2 = x1.apply(cF2);
  const auto e1 = quasi_homogeneous_degree(h1, target.grading()), e2 = quasi_homogeneous_degree(h2, target.grading());
  expect(e1 && e2, "transported equations are not homogeneous on the target");
  WCISpec wci{target, {h1, h2}, {{e1->get_num().get_si()}, {e2->get_num().get_si()}}};
  wci.validate();

  const std::size_t iw = target.index("w");
  expect(h1.degree_in(iw) == 1 && h1.coefficient_of(iw, 1) == Polynomial(target.ring(), Coefficient(-1)),
         "F^1 is not of the form -w + W");
  const Polynomial W = h1 + Polynomial::variable(target.ring(), iw);
  Substitution elim = Substitution::identity(target.ring());
  elim.set(iw, W);
  const WPS hp = hat_ambient();
  const Polynomial F = elim.apply(h2).in_ring(hp.ring());

  NormalFormHatX hat{WCISpec{hp, {F}, {{7}}}, F, nf.a12.in_ring(hp.ring()), nf.b4.in_ring(hp.ring()),
                     nf.c12.in_ring(hp.ring()), Polynomial(hp.ring()), nf.lambda, wci};
  hat.hypersurface.validate();
  {
    NormalFormHatX probe = hat;
    probe.g6 = Polynomial(hp.ring());
    const auto g6 = exact_quotient(F - assemble_hat(probe), Polynomial::variable(hp.ring(), "u"));
    expect(g6.has_value() && !g6->involves(hp.index("v")), "F^ - (the displayed terms) is not u times a v-free form");
    hat.g6 = *g6;
  }
  expect(assemble_hat(hat) == F, "F^ does not reassemble");

  // Kawamata blowup at q = p_w.
  const RingPtr gr = make_ring({"x", "y", "z", "t", "v"});
  Substitution w1(nf.ring, gr);
  w1.set("w", Polynomial(gr, Coefficient(1)));
  const Germ germ{gr, {w1.apply(nf.F1), w1.apply(nf.F2)}, 11, {1, 2, 3, 4, 7}, "q = p_w"};
  DiscrepancyRecord ext = weighted_blowup_discrepancy(germ, WeightVector({6, 1, 7, 2, 9}, 11), trials, seed);

  const RingPtr xr = nf.ring;
  auto xv = [&](const char* n) { return Polynomial::variable(xr, n); };
  RationalMap sigma{xr, hp.ring()->names(), hp.weights(), {}, {}, "X -> X^ via the contraction of (x = 0)"};
  sigma.numerators = {xv("x").pow(3), xv("y") * xv("x"), xv("z"), xv("t") * xv("x").pow(2), xv("v") * xv("x").pow(2)};
  sigma.denominators.assign(5, Polynomial(xr, Coefficient(1)));

  const RingPtr hr = hp.ring();
  auto hv = [&](const char* n) { return Polynomial::variable(hr, n); };
  RationalMap inv{hr, P.ring()->names(), P.weights(), {}, {}, "X^ -> X"};
  const Polynomial u = hv("u");
  inv.numerators = {u, hv("y") * u, hv("z") * u.pow(2), hv("t") * u.pow(2), hv("v") * u.pow(4), W.in_ring(hr) * u.pow(5)};
  inv.denominators.assign(6, Polynomial(hr, Coefficient(1)));

  certs.push_back("q^ = p_z in P(1_u,1_y,1_z,2_t,3_v); F^ has no pure power of z");
  return LinkSigma{T, Y, trace, cones, ext, hat, "p_z", sigma, inv, certs};
}

// ---------------------------------------------------------------------------

Census singularity_census(const WCISpec& v, std::size_t samples, std::uint64_t seed) {
  v.validate();
  const WPS& p = std::get<WPS>(v.ambient);
  std::vector<long> degs;
  for (const auto& d : v.degrees) degs.push_back(d[0]);
  Census out;
  out.ambient = analyze_ambient(p, degs);
  const bool threefold = p.dimension() - static_cast<int>(v.equations.size()) == 3;

  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::string name = p.ring()->name(i);
    if (!on_variety(v, name)) continue;
    const auto vd = quasismooth_check(v, CoordinatePoint{name}).front();
    out.checks.push_back(vd);
    if (!vd.quasismooth) {
      SingularityReport rep;
      rep.point = "p_" + name;
      rep.kind = PointKind::NonQuasismooth;
      rep.terminal = false;
      rep.germ = GermClass::Unclassified;
      rep.witness.push_back(vd.witness);
      out.points.push_back(std::move(rep));
    } else if (p.weight(i) > 1 && threefold) {
      auto rep = classify_quotient_singularity(v, name);
      if (rep.kind != PointKind::Smooth) out.points.push_back(std::move(rep));
    }
  }
  // Maximal strata of two or more coordinates with a common weight factor.
  const std::size_t n = p.size();
  std::vector<std::vector<std::size_t>> strata;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    long g = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        idx.push_back(i);
        g = std::gcd(g, p.weight(i));
      }
    }
    if (idx.size() < 2 || g == 1) continue;
    bool maximal = true;
    for (std::size_t i = 0; i < n && maximal; ++i) {
      if (!(mask & (1u << i)) && std::gcd(g, p.weight(i)) > 1) maximal = false;
    }
    if (maximal) strata.push_back(idx);
  }
  for (const auto& idx : strata) {
    std::vector<std::string> names;
    for (auto i : idx) names.push_back(p.ring()->name(i));
    auto vds = quasismooth_check(v, CoordinateStratum{names, 4, seed, kDefaultPrime});
    for (auto& vd : vds) out.checks.push_back(std::move(vd));
  }
  for (auto& vd : quasismooth_check(v, SampledPoints{samples, seed, kDefaultPrime})) out.checks.push_back(std::move(vd));
  return out;
}

Census census_X1214(const NormalFormX1214& nf, std::size_t samples, std::uint64_t seed) {
  const WCISpec x{x1214_ambient(), {nf.F1, nf.F2}, {{12}, {14}}};
  Census c = singularity_census(x, samples, seed);
  c.certificates.push_back("the (y, t) line misses X: a12 = y*c12 = 0 has no nontrivial solution (t^3 coefficient " +
                           nf.mu.to_string() + ", resultant " + nf.resultant.to_string() + ")");
  for (const char* name : {"z", "t", "v"}) {
    if (on_variety(x, name)) throw CertificateFailure("census", std::string("p_") + name + " lies on X");
  }
  c.certificates.push_back("p_z, p_t, p_v are not on X (z^4, t^3, v^2 present)");
  return c;
}

Census singularity_census_hatX(const NormalFormHatX& hat, std::size_t samples, std::uint64_t seed, int trials) {
  const WCISpec& v = hat.hypersurface;
  const WPS& p = std::get<WPS>(v.ambient);
  Census out;
  out.ambient = analyze_ambient(p, {7});
  for (const char* name : {"u", "y"}) {
    if (!on_variety(v, name)) continue;
    const auto vd = quasismooth_check(v, CoordinatePoint{name}).front();
    out.checks.push_back(vd);
    if (!vd.quasismooth) throw Inconsistency(std::string("p_") + name + " is an extra non-quasismooth point");
  }
  for (const char* name : {"t", "v"}) {
    if (!on_variety(v, name)) throw CertificateFailure("census", std::string("p_") + name + " is not on X^");
    out.points.push_back(classify_quotient_singularity(v, name));
  }

  const Polynomial u = Polynomial::variable(p.ring(), "u"), vv = Polynomial::variable(p.ring(), "v");
  const Polynomial h = hat.F - vv * vv * u;
  for (const auto& [m, c] : h.terms()) {
    if (m[0] + m[1] + m[3] < 2) throw Inconsistency("F^ - v^2 u is not in (u, y, t)^2: " + monomial_string(*p.ring(), m));
  }
  out.certificates.push_back("F^ = v^2*u + h with h in (u, y, t)^2: along (u = y = t = 0) the only non-quasismooth point is v = 0, i.e. p_z");
  if (!on_variety(v, "z") || quasismooth_check(v, CoordinatePoint{"z"}).front().quasismooth) {
    throw Inconsistency("q^ = p_z is expected on X^ and not quasismooth");
  }
  SingularityReport q;
  q.point = "p_z";
  q.kind = PointKind::NonQuasismooth;
  q.germ = GermClass::CE6;
  q.terminal = true;
  q.witness.push_back("f^ = F^(u, y, 1, t, v) read with roles (x, y, z, t) = (u, t, y, v)");
  out.germ = analyze_cE6_germ(hat_germ(hat), trials, seed);
  out.points.push_back(std::move(q));

  for (auto& vd : quasismooth_check(v, SampledPoints{samples, seed, kDefaultPrime})) {
    if (!vd.quasismooth) throw Inconsistency("sampled non-quasismooth point " + vd.witness);
    out.checks.push_back(std::move(vd));
  }
  return out;
}

}  // namespace wcilink
