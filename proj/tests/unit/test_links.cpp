#include <random>
#include <set>

#include "chart_oracle.hpp"
#include "doctest.h"
#include "wcilink/algorithms.hpp"
#include "wcilink/links.hpp"
#include "wcilink/parse.hpp"
#include "wcilink/univariate.hpp"

using namespace wcilink;

namespace {

const Field kFp{kDefaultPrime};

struct Pipeline {
  WCISpec x;
  NormalFormX1214 nf;
  LinkSigma link;
};

Pipeline pipeline(std::uint64_t seed, bool lambda_zero = false, Field f = kFp) {
  WCISpec x = random_member_X1214(f, seed, lambda_zero);
  NormalFormX1214 nf = normal_form_X1214(x);
  LinkSigma link = construct_link_sigma(nf);
  return {std::move(x), std::move(nf), std::move(link)};
}

Polynomial var(const RingPtr& r, const char* n) { return Polynomial::variable(r, n); }

WCISpec normal_variety(const NormalFormX1214& nf) { return WCISpec{x1214_ambient(), {nf.F1, nf.F2}, {{12}, {14}}}; }

std::vector<Coefficient> residues(const std::vector<std::uint64_t>& pt) {
  std::vector<Coefficient> c;
  for (auto v : pt) c.push_back(Coefficient::residue(static_cast<std::int64_t>(v), kDefaultPrime));
  return c;
}

bool on(const WCISpec& v, const std::vector<std::uint64_t>& pt) {
  for (const auto& f : v.equations) {
    if (!evaluate(f, residues(pt)).reduce(kDefaultPrime).is_zero()) return false;
  }
  return true;
}

RationalMap compose(const RationalMap& first, const RationalMap& second) {
  // Only used with polynomial maps (unit denominators) on the first leg.
  Substitution s(second.source, first.source);
  for (std::size_t i = 0; i < first.numerators.size(); ++i) s.set(i, first.numerators[i]);
  RationalMap out{first.source, second.target_names, second.target_weights, {}, {}, "composite"};
  for (std::size_t i = 0; i < second.numerators.size(); ++i) {
    out.numerators.push_back(s.apply(second.numerators[i]));
    out.denominators.push_back(s.apply(second.denominators[i]));
  }
  return out;
}

}  // namespace

TEST_CASE("normal form: shape, round trip and the g14 conditions") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto x = random_member_X1214(kFp, seed);
    const auto nf = normal_form_X1214(x);
    const RingPtr& r = nf.ring;
    const Polynomial X = var(r, "x"), y = var(r, "y"), z = var(r, "z"), v = var(r, "v"), w = var(r, "w");

    CHECK(nf.F1 == -(w * X) + nf.a12 + (y * z * v).scaled(nf.lambda) + z.pow(4) + z * z * y * nf.b4);
    CHECK(nf.F2 == w * z + y * nf.c12 + v * v + nf.g14);

    // The recorded chain reproduces the normal form and its inverse undoes it.
    CHECK(nf.change.apply(x.equations[0]).scaled(nf.scale[0]) == nf.F1);
    CHECK(nf.change.apply(x.equations[1]).scaled(nf.scale[1]) == nf.F2);
    CHECK(nf.inverse.apply(nf.F1).scaled(nf.scale[0].inverse()) == x.equations[0]);
    CHECK(nf.inverse.apply(nf.F2).scaled(nf.scale[1].inverse()) == x.equations[1]);
    const Substitution there_and_back = nf.change.then(nf.inverse);
    for (std::size_t i = 0; i < r->size(); ++i) CHECK(there_and_back.apply(Polynomial::variable(r, i)) == Polynomial::variable(r, i));

    // g14 in (x, z)^2 with weighted order >= 18/11, monomial by monomial.
    for (const auto& [m, c] : nf.g14.terms()) {
      CHECK(m[0] + m[2] >= 2);
      CHECK(6 * m[0] + m[1] + 7 * m[2] + 2 * m[3] >= 18);
      CHECK(m[4] == 0);
      CHECK(m[5] == 0);
    }
    // a12, b4, c12 are forms in (y^2, t).
    for (const Polynomial* f : {&nf.a12, &nf.b4, &nf.c12}) {
      for (const auto& [m, c] : f->terms()) {
        CHECK(m[1] % 2 == 0);
        CHECK(m[0] + m[2] + m[4] + m[5] == 0);
      }
    }
    CHECK_FALSE(nf.mu.is_zero());
    CHECK_FALSE(nf.resultant.is_zero());
  }
}

TEST_CASE("normal form: the lambda = 0 family and the rational field") {
  const auto nf0 = normal_form_X1214(random_member_X1214(kFp, 4, true));
  CHECK(nf0.lambda.is_zero());
  const auto nfq = normal_form_X1214(random_member_X1214(Field::rationals(), 4));
  CHECK_FALSE(nfq.lambda.is_residue());
  CHECK_FALSE(nfq.lambda.is_zero());
}

TEST_CASE("normal form: rejected members") {
  const WPS p = x1214_ambient();
  const RingPtr& r = p.ring();
  // a12 and c12 share the factor t.
  const Polynomial F1 = parse("-w*x + t*(t^2 + y^4) + y*z*v + z^4", r);
  const Polynomial F2 = parse("w*z + y*t*(t^2 + 2*y^4) + v^2 + x^2*z^4", r);
  try {
    normal_form_X1214(F1, F2);
    FAIL("expected a nondegeneracy failure");
  } catch (const CertificateFailure& e) {
    CHECK(e.certificate() == "nondegeneracy");
  }
  // No v^2: X passes through p_v and is not quasismooth there.
  try {
    normal_form_X1214(F1, parse("w*z + y*t^3 + y^7 + x^2*z^4", r));
    FAIL("expected a monomial failure");
  } catch (const CertificateFailure& e) {
    CHECK(e.certificate().rfind("monomial", 0) == 0);
  }
  // The binary cubic resultant against a brute-force root check.
  const Polynomial a = parse("(t - y^2)*(t - 2*y^2)*(t + y^2)", r), c = parse("(t - 3*y^2)*(t^2 + y^4)", r);
  CHECK_FALSE(binary_cubic_resultant(a, c, 1, 3).is_zero());
  CHECK(binary_cubic_resultant(a, parse("(t - 2*y^2)*(t^2 + y^4)", r), 1, 3).is_zero());
}

TEST_CASE("link sigma: target equation, transport and g6") {
  for (std::uint64_t seed : {1, 2}) {
    const auto P = pipeline(seed);
    const auto& hat = P.link.hat;
    const RingPtr& hr = hat.F.ring();
    CHECK(hr->names() == std::vector<std::string>{"u", "y", "z", "t", "v"});
    CHECK(assemble_hat(hat) == hat.F);
    CHECK(hat.F.coefficient({1, 0, 0, 0, 2}) == Coefficient(1));         // v^2 u
    CHECK(hat.F.coefficient({1, 1, 2, 0, 1}) == P.nf.lambda);             // lambda y z^2 v u
    CHECK(hat.F.coefficient({2, 0, 5, 0, 0}) == Coefficient(1));         // z^5 u^2
    CHECK(hat.F.coefficient({0, 0, 7, 0, 0}).is_zero());                 // q^ = p_z lies on X^
    CHECK(P.link.q_hat == "p_z");

    // Y at u = 1 is X again.
    const RingPtr& yr = P.link.Y.ring();
    Substitution u1(yr, P.nf.ring);
    u1.set("u", Polynomial(P.nf.ring, Coefficient(1)));
    CHECK(u1.apply(P.link.Y.equations[0]) == P.nf.F1);
    CHECK(u1.apply(P.link.Y.equations[1]) == P.nf.F2);

    // g6 from g14 monomial by monomial: x^a y^b z^c t^d -> u^{(6a+b+7c+2d-7)/11 - 1} y^b z^c t^d.
    Polynomial g6(hr);
    for (const auto& [m, c] : P.nf.g14.terms()) {
      const int e = 6 * m[0] + m[1] + 7 * m[2] + 2 * m[3] - 7;
      REQUIRE(e % 11 == 0);
      REQUIRE(e / 11 >= 1);
      g6.add_term({e / 11 - 1, m[1], m[2], m[3], 0}, c);
    }
    CHECK(g6 == hat.g6);
  }
}

TEST_CASE("link sigma: walls, cones and the Kawamata blowup") {
  const auto P = pipeline(3);
  const auto& t = P.link.trace;
  REQUIRE(t.walls.size() == 3);
  CHECK(t.walls[0].kind == WallKind::Small);
  CHECK(t.walls[1].kind == WallKind::Small);
  CHECK(t.walls[2].kind == WallKind::Divisorial);
  CHECK(t.walls[2].contracted == std::optional<std::string>("x"));
  REQUIRE(t.walls[0].restricted);
  CHECK(t.walls[0].restricted->isomorphism);
  REQUIRE(t.walls[1].restricted);
  CHECK_FALSE(t.walls[1].restricted->isomorphism);
  CHECK(P.link.cones.mov.to_string() == "cone([D_w],[D_z])");

  CHECK(P.link.extraction.discrepancy == Rational(1, 11));
  const RingPtr gr = make_ring({"x", "y", "z", "t", "v"});
  Substitution w1(P.nf.ring, gr);
  w1.set("w", Polynomial(gr, Coefficient(1)));
  const Germ germ{gr, {w1.apply(P.nf.F1), w1.apply(P.nf.F2)}, 11, {1, 2, 3, 4, 7}, "q"};
  const auto oracle = testsupport::chart_discrepancy(germ, WeightVector({6, 1, 7, 2, 9}, 11));
  CHECK(oracle.agree);
  CHECK(oracle.value == Rational(1, 11));
}

TEST_CASE("link sigma: the maps on points") {
  const auto P = pipeline(5);
  const WCISpec X = normal_variety(P.nf);
  const std::vector<long> hw = hat_ambient().weights();
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto pt = sample_point(X, kDefaultPrime, s);
    REQUIRE(on(X, pt));
    const auto img = apply_map(P.link.sigma, pt, kDefaultPrime);
    REQUIRE(img);
    CHECK(on(P.link.hat.hypersurface, *img));
    const auto back = apply_map(P.link.sigma_inverse, *img, kDefaultPrime);
    REQUIRE(back);
    CHECK(projectively_equal(pt, *back, x1214_ambient().weights(), kDefaultPrime));
  }
  // Scaling by s in P(1,1,1,2,3) is detected, a generic perturbation is not.
  const std::vector<std::uint64_t> a{1, 2, 3, 4, 5}, b{3, 6, 9, 36, 135};
  CHECK(projectively_equal(a, b, hw, kDefaultPrime));
  CHECK_FALSE(projectively_equal(a, {3, 6, 9, 36, 136}, hw, kDefaultPrime));
}

TEST_CASE("singularity census of X and X^") {
  for (bool lambda_zero : {false, true}) {
    const auto P = pipeline(7, lambda_zero);
    const Census cx = census_X1214(P.nf, 16, 1);
    CHECK(cx.ambient.fano_index == 2);
    REQUIRE(cx.points.size() == 1);
    CHECK(cx.points[0].point == "p_w");
    REQUIRE(cx.points[0].type);
    CHECK(cx.points[0].type->to_string() == "1/11(1,2,9)");

    const Census ch = singularity_census_hatX(P.link.hat, 16, 1);
    std::set<std::string> seen;
    for (const auto& r : ch.points) {
      if (r.point == "p_t") CHECK(r.type->to_string() == "1/2(1,1,1)");
      if (r.point == "p_v") CHECK(r.type->to_string() == "1/3(1,1,2)");
      if (r.point == "p_z") {
        CHECK(r.kind == PointKind::NonQuasismooth);
        CHECK(r.germ == GermClass::CE6);
      }
      seen.insert(r.point);
    }
    CHECK(seen == std::set<std::string>{"p_t", "p_v", "p_z"});
    REQUIRE(ch.germ);
    CHECK(ch.germ->count == (lambda_zero ? 3u : 4u));
  }
}

TEST_CASE("the Condition on X^") {
  const auto P = pipeline(2);
  const ConditionCheck c = condition_check(P.link.hat);
  CHECK(c.holds);
  for (const char* name : {"(1) p_x in X", "(2) w1(F) = 6", "(2) F_{w1=6} irreducible", "(3) w2'(F) = 4", "(3) t^3 in F",
                           "(3) F_{w2'=5} = y K", "g6 != 0", "F_{w2'=6} = y H + x g6"}) {
    REQUIRE(c.check(name));
    CHECK_MESSAGE(c.check(name)->holds, name);
  }
  // beta is the v^2 u coefficient of F^ and gamma the lambda of the normal form.
  CHECK(c.beta == P.link.hat.F.coefficient({1, 0, 0, 0, 2}));
  CHECK(c.gamma == P.nf.lambda);
  CHECK_FALSE(c.g6.is_zero());
  // With lambda != 0 the literal two-term form of F_{w2'=4} cannot hold.
  CHECK_FALSE(c.check("(3) F_{w2'=4} = alpha x^5 y^2 + beta y w^2")->holds);

  // A weight-5 term outside (y) breaks the Condition.
  auto bad = c.renamed;
  bad.equations[0] += parse("x^2*z^5", bad.ring());
  const ConditionCheck cb = condition_check(bad);
  CHECK_FALSE(cb.holds);
  CHECK_FALSE(cb.check("(3) F_{w2'=5} = y K")->holds);
  CHECK_THROWS_AS(run_exclusion_blowups(cb), CertificateFailure);
}

TEST_CASE("exclusion blowups at q^") {
  for (bool lambda_zero : {false, true}) {
    const auto P = pipeline(11, lambda_zero);
    const ExclusionBlowups ex = run_exclusion_blowups(P.link.hat);
    for (const LinkReport* r : {&ex.psi1, &ex.psi2}) {
      REQUIRE(r->extraction);
      CHECK(r->extraction->discrepancy == Rational(1));
      REQUIRE(r->cones);
      CHECK(r->cones->mov.to_string() == "cone([D_x],[D_z])");
      CHECK(r->cones->anticanonical_label == "D_z");
      CHECK(r->cones->anticanonical_on_boundary);
      CHECK(r->verdict == VerdictKind::NotSarkisov);
    }
    CHECK(ex.psi2.extraction->multiplicities == std::vector<long>{6, 2});
    CHECK(ex.psi2.extraction->irreducibility.kind == Irreducibility::Irreducible);
    CHECK(ex.psi2.trace->walls[0].restricted->isomorphism);
    CHECK_FALSE(ex.psi1.trace->walls[0].restricted->isomorphism);

    // The chart oracle agrees on both germs.
    const auto& F = ex.condition.renamed.equations[0];
    const RingPtr g4 = make_ring({"y", "z", "t", "w"});
    Substitution x1(F.ring(), g4);
    x1.set("x", Polynomial(g4, Coefficient(1)));
    const auto o1 = testsupport::chart_discrepancy(Germ{g4, {x1.apply(F)}, 1, {}, "psi1"}, WeightVector({4, 1, 2, 1}));
    CHECK(o1.agree);
    CHECK(o1.value == Rational(1));
    const RingPtr g5 = make_ring({"y", "z", "t", "w", "s"});
    Substitution x2(ex.reembedded.ring(), g5);
    x2.set("x", Polynomial(g5, Coefficient(1)));
    const auto o2 = testsupport::chart_discrepancy(
        Germ{g5, {x2.apply(ex.reembedded.equations[0]), x2.apply(ex.reembedded.equations[1])}, 1, {}, "psi2"},
        WeightVector({2, 1, 2, 1, 4}));
    CHECK(o2.agree);
    CHECK(o2.value == Rational(1));
  }
}

TEST_CASE("no curve of degree 1 or 1/2 through q^") {
  const auto P = pipeline(13);
  const auto& hat = P.link.hat;
  const CurveCertificate c = exclude_degree_one_curves(hat);
  CHECK(c.mu == hat.a6.coefficient({0, 0, 0, 3, 0}));
  CHECK_FALSE(c.resultant.is_zero());
  // Brute force: every listed alpha is a root of a6(1, alpha) and no root of c6(1, alpha).
  const RingPtr tr = make_ring({"t"});
  Substitution at(hat.F.ring(), tr);
  at.set("y", Polynomial(tr, Coefficient(1)));
  const Polynomial a = at.apply(hat.a6), cc = at.apply(hat.c6);
  std::size_t count = 0;
  for (auto alpha : c.alpha_roots) {
    const std::vector<Coefficient> pt{Coefficient::residue(static_cast<std::int64_t>(alpha), kDefaultPrime)};
    CHECK(evaluate(a, pt).reduce(kDefaultPrime).is_zero());
    CHECK_FALSE(evaluate(cc, pt).reduce(kDefaultPrime).is_zero());
    ++count;
  }
  CHECK(count <= 3);
  // Top z-weight term is z^5 u^2.
  CHECK(c.top_z_component.rfind("u^2*z^5", 0) == 0);
}

TEST_CASE("involutions") {
  const auto P = pipeline(17);
  REQUIRE_FALSE(P.nf.lambda.is_zero());
  const Involutions inv = build_involutions(P.nf, P.link);
  CHECK(inv.chi_squared_identity);
  CHECK(inv.chi_preserves_hat);
  CHECK(inv.chi_hat.apply(P.link.hat.F) == P.link.hat.F);
  CHECK(inv.nu_E_v == 2);
  CHECK(inv.nu_E_prime_v == 1);

  const WCISpec X = normal_variety(P.nf);
  const InvolutionCheck ok = verify_involution(X, inv.involution_on_X, 100, 3);
  CHECK(ok.passed);
  CHECK(ok.checked == 100);
  const InvolutionCheck par = verify_involution(X, inv.involution_on_X, 100, 3, kDefaultPrime, true);
  CHECK(par.passed);
  CHECK(par.checked == ok.checked);
  CHECK(par.resampled == ok.resampled);
  CHECK(verify_involution(X, RationalMap::identity(x1214_ambient()), 10, 3).passed);

  NormalFormX1214 off = P.nf;
  off.lambda = off.lambda + Coefficient(1);
  CHECK_FALSE(verify_involution(X, build_involutions(off, P.link).involution_on_X, 10, 3).passed);

  // sigma^-1 o chi^ o sigma agrees with the formula for the involution of X.
  RationalMap chi = RationalMap::identity(hat_ambient());
  chi.numerators[4] = inv.chi_hat.apply(var(chi.source, "v"));
  const RationalMap through = compose(compose(P.link.sigma, chi), P.link.sigma_inverse);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto pt = sample_point(X, kDefaultPrime, 500 + s, {"x"});
    const auto a = apply_map(through, pt, kDefaultPrime), b = apply_map(inv.involution_on_X, pt, kDefaultPrime);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(projectively_equal(*a, *b, x1214_ambient().weights(), kDefaultPrime));
  }
}

TEST_CASE("sample_point") {
  const auto P = pipeline(19);
  const WCISpec X = normal_variety(P.nf);
  std::set<std::vector<std::uint64_t>> distinct;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto pt = sample_point(X, kDefaultPrime, s, {"x"});
    CHECK(on(X, pt));
    CHECK(pt[0] != 0);
    distinct.insert(pt);
  }
  CHECK(distinct.size() == 100);
  CHECK(sample_point(X, kDefaultPrime, 4) == sample_point(X, kDefaultPrime, 4));
  // Hypersurfaces solve for the last variable.
  const auto h = sample_point(P.link.hat.hypersurface, kDefaultPrime, 1);
  CHECK(on(P.link.hat.hypersurface, h));
}

TEST_CASE("classification of links") {
  for (bool lambda_zero : {false, true}) {
    const auto x = random_member_X1214(kFp, 23, lambda_zero);
    const Classification c = classify_links(x, PipelineOptions{20, 30, 1, false});
    CHECK(c.links_from_X == 1);
    CHECK(c.links_from_hat == (lambda_zero ? 1u : 2u));
    CHECK(c.germ_count == c.divisors.size());
    CHECK(c.assumptions.size() == 4);
    std::size_t hat_links = 0, not_sarkisov = 0;
    for (const auto& r : c.reports) {
      if (r.variety == "X^" && r.verdict == VerdictKind::ElementaryLink) ++hat_links;
      if (r.verdict == VerdictKind::NotSarkisov) ++not_sarkisov;
      if (r.center.rfind("p_v", 0) == 0) CHECK(r.verdict == VerdictKind::NotMaximal);
    }
    CHECK(hat_links == c.links_from_hat);
    CHECK(not_sarkisov == 2);

    const Classification again = classify_links(x, PipelineOptions{20, 30, 1, true});
    REQUIRE(again.reports.size() == c.reports.size());
    for (std::size_t i = 0; i < c.reports.size(); ++i) CHECK(again.reports[i].certificate == c.reports[i].certificate);
  }
}
