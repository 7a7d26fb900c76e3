#include <random>

#include "chart_oracle.hpp"
#include "doctest.h"
#include "wcilink/parse.hpp"
#include "wcilink/singular.hpp"

using namespace wcilink;

namespace {

WCISpec x1214() {
  WPS p({1, 2, 3, 4, 7, 11}, {"x", "y", "z", "t", "v", "w"});
  const auto& r = p.ring();
  return WCISpec{p,
                 {parse("-w*x + t^3 + y^6 + 2*y*z*v + z^4 + z^2*y*t + x^12", r),
                  parse("w*z + y*t^3 + y^7 + v^2 + x^2*t^3 + z^2*y^4 + x*y*z*t^2", r)},
                 {{12}, {14}}};
}

// A degree-7 hypersurface of the shape produced by the main link.
WCISpec hat_x(const std::string& lambda) {
  WPS p({1, 1, 1, 2, 3}, {"u", "y", "z", "t", "v"});
  const std::string f = "(t^3 + 3*y^2*t^2 + y^6 + " + lambda + "*y*z*v*u + z^4*u^2 + z^2*y*u*(t + y^2))*z" +
                        " + y*(2*t^3 - y^6 + y^2*t^2) + v^2*u + u*(u^2*t^2 + y^4*t + z*u*t^2)";
  return WCISpec{p, {parse(f, p.ring())}, {{7}}};
}

}  // namespace

TEST_CASE("quasismoothness at coordinate points") {
  const auto x = x1214();
  auto pw = quasismooth_check(x, CoordinatePoint{"w"});
  REQUIRE(pw.size() == 1);
  CHECK(pw[0].quasismooth);
  CHECK(pw[0].exact);
  CHECK(pw[0].witness == "F1: x*w; F2: z*w");
  CHECK_THROWS_AS(quasismooth_check(x, CoordinatePoint{"v"}), SingularityError);  // v^2 in F2

  // Without v^2 the point p_v lies on X and the cone is singular there.
  auto bad = x;
  bad.equations[1] = parse("w*z + y*t^3 + y^7 + x^2*t^3", bad.ring());
  auto pv = quasismooth_check(bad, CoordinatePoint{"v"});
  CHECK_FALSE(pv[0].quasismooth);
}

TEST_CASE("sampled quasismoothness of a Fermat quartic") {
  WPS p({1, 1, 1, 1});
  WCISpec fermat{p, {parse("x0^4 + x1^4 + x2^4 + x3^4", p.ring())}, {{4}}};
  const auto vs = quasismooth_check(fermat, SampledPoints{32, 5});
  CHECK(vs.size() == 32);
  for (const auto& v : vs) {
    CHECK(v.quasismooth);
    CHECK_FALSE(v.exact);
  }
  CHECK_THROWS_AS(quasismooth_check(fermat, CoordinatePoint{"x0"}), SingularityError);

  // A smooth conic: the cone is singular only at the vertex.
  WCISpec cone{WPS({1, 1, 1}), {parse("x0*x1 - x2^2", WPS({1, 1, 1}).ring())}, {{2}}};
  for (const auto& v : quasismooth_check(cone, CoordinateStratum{{"x0", "x1", "x2"}, 16, 3})) CHECK(v.quasismooth);
}

TEST_CASE("quotient singularities of the main WCI and of the degree-7 model") {
  const auto rep = classify_quotient_singularity(x1214(), "w");
  CHECK(rep.kind == PointKind::Quotient);
  REQUIRE(rep.type);
  CHECK(rep.raw->to_string() == "1/11(2,4,7)");
  CHECK(rep.type->to_string() == "1/11(1,2,9)");
  CHECK(rep.terminal);
  REQUIRE(rep.witness.size() == 2);
  CHECK(rep.witness[0] == "x via x*w in F1 (degree 12)");
  CHECK(rep.witness[1] == "z via z*w in F2 (degree 14)");

  const auto hx = hat_x("5");
  const auto pt = classify_quotient_singularity(hx, "t");
  CHECK(pt.type->to_string() == "1/2(1,1,1)");
  const auto pv = classify_quotient_singularity(hx, "v");
  CHECK(pv.type->to_string() == "1/3(1,1,2)");
  CHECK(pv.witness[0] == "u via u*v^2 in F1 (degree 7)");
  CHECK_THROWS_AS(classify_quotient_singularity(hx, "z"), SingularityError);  // the cE6 point

  // r = 1 is smooth.
  WPS p4({1, 1, 1, 1, 1});
  WCISpec quad{p4, {parse("x0*x1 + x2*x3 + x4^2", p4.ring())}, {{2}}};
  CHECK(classify_quotient_singularity(quad, "x0").kind == PointKind::Smooth);
}

TEST_CASE("canonical forms are idempotent and unit invariant") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 300; ++it) {
    const long r = std::uniform_int_distribution<long>(2, 30)(rng);
    QuotientSingularity q{r, {}};
    for (int i = 0; i < 3; ++i) q.weights.push_back(std::uniform_int_distribution<long>(0, r - 1)(rng));
    const auto c = q.canonical();
    CHECK(c.canonical() == c);
    for (long k = 1; k < r; ++k) {
      if (std::gcd(k, r) != 1) continue;
      QuotientSingularity s{r, {}};
      for (long a : q.weights) s.weights.push_back(a * k % r);
      CHECK(s.canonical() == c);
      CHECK(s.terminal() == q.terminal());
    }
  }
  CHECK(QuotientSingularity{11, {2, 4, 7}}.canonical() == QuotientSingularity{11, {1, 2, 9}}.canonical());
  CHECK(QuotientSingularity{11, {1, 2, 9}}.terminal());
  CHECK_FALSE(QuotientSingularity{5, {1, 1, 1}}.terminal());
}

TEST_CASE("discrepancy engine against the chart oracle") {
  struct Case {
    Germ germ;
    WeightVector b;
    Rational expected;
  };
  const RingPtr r4 = make_ring({"y", "z", "t", "w"});
  const RingPtr r3 = make_ring({"x", "y", "z"});
  const RingPtr ca = make_ring({"x", "y", "z", "t"});
  std::vector<Case> cases{
      // X_7 at p_x, weights (4,1,2,1): a = (8 - 6 - 1)/1.
      {{r4, {parse("t^3 + z^6 + z*y*w + w^2*y + y^2 + z*t^3", r4)}, 1, {}, "X7 at p_x"}, WeightVector({4, 1, 2, 1}), Rational(1)},
      // Kawamata blowup of 1/11(1,2,9).
      {{r3, {}, 11, {1, 2, 9}, "1/11(1,2,9)"}, WeightVector({1, 2, 9}, 11), Rational(1, 11)},
      // cA/2 germ, weights 1/2(5,1,1,2).
      {{ca, {parse("x*y + t^3 + z^6", ca)}, 2, {1, 1, 1, 0}, "cA/2"}, WeightVector({5, 1, 1, 2}, 2), Rational(1, 2)},
  };
  for (const auto& c : cases) {
    const auto rec = weighted_blowup_discrepancy(c.germ, c.b);
    CHECK(rec.discrepancy == c.expected);
    const auto oracle = testsupport::chart_discrepancy(c.germ, c.b);
    CHECK(oracle.agree);
    CHECK(oracle.value == rec.discrepancy);
  }
  const auto rec = weighted_blowup_discrepancy(cases[0].germ, cases[0].b);
  CHECK(rec.multiplicities == std::vector<long>{6});
  CHECK(rec.exceptional_model.equations[0] == parse("t^3 + z^6 + z*y*w + w^2*y", r4));
  CHECK(rec.irreducibility.kind == Irreducibility::Irreducible);

  // Randomized agreement on hypersurface germs in four variables.
  std::mt19937_64 rng(3);
  for (int it = 0; it < 40; ++it) {
    std::vector<long> b;
    for (int i = 0; i < 4; ++i) b.push_back(std::uniform_int_distribution<long>(1, 5)(rng));
    Polynomial f(r4);
    for (int k = 0; k < 5; ++k) {
      Monomial m(4);
      for (auto& e : m) e = std::uniform_int_distribution<int>(0, 3)(rng);
      if (degree(m) == 0) m[0] = 2;
      f.add_term(m, Coefficient(std::uniform_int_distribution<long>(1, 7)(rng)));
    }
    Germ g{r4, {f}, 1, {}, "random"};
    const WeightVector w(b);
    CHECK(testsupport::chart_discrepancy(g, w).value == weighted_blowup_discrepancy(g, w).discrepancy);
  }
}

TEST_CASE("discrepancy engine errors") {
  const RingPtr r3 = make_ring({"x", "y", "z"});
  CHECK_THROWS_AS(weighted_blowup_discrepancy(Germ{r3, {Polynomial(r3)}, 1, {}, ""}, WeightVector({1, 1, 1})),
                  SingularityError);
  CHECK_THROWS_AS(weighted_blowup_discrepancy(Germ{r3, {parse("x + 1", r3)}, 1, {}, ""}, WeightVector({1, 1, 1})),
                  SingularityError);
  CHECK_THROWS_AS(weighted_blowup_discrepancy(Germ{r3, {}, 11, {1, 2, 9}, ""}, WeightVector({1, 3, 9}, 11)),
                  SingularityError);
  CHECK_THROWS_AS(weighted_blowup_discrepancy(Germ{r3, {}, 1, {}, ""}, WeightVector({1, 0, 1})), SingularityError);
}

TEST_CASE("cA/2 germ table") {
  const RingPtr zt = make_ring({"z", "t"});
  for (const char* g : {"t^3 + z^6", "t^3"}) {
    const auto a = analyze_cA2_germ(parse(g, zt));
    REQUIRE(a.table.size() == 5);
    CHECK(a.table[0].a_X == Rational(1, 2));
    const Rational expect[] = {Rational(1, 2), Rational(1, 2), Rational(1), Rational(1)};
    for (int i = 1; i <= 4; ++i) {
      const auto& row = a.table[static_cast<std::size_t>(i)];
      CHECK(row.a_Y == Rational(i, 5));
      CHECK(row.ord == Rational((3 * i) % 5, 5));
      CHECK(row.a_X == expect[i - 1]);
      CHECK(row.a_X == row.a_Y + row.ord * row.coefficient);
    }
    CHECK(a.count == 3);
  }
  CHECK_THROWS_WITH_AS(analyze_cA2_germ(parse("z^6", zt)), doctest::Contains("t^3 in g"), SingularityError);
  CHECK_THROWS_AS(analyze_cA2_germ(parse("t^3 + z^3*t", zt)), SingularityError);
}

TEST_CASE("cE6 germ table") {
  const RingPtr r = make_ring({"x", "y", "z", "t"});
  const auto nonzero = analyze_cE6_germ(parse("x^2 + x*z*(3*t + y) + y^3 + z^6 + x*(t^2 + x*y^2)", r));
  REQUIRE(nonzero.lambda);
  CHECK(*nonzero.lambda == Coefficient(3));
  CHECK(nonzero.count == 4);
  REQUIRE(nonzero.table.size() == 4);
  for (const auto& row : nonzero.table) {
    CHECK(row.a_X == row.a_Y + row.ord * row.coefficient);
    if (row.label != "E") {
      CHECK(row.a_Y == Rational(1, 2));
      CHECK(row.ord == Rational(1, 2));
    }
  }
  CHECK(nonzero.table[2].label == "F3");
  CHECK(nonzero.table[2].a_X == 1);

  const auto zero = analyze_cE6_germ(parse("x^2 + x*z*y + y^3 + z^6 + x*t^2", r));
  CHECK(zero.lambda->is_zero());
  CHECK(zero.count == 3);
  CHECK(zero.table[2].ord == Rational(3, 2));
  CHECK(zero.table[2].a_X == 2);
  CHECK(zero.cited.front().find("external:[OkSolid Prop 3.16]") != std::string::npos);
  CHECK(zero.notes.front().find("g3") != std::string::npos);

  // y^3 missing breaks hypothesis (a).
  CHECK_THROWS_AS(analyze_cE6_germ(parse("x^2 + x*z*t + y*z^4 + x*t^2", r)), SingularityError);
  CHECK_THROWS_AS(analyze_cE6_germ(parse("x*y + z^3 + t^2", r)), SingularityError);
}

TEST_CASE("quadratic involution test at the 1/3 point") {
  WPS p({1, 1, 1, 2, 3}, {"x", "y", "z", "t", "w"});
  const std::string f7 = " + x^7 + y^7 + z^7 + t^3*x + t^2*y^3";
  WCISpec self{p, {parse("w^2*z + w*t^2" + f7, p.ring())}, {{7}}};
  const auto a = quadratic_involution_test(self);
  CHECK(a.self_link);
  CHECK(a.ell == parse("z", p.ring()));
  CHECK(std::get<WPS>(a.double_cover.ambient).to_string() == "P(1,1,1,2,4)");
  CHECK(a.double_cover.degrees[0][0] == 8);
  CHECK_NOTHROW(a.double_cover.validate());

  WCISpec special{p, {parse("w^2*z + w*z*t*x" + f7, p.ring())}, {{7}}};
  const auto b = quadratic_involution_test(special);
  CHECK_FALSE(b.self_link);
  REQUIRE(b.f4_over_ell);
  CHECK(*b.f4_over_ell == parse("t*x", p.ring()));

  WCISpec not_qs{p, {parse("w*t^2" + f7, p.ring())}, {{7}}};
  CHECK_THROWS_AS(quadratic_involution_test(not_qs), SingularityError);

  // At p_v of the degree-7 model, ell = u and f4 = lambda*y*z^2*u.
  for (const char* lam : {"5", "0"}) {
    const auto hv = quadratic_involution_test(hat_x(lam), "v");
    CHECK(hv.ell == parse("u", hat_x(lam).ring()));
    CHECK_FALSE(hv.self_link);
  }
}
