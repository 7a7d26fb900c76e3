#include <random>

#include "doctest.h"
#include "random_poly.hpp"
#include "wcilink/algorithms.hpp"
#include "wcilink/grading.hpp"
#include "wcilink/parse.hpp"
#include "wcilink/substitution.hpp"
#include "wcilink/univariate.hpp"

using namespace wcilink;

namespace {

RingPtr xyztw() { return make_ring({"x", "y", "z", "t", "w"}); }
RingPtr six() { return make_ring({"x", "y", "z", "t", "v", "w"}); }

Monomial mono(const RingPtr& r, const std::string& text) { return parse(text, r).leading_term().first; }

// Independent oracle: Euclid over F_p plus exhaustive root search.
bool brute_common_root(const UPoly& a, const UPoly& b) {
  for (std::uint64_t x = 0; x < a.p; ++x) {
    if (a(x) == 0 && b(x) == 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("parse expands and canonicalizes") {
  auto r = xyztw();
  CHECK(parse("w^2*y + t^3*x", r).size() == 2);
  CHECK(parse("(x+y)^2 - x^2 - y^2 - 2*x*y", r).is_zero());
  auto f = parse("-w*x + t^3 + z^4", r);
  CHECK(f.size() == 3);
  CHECK(f.coefficient(mono(r, "w*x")) == Coefficient(-1));
  CHECK(parse("1/2*x + 1/2*x", r) == parse("x", r));
  CHECK(parse("3 - 3", r).is_zero());
}

TEST_CASE("parse errors carry a position") {
  auto r = xyztw();
  CHECK_THROWS_AS(parse("x + q", r), UnknownVariable);
  try {
    parse("x + * y", r);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse("(x + y", r), ParseError);
  CHECK_THROWS_AS(parse("x/2", r), ParseError);
}

TEST_CASE("printing is grevlex descending") {
  auto r = make_ring({"x", "y", "z"});
  CHECK(parse("z + x^2 + y*z + 1", r).to_string() == "x^2 + y*z + z + 1");
  CHECK(parse("x*z - 1/3*y^2", r).to_string() == "-1/3*y^2 + x*z");
}

TEST_CASE("weight_of") {
  auto r = xyztw();
  CHECK(weight_of(mono(r, "w^2*y"), WeightVector({0, 4, 1, 2, 1})) == 6);
  CHECK(weight_of(Monomial{1, 1}, WeightVector({1, 1})) == 2);
  auto s = six();
  CHECK(weight_of(mono(s, "v^2"), WeightVector({6, 1, 7, 2, 9, 0}, 11)) == Rational(18, 11));
  CHECK_THROWS_AS(weight_of(Monomial{1, 1}, WeightVector({1, 1, 1})), WeightError);
  CHECK(WeightVector::from_rationals({Rational(1, 2), Rational(1, 3)}).to_string() == "1/6(3,2)");
}

TEST_CASE("w_component and contains_monomial") {
  auto r = xyztw();
  WeightVector w1({0, 4, 1, 2, 1});
  auto f = parse("w^2*y + t^3*x + x^7", r);
  CHECK(w_component(f, w1, 6) == parse("w^2*y + t^3*x", r));
  auto g = parse("w^2*y + x*t^3", r);
  CHECK(w_component(g, w1, 6) == g);
  CHECK(contains_monomial(g, mono(r, "t^3*x")));
  CHECK_FALSE(contains_monomial(parse("w^2*y", r), mono(r, "t^3")));
  // The w'_2 = 4 slice of a Condition-shaped equation.
  WeightVector w2({0, 2, 1, 2, 1});
  auto F = parse("x^5*y^2 + 3*y*w^2 + x*t^3 + x^2*y*t^2 + z^7", r);
  CHECK(w_component(F, w2, 4) == parse("x^5*y^2 + 3*y*w^2", r));
}

TEST_CASE("quasi_homogeneous_degree") {
  auto s = six();
  WeightVector deg({1, 2, 3, 4, 7, 11});
  auto F2 = parse("w*z + y*t^3 + y^7 + v^2 + x^2*z^4 + x*t*v*y", s);
  CHECK(quasi_homogeneous_degree(F2, deg) == Rational(14));
  auto r = make_ring({"x", "y"});
  CHECK_FALSE(quasi_homogeneous_degree(parse("x + y^2", r), WeightVector({1, 1})).has_value());
  CHECK(quasi_homogeneous_degree(parse("x", r), WeightVector({5, 1}, 3)) == Rational(5, 3));
  CHECK_THROWS_AS(quasi_homogeneous_degree(Polynomial(r), WeightVector({1, 1})), WeightError);
}

TEST_CASE("substitute") {
  auto r = make_ring({"y", "z", "v"});
  Substitution chi(r, r);
  chi.set("v", parse("-v - 5*y*z^2", r));
  CHECK(substitute(parse("v^2", r), chi) == parse("v^2 + 10*y*z^2*v + 25*y^2*z^4", r));
  auto f = parse("y + z", r);
  CHECK(substitute(f, Substitution::identity(r)) == f);
  Substitution swap(r, r);
  swap.set("y", "z").set("z", "y");
  CHECK(substitute(f, swap) == f);
  CHECK(chi.then(chi).apply(parse("v", r)) == parse("v", r));
}

TEST_CASE("toric_transform of an F1-shaped equation") {
  auto s = six();
  WeightVector w({6, 1, 7, 2, 9, 0}, 11);
  auto F1 = parse("-w*x + t^3 + 2*y^4*t + y^6 + 5*y*z*v + z^4 + z^2*y*(y^2 + 3*t)", s);
  auto T = toric_transform(F1, w, "u");
  auto target = parse("-w*x + t^3 + 2*y^4*t + y^6 + 5*y*z*v*u + z^4*u^2 + z^2*y*(y^2 + 3*t)*u", T.ring());
  CHECK(T == target);
  CHECK_THROWS_AS(toric_transform(parse("x + y", s), w, "u"), WeightError);
  CHECK_THROWS(toric_transform(F1, w, "x"));
}

TEST_CASE("resultant examples") {
  auto r = make_ring({"Y", "T"});
  const std::size_t T = 1;
  CHECK(resultant(parse("T^3", r), parse("Y^3", r), T) == parse("Y^9", r));
  CHECK(resultant(parse("T - Y", r), parse("T - Y", r), T).is_zero());
  CHECK(resultant(parse("T^2 - 1", r), parse("T - 2", r), T) == parse("3", r));
  CHECK_THROWS(resultant(Polynomial(r), parse("T", r), T));
}

TEST_CASE("irreducibility verdicts") {
  auto r = xyztw();
  auto a = irreducibility_verdict(parse("x*y + t^3", r), 20, 1);
  CHECK(a.kind == Irreducibility::Irreducible);
  auto b = irreducibility_verdict(parse("x^2 - y^2", r), 20, 1);
  REQUIRE(b.kind == Irreducibility::Reducible);
  CHECK(b.factors->first * b.factors->second == parse("x^2 - y^2", r));
  auto s = make_ring({"z", "t", "w", "s"});
  auto c = irreducibility_verdict(parse("3*w^2*s + z^6 + 2*z^2*t^2 - t^3", s), 20, 1);
  CHECK(c.kind == Irreducibility::Irreducible);
  auto m = irreducibility_verdict(parse("x*y^2 + x^3", r), 20, 1);
  CHECK(m.kind == Irreducibility::Reducible);
  // Irreducible but not linear in any variable: certified by line restriction.
  auto q = irreducibility_verdict(parse("x^2 + y^2 + z^2 + t*w", r).reduce(kDefaultPrime), 40, 3);
  CHECK(q.kind == Irreducibility::Irreducible);
}

TEST_CASE("univariate roots and irreducibility over F_p") {
  std::mt19937_64 rng(5);
  const std::uint64_t p = kDefaultPrime;
  UPoly f = UPoly({p - 6, 11, p - 6, 1}, p);  // (x-1)(x-2)(x-3)
  CHECK(roots(f, rng) == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(is_irreducible(UPoly({1, 0, 1}, 101)) == false);  // -1 is a square mod 101
  CHECK(is_irreducible(UPoly({1, 0, 1}, 103)) == true);
  auto k = kth_root(8, 3, p, rng);
  REQUIRE(k);
  CHECK(pow_mod(*k, 3, p) == 8);
}

TEST_CASE("property: filtration identity and substitution homomorphism") {
  std::mt19937_64 rng(2024);
  auto r = make_ring({"a", "b", "c", "d"});
  testsupport::RandomPolySpec spec;
  std::uniform_int_distribution<long> wd(0, 7);
  for (int k = 0; k < 1000; ++k) {
    spec.modulus = (k % 2) ? 101 : 0;
    auto f = testsupport::random_polynomial(r, spec, rng);
    auto g = testsupport::random_polynomial(r, spec, rng);
    WeightVector w({wd(rng), wd(rng), wd(rng), wd(rng)}, 1 + k % 5);
    Polynomial sum(r);
    for (const auto& [d, comp] : w_components(f, w)) {
      CHECK(w_component(f, w, d) == comp);
      sum += comp;
    }
    CHECK(sum == f);
    Substitution s(r, r);
    spec.terms = 3;
    spec.max_degree = 2;
    for (const auto& n : r->names()) s.set(n, testsupport::random_polynomial(r, spec, rng));
    spec.terms = 6;
    spec.max_degree = 4;
    CHECK(s.apply(f + g) == s.apply(f) + s.apply(g));
    CHECK(s.apply(f * g) == s.apply(f) * s.apply(g));
  }
}

TEST_CASE("property: resultant agrees with common-root search over F_101") {
  std::mt19937_64 rng(77);
  const std::uint64_t p = 101;
  auto r = make_ring({"S", "T"});
  std::uniform_int_distribution<std::uint64_t> c(0, p - 1);
  std::uniform_int_distribution<int> deg(1, 4);
  for (int k = 0; k < 200; ++k) {
    // Half the pairs get a planted common root.
    const std::uint64_t root = c(rng);
    auto form = [&](int d, bool plant) {
      std::vector<std::uint64_t> a(d + 1);
      for (auto& v : a) v = c(rng);
      a[d] = 1 + c(rng) % (p - 1);
      UPoly u(a, p);
      if (plant) u = u * UPoly({p - root, 1}, p);
      return u;
    };
    const bool plant = k % 2 == 0;
    UPoly a = form(deg(rng), plant);
    UPoly b = form(deg(rng), plant);
    auto lift = [&](const UPoly& u) {
      Polynomial f(r);
      const int d = u.degree();
      for (int i = 0; i <= d; ++i) {
        f.add_term({d - i, i}, Coefficient::residue(static_cast<std::int64_t>(u.c[i]), p));
      }
      return f;
    };
    Polynomial F = lift(a), G = lift(b);
    // Dehomogenize at S = 1 before eliminating T.
    Substitution at(r, r);
    at.set("S", Polynomial(r, Coefficient::residue(1, p)));
    Polynomial res = resultant(at.apply(F), at.apply(G), 1);
    const bool shared = gcd(a, b).degree() > 0;
    CHECK(res.is_zero() == shared);
    CHECK(shared == brute_common_root(a, b));
  }
}

TEST_CASE("property: toric_transform at u = 1 and u = 0") {
  std::mt19937_64 rng(9);
  auto s = six();
  WeightVector deg({1, 2, 3, 4, 7, 11});
  WeightVector w({6, 1, 7, 2, 9, 0}, 11);
  // Random degree-12 forms in P(1,2,3,4,7,11).
  std::vector<Monomial> monos;
  for (int a = 0; a <= 12; ++a)
    for (int b = 0; 2 * b <= 12 - a; ++b)
      for (int c = 0; 3 * c <= 12 - a - 2 * b; ++c)
        for (int d = 0; 4 * d <= 12 - a - 2 * b - 3 * c; ++d)
          for (int e = 0; 7 * e <= 12 - a - 2 * b - 3 * c - 4 * d; ++e) {
            const int rest = 12 - a - 2 * b - 3 * c - 4 * d - 7 * e;
            if (rest % 11 == 0) monos.push_back({a, b, c, d, e, rest / 11});
          }
  for (int k = 0; k < 50; ++k) {
    Polynomial f(s);
    for (const auto& m : monos) {
      if (rng() % 3 == 0) f.add_term(m, testsupport::random_coefficient(0, rng));
    }
    if (f.is_zero()) continue;
    CHECK(quasi_homogeneous_degree(f, deg) == Rational(12));
    Polynomial T = toric_transform(f, w, "u");
    Substitution one(T.ring(), s), zero(T.ring(), s);
    one.set("u", Polynomial(s, 1));
    zero.set("u", Polynomial(s));
    CHECK(one.apply(T) == f);
    CHECK(zero.apply(T) == w_component(f, w, w_order(f, w)));
  }
}
