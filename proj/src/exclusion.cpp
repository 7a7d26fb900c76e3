#include <algorithm>

#include "wcilink/algorithms.hpp"
#include "wcilink/links.hpp"

namespace wcilink {

namespace {

// The Condition as literally stated; recorded but not required, see the relaxed checks.
constexpr const char* kLiteralF4 = "(3) F_{w2'=4} = alpha x^5 y^2 + beta y w^2";
constexpr const char* kLiteralF5 = "(3) F_{w2'=5} = 0";

Polynomial vanish(const Polynomial& f, const std::vector<std::string>& names) {
  Substitution s = Substitution::identity(f.ring());
  for (const auto& n : names) s.set(n, Polynomial(f.ring()));
  return s.apply(f);
}

Polynomial at_one(const Polynomial& f, const std::string& name, const RingPtr& target) {
  Substitution s(f.ring(), target);
  s.set(name, Polynomial(target, Coefficient(1)));
  return s.apply(f);
}

bool even_in(const Polynomial& f, std::size_t var) {
  return std::all_of(f.terms().begin(), f.terms().end(), [&](const auto& t) { return t.first[var] % 2 == 0; });
}

// Variables strictly counterclockwise of a wall's ray.
std::vector<std::string> beyond(const LinkTrace& trace, const Wall& w) {
  std::vector<std::string> out;
  bool past = false;
  for (std::size_t i = 0; i < trace.rays.size(); ++i) {
    if (past) out.insert(out.end(), trace.ray_variables[i].begin(), trace.ray_variables[i].end());
    if (trace.rays[i] == w.ray) past = true;
  }
  return out;
}

std::string zero_locus(const std::vector<std::string>& names) {
  std::string s = "(";
  for (const auto& n : names) s += n + " = ";
  return s + "0)";
}

std::vector<long> bidegree_of(const Rank2Toric& T, const Polynomial& f) {
  const auto d = T.bidegree(f);
  if (!d) throw Inconsistency("transported equation is not bihomogeneous: " + f.to_string());
  return {(*d)[0], (*d)[1]};
}

void boundary_certificate(LinkReport& rep) {
  const ConeReport& c = *rep.cones;
  const bool ok = c.mov.to_string() == "cone([D_x],[D_z])" && c.anticanonical_label == "D_z" && c.anticanonical_on_boundary;
  if (!ok) {
    throw CertificateFailure("cone boundary", "mov = " + c.mov.to_string() + ", -K = " + c.anticanonical_label +
                                                  (c.anticanonical_on_boundary ? " on the boundary" : " not on the boundary"));
  }
  rep.verdict = VerdictKind::NotSarkisov;
  rep.certificate = "mov = " + c.mov.to_string() + " and -K ~ D_z lies on its boundary";
}

}  // namespace

const HypothesisCheck* ConditionCheck::check(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::ElementaryLink: return "ElementaryLink";
    case VerdictKind::NotSarkisov: return "NotSarkisov";
    case VerdictKind::NotMaximal: return "NotMaximal";
    case VerdictKind::CitedExclusion: return "CitedExclusion";
  }
  return "CitedExclusion";
}

ConditionCheck condition_check(const NormalFormHatX& hat, int trials, std::uint64_t seed) {
  const WPS p({1, 1, 1, 2, 3}, {"x", "y", "z", "t", "w"});
  const RingPtr r = p.ring();
  Substitution s(hat.F.ring(), r);
  s.set("u", Polynomial::variable(r, "y"));
  s.set("y", Polynomial::variable(r, "z"));
  s.set("z", Polynomial::variable(r, "x"));
  s.set("t", Polynomial::variable(r, "t"));
  s.set("v", Polynomial::variable(r, "w"));
  auto out = condition_check(WCISpec{p, {s.apply(hat.F)}, {{7}}}, trials, seed);
  out.notes.insert(out.notes.begin(), "renaming (u, y, z, t, v) -> (y, z, x, t, w)");
  return out;
}

ConditionCheck condition_check(const WCISpec& renamed, int trials, std::uint64_t seed) {
  renamed.validate();
  const RingPtr& r = renamed.ring();
  const Polynomial& F = renamed.equations.at(0);
  const Polynomial x = Polynomial::variable(r, "x"), y = Polynomial::variable(r, "y"), z = Polynomial::variable(r, "z"),
                   t = Polynomial::variable(r, "t"), w = Polynomial::variable(r, "w");
  ConditionCheck out{false, {}, renamed, {}, {}, {}, Polynomial(r), Polynomial(r), Polynomial(r), Polynomial(r), {}};
  auto add = [&](std::string name, bool holds, std::string detail) { out.checks.push_back({std::move(name), holds, std::move(detail)}); };

  add("(1) p_x in X", on_variety(renamed, "x"), "no pure power of x in F");
  add("F in (y, z, t)", vanish(F, {"y", "z", "t"}).is_zero(), "F(x, 0, 0, 0, w) = " + vanish(F, {"y", "z", "t"}).to_string());

  const WeightVector w1({0, 4, 1, 2, 1});
  const Rational o1 = w_order(F, w1);
  add("(2) w1(F) = 6", o1 == 6, "w1-order " + rational_string(o1));
  const Polynomial F6 = w_component(F, w1, 6);
  const RingPtr r4 = make_ring({"y", "z", "t", "w"});
  const auto irr = irreducibility_verdict(at_one(F6, "x", r4), trials, seed);
  add("(2) F_{w1=6} irreducible", irr.kind == Irreducibility::Irreducible, irr.method + (irr.witness.empty() ? "" : ": " + irr.witness));

  const WeightVector w2({0, 2, 1, 2, 1});
  const Rational o2 = w_order(F, w2);
  add("(3) w2'(F) = 4", o2 == 4, "w2'-order " + rational_string(o2));
  const Polynomial F4 = w_component(F, w2, 4);
  out.alpha = F4.coefficient({5, 2, 0, 0, 0});
  out.beta = F4.coefficient({0, 1, 0, 0, 2});
  out.gamma = F4.coefficient({2, 1, 1, 0, 1});
  const Polynomial literal = (x.pow(5) * y * y).scaled(out.alpha) + (y * w * w).scaled(out.beta);
  add(kLiteralF4, F4 == literal && !out.alpha.is_zero() && !out.beta.is_zero(),
      "F_{w2'=4} = " + F4.to_string());
  const auto h = exact_quotient(F4, y);
  const bool h_ok = h && !out.alpha.is_zero() && !out.beta.is_zero() &&
                    *h == (x.pow(5) * y).scaled(out.alpha) + (w * w).scaled(out.beta) + (x * x * z * w).scaled(out.gamma);
  add("(3) F_{w2'=4} = y h, h = alpha x^5 y + beta w^2 + gamma x^2 z w, alpha beta != 0", h_ok,
      h ? "h = " + h->to_string() : "not divisible by y");
  if (!out.gamma.is_zero()) {
    out.notes.push_back("the x^2 y z w term has w2'-weight 4, so the literal form of F_{w2'=4} needs gamma = 0; "
                        "the re-embedding uses h = F_{w2'=4}/y, which keeps w^2 in h");
  }
  const Polynomial F5 = w_component(F, w2, 5);
  add(kLiteralF5, F5.is_zero(), F5.is_zero() ? "empty" : F5.to_string());
  const auto K = exact_quotient(F5, y);
  add("(3) F_{w2'=5} = y K", K.has_value(), K ? "K = " + K->to_string() : "not divisible by y: " + F5.to_string());
  if (h && K) out.h = *h + *K;
  if (K && !K->is_zero()) {
    out.notes.push_back("F_{w2'=5} = y K is nonzero; the re-embedding takes s = h + K, which leaves the initial forms "
                        "of both equations unchanged");
  }
  const bool t3 = std::any_of(F.terms().begin(), F.terms().end(), [](const auto& m) {
    return m.first[3] == 3 && m.first[1] == 0 && m.first[2] == 0 && m.first[4] == 0;
  });
  add("(3) t^3 in F", t3, "a monomial x^k t^3 occurs");

  // The decompositions of F_{w1=6} and F_{w2'=6}.
  const std::size_t ix = 0, iy = 1, iz = 2, iw = 4;
  out.g2 = F6.coefficient_of(ix, 3).coefficient_of(iy, 1);
  Polynomial g6 = F6.coefficient_of(ix, 1).coefficient_of(iy, 0).coefficient_of(iw, 0);
  out.g6 = g6;
  const Polynomial rebuilt = (w * w * y).scaled(out.beta) + (x * x * y * z * w).scaled(out.gamma) + x.pow(3) * y * out.g2 + x * g6;
  add("F_{w1=6} = beta w^2 y + gamma x^2 y z w + x^3 y g2 + x g6", F6 == rebuilt && !out.beta.is_zero(),
      "g2 = " + out.g2.to_string() + ", g6 = " + g6.to_string());
  const bool g_shape = !out.g2.involves(iw) && !out.g2.involves(iy) && even_in(out.g2, iz) && !g6.involves(iw) &&
                       !g6.involves(iy) && even_in(g6, iz);
  add("g2, g6 are forms in (z^2, t)", g_shape, "");
  add("g6 != 0", !g6.is_zero(), g6.to_string());
  const Polynomial F6b = w_component(F, w2, 6);
  const auto H = exact_quotient(F6b - x * g6, y);
  add("F_{w2'=6} = y H + x g6", H.has_value(), H ? "H = " + H->to_string() : "not divisible by y");
  if (H) out.H = *H;

  out.holds = std::all_of(out.checks.begin(), out.checks.end(), [](const HypothesisCheck& c) {
    return c.holds || c.name == kLiteralF4 || c.name == kLiteralF5;
  });
  return out;
}

ExclusionBlowups run_exclusion_blowups(const NormalFormHatX& hat, int trials, std::uint64_t seed) {
  return run_exclusion_blowups(condition_check(hat, trials, seed), trials, seed);
}

ExclusionBlowups run_exclusion_blowups(const ConditionCheck& cond, int trials, std::uint64_t seed) {
  if (!cond.holds) {
    for (const auto& c : cond.checks) {
      if (!c.holds && c.name != kLiteralF4 && c.name != kLiteralF5) throw CertificateFailure("condition", c.name + " fails: " + c.detail);
    }
  }
  const WPS& P5 = std::get<WPS>(cond.renamed.ambient);
  const Polynomial& F = cond.renamed.equations.front();
  ExclusionBlowups out{cond, {}, {}, {P5, {}, {}}};

  // psi1: weights (4, 1, 2, 1) on (y, z, t, w).
  {
    LinkReport& rep = out.psi1;
    rep.variety = "X^";
    rep.center = "q^ (p_x after renaming), weights (y,z,t,w) = (4,1,2,1)";
    const RingPtr gr = make_ring({"y", "z", "t", "w"});
    rep.extraction = weighted_blowup_discrepancy(Germ{gr, {at_one(F, "x", gr)}, 1, {}, "psi1"}, WeightVector({4, 1, 2, 1}), trials, seed);
    if (rep.extraction->discrepancy != 1) throw Inconsistency("psi1 discrepancy is " + rational_string(rep.extraction->discrepancy));
    const Rank2Toric T = blowup_ambient(P5, "x", WeightVector({4, 1, 2, 1}));
    const Polynomial cF = toric_transform(F, WeightVector({0, 4, 1, 2, 1}), "u").in_ring(T.ring());
    const auto bd = bidegree_of(T, cF);
    LinkTrace trace = run_two_ray_game(T);
    if (trace.walls.empty() || trace.walls[0].kind != WallKind::Small) throw Inconsistency("psi1 game has no small wall");
    const auto b0 = beyond(trace, trace.walls[0]);
    const Polynomial rest = vanish(cF, b0);
    const Polynomial after = vanish(cF, {"u", "x"});
    trace.walls[0].restricted = RestrictedWall{
        "Gamma = " + zero_locus(b0) + " on Y" + (rest.is_zero() ? ", the whole stratum" : " with " + rest.to_string() + " = 0") +
            "; flipped to (u = x = 0) on Y' where the equation reads " + after.to_string(),
        false, rest.is_zero() ? "F lies in (y, z, t)" : ""};
    rep.cones = cone_calculus(trace, {{bd[0], bd[1]}});
    rep.trace = std::move(trace);
    boundary_certificate(rep);
  }

  // psi2: re-embed with s = h, then weights (2, 1, 2, 1, 4) on (y, z, t, w, s).
  {
    const WPS P6({1, 1, 1, 2, 3, 6}, {"x", "y", "z", "t", "w", "s"});
    const RingPtr r6 = P6.ring();
    const Polynomial y = Polynomial::variable(r6, "y"), s = Polynomial::variable(r6, "s");
    const Polynomial h = cond.h.in_ring(r6), G = F.in_ring(r6) - y * h;
    out.reembedded = WCISpec{P6, {y * s + G, s - h}, {{7}, {6}}};
    out.reembedded.validate();

    LinkReport& rep = out.psi2;
    rep.variety = "X^";
    rep.center = "q^ (p_x after renaming), weights (y,z,t,w,s) = (2,1,2,1,4) after F1 = ys + G, F2 = s - h";
    const RingPtr gr = make_ring({"y", "z", "t", "w", "s"});
    rep.extraction = weighted_blowup_discrepancy(
        Germ{gr, {at_one(out.reembedded.equations[0], "x", gr), at_one(out.reembedded.equations[1], "x", gr)}, 1, {}, "psi2"},
        WeightVector({2, 1, 2, 1, 4}), trials, seed);
    if (rep.extraction->discrepancy != 1) throw Inconsistency("psi2 discrepancy is " + rational_string(rep.extraction->discrepancy));
    const Rank2Toric T = blowup_ambient(P6, "x", WeightVector({2, 1, 2, 1, 4}));
    const WeightVector tw({0, 2, 1, 2, 1, 4});
    const Polynomial c1 = toric_transform(out.reembedded.equations[0], tw, "u").in_ring(T.ring());
    const Polynomial c2 = toric_transform(out.reembedded.equations[1], tw, "u").in_ring(T.ring());
    const auto d1 = bidegree_of(T, c1), d2 = bidegree_of(T, c2);
    LinkTrace trace = run_two_ray_game(T);
    if (trace.walls.size() != 3 || trace.walls[0].kind != WallKind::Small || trace.walls[1].kind != WallKind::Small) {
      throw Inconsistency("psi2 game does not have two small walls");
    }
    {
      const auto b0 = beyond(trace, trace.walls[0]);
      const Polynomial r1 = vanish(c1, b0), r2 = vanish(c2, b0);
      const std::size_t iw = T.index("w");
      const bool empty = r1.is_zero() && r2.is_monomial() && r2.involves(iw) && r2.variables().size() == 1;
      if (!empty) {
        throw Inconsistency("psi2 first wall: " + zero_locus(b0) + " on Y is (" + r1.to_string() + " = " + r2.to_string() + " = 0)");
      }
      trace.walls[0].restricted = RestrictedWall{zero_locus(b0) + " on Y = (" + r2.to_string() + " = 0) there", true,
                                                 "w^2 in h forces w = 0, and then every coordinate of the second group vanishes"};
    }
    {
      const auto b1 = beyond(trace, trace.walls[1]);
      const Polynomial r1 = vanish(c1, b1), r2 = vanish(c2, b1);
      trace.walls[1].restricted = RestrictedWall{"Gamma = " + zero_locus(b1) + " on Y = (" + r1.to_string() + " = " + r2.to_string() + " = 0)",
                                                 false, "a curve, flipped"};
    }
    rep.cones = cone_calculus(trace, {{d1[0], d1[1]}, {d2[0], d2[1]}});
    rep.trace = std::move(trace);
    boundary_certificate(rep);
  }
  return out;
}

}  // namespace wcilink
