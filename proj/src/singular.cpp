#include "wcilink/singular.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "wcilink/substitution.hpp"
#include "wcilink/univariate.hpp"

namespace wcilink {

namespace {

const WPS& wps_of(const WCISpec& v) {
  const auto* w = std::get_if<WPS>(&v.ambient);
  if (!w) throw SingularityError("this check needs a weighted projective ambient");
  return *w;
}

std::string eq_name(std::size_t j) { return "F" + std::to_string(j + 1); }

long mod(long a, long r) { return ((a % r) + r) % r; }

Monomial unit_monomial(std::size_t n, std::size_t i, int e = 1) {
  Monomial m(n, 0);
  m[i] = e;
  return m;
}

// Monomial xi^e * x_i of the given degree, if the weights allow it.
std::optional<Monomial> linear_at_point(const WPS& p, std::size_t xi, std::size_t i, long deg) {
  const long rest = deg - p.weight(i);
  if (rest < 0 || rest % p.weight(xi)) return std::nullopt;
  Monomial m(p.size(), 0);
  m[xi] = static_cast<int>(rest / p.weight(xi));
  m[i] += 1;
  return m;
}

// Coefficient matrix of the cone Jacobian at p_xi.
std::vector<std::vector<Coefficient>> point_jacobian(const WCISpec& v, std::size_t xi,
                                                     std::vector<std::vector<std::string>>* witness) {
  const WPS& p = wps_of(v);
  std::vector<std::vector<Coefficient>> rows;
  for (std::size_t j = 0; j < v.equations.size(); ++j) {
    std::vector<Coefficient> row(p.size(), Coefficient(0));
    std::vector<std::string> seen;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i == xi) continue;
      if (auto m = linear_at_point(p, xi, i, v.degrees[j][0])) {
        row[i] = v.equations[j].coefficient(*m);
        if (!row[i].is_zero()) seen.push_back(monomial_string(*p.ring(), *m));
      }
    }
    rows.push_back(std::move(row));
    if (witness) witness->push_back(std::move(seen));
  }
  return rows;
}

// Fix the variables with a value; the rest stay symbolic.
Polynomial specialize(const Polynomial& f, const std::vector<std::optional<std::uint64_t>>& vals, std::uint64_t p) {
  Polynomial out(f.ring());
  for (const auto& [m, c] : f.terms()) {
    Coefficient k = c.reduce(p);
    Monomial rest = m;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (vals[i] && m[i]) {
        k *= Coefficient::residue(static_cast<std::int64_t>(pow_mod(*vals[i], static_cast<std::uint64_t>(m[i]), p)), p);
        rest[i] = 0;
      }
    }
    if (!k.is_zero()) out.add_term(rest, k);
  }
  return out;
}

std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t p) { return std::uniform_int_distribution<std::uint64_t>(0, p - 1)(rng); }

std::optional<std::uint64_t> random_root(const UPoly& u, std::mt19937_64& rng) {
  if (u.degree() < 1) return std::nullopt;
  auto rs = roots(u, rng);
  if (rs.empty()) return std::nullopt;
  return rs[std::uniform_int_distribution<std::size_t>(0, rs.size() - 1)(rng)];
}

// A point of V with support in `stratum`, or nothing after the retry budget.
std::optional<std::vector<std::uint64_t>> sample_on_stratum(const std::vector<Polynomial>& eqs,
                                                           const std::vector<std::size_t>& stratum,
                                                           std::size_t n, std::uint64_t p, std::mt19937_64& rng) {
  std::vector<std::optional<std::uint64_t>> zero(n);
  std::vector<bool> in(n, false);
  for (auto i : stratum) in[i] = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!in[i]) zero[i] = 0;
  }
  std::vector<Polynomial> live;
  for (const auto& f : eqs) {
    Polynomial g = specialize(f, zero, p);
    if (!g.is_zero()) live.push_back(std::move(g));
  }
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<std::optional<std::uint64_t>> vals = zero;
    for (auto i : stratum) vals[i] = uniform(rng, p);
    if (live.empty()) {
      // fall through to the common exit
    } else {
      const auto vars = live[0].variables();
      if (vars.empty()) return std::nullopt;  // a nonzero constant: the stratum misses V
      const std::size_t a = vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)];
      if (live.size() == 1) {
        vals[a].reset();
        auto r = random_root(to_upoly(specialize(live[0], vals, p), a, p), rng);
        if (!r) continue;
        vals[a] = *r;
      } else {
        // Two unknowns: eliminate b by a resultant, then solve back.
        std::optional<std::size_t> b;
        for (auto i : live[1].variables()) {
          if (i != a) b = i;
        }
        if (!b) continue;
        vals[a].reset();
        vals[*b].reset();
        const Polynomial g1 = specialize(live[0], vals, p);
        const Polynomial g2 = specialize(live[1], vals, p);
        if (g1.is_zero() || g2.is_zero()) continue;
        const Polynomial res = resultant(g1, g2, *b);
        if (res.is_zero()) continue;
        auto ra = random_root(to_upoly(res, a, p), rng);
        if (!ra) continue;
        vals[a] = *ra;
        const UPoly h = gcd(to_upoly(specialize(g1, vals, p), *b, p), to_upoly(specialize(g2, vals, p), *b, p));
        auto rb = random_root(h, rng);
        if (!rb) continue;
        vals[*b] = *rb;
      }
    }
    std::vector<std::uint64_t> pt(n);
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      pt[i] = *vals[i];
      nonzero = nonzero || pt[i];
    }
    if (!nonzero) continue;
    std::vector<Coefficient> cp;
    for (auto x : pt) cp.push_back(Coefficient::residue(static_cast<std::int64_t>(x), p));
    const bool ok = std::all_of(eqs.begin(), eqs.end(), [&](const Polynomial& f) { return evaluate(f, cp).is_zero(); });
    if (ok) return pt;
  }
  return std::nullopt;
}

std::vector<QuasismoothVerdict> sampled_verdicts(const WCISpec& v, const std::vector<std::size_t>& stratum,
                                                 std::size_t count, std::uint64_t seed, std::uint64_t p,
                                                 const std::string& label) {
  const std::size_t n = v.ring()->size();
  std::vector<Polynomial> eqs;
  for (const auto& f : v.equations) eqs.push_back(f.reduce(p));
  const auto jac = jacobian(eqs);
  std::mt19937_64 rng(seed);
  std::vector<QuasismoothVerdict> out;
  for (std::size_t k = 0; k < count; ++k) {
    auto pt = sample_on_stratum(eqs, stratum, n, p, rng);
    if (!pt) break;
    std::vector<Coefficient> cp;
    std::string shown = "(";
    for (std::size_t i = 0; i < n; ++i) {
      cp.push_back(Coefficient::residue(static_cast<std::int64_t>((*pt)[i]), p));
      shown += (i ? ":" : "") + std::to_string((*pt)[i]);
    }
    shown += ")";
    std::vector<std::vector<Coefficient>> rows;
    for (const auto& row : jac) {
      std::vector<Coefficient> r;
      for (const auto& d : row) r.push_back(evaluate(d, cp));
      rows.push_back(std::move(r));
    }
    QuasismoothVerdict vd;
    vd.location = label + " sample " + std::to_string(k + 1);
    vd.exact = false;
    vd.quasismooth = matrix_rank(rows) == eqs.size();
    vd.witness = shown + " over F_" + std::to_string(p);
    out.push_back(std::move(vd));
  }
  if (out.empty()) {
    out.push_back({label, true, false, "no point of V found on this locus after the retry budget"});
  }
  return out;
}

std::vector<long> sorted_residues(const std::vector<long>& w, long k, long r) {
  std::vector<long> v;
  for (long a : w) v.push_back(mod(a * k, r));
  std::sort(v.begin(), v.end());
  return v;
}

// Cyclic group generated by pseudo-reflections is all of Z_r.
bool reflection_generated(const std::vector<long>& w, long r) {
  long g = r;
  for (long k = 1; k < r; ++k) {
    const auto moved = std::count_if(w.begin(), w.end(), [&](long a) { return mod(a * k, r) != 0; });
    if (moved <= 1) g = std::gcd(g, k);
  }
  return g == 1;
}

Polynomial lowest_component(const Polynomial& f, const WeightVector& b) { return w_component(f, b, w_order(f, b)); }

// Eliminates variables through lowest components that are linear in them with
// a constant coefficient.
void eliminate_linear(std::vector<Polynomial>& eqs, std::vector<std::string>& log) {
  for (bool changed = true; changed && !eqs.empty();) {
    changed = false;
    for (std::size_t j = 0; j < eqs.size() && !changed; ++j) {
      const Polynomial& e = eqs[j];
      for (std::size_t var : e.variables()) {
        if (e.degree_in(var) != 1) continue;
        const Polynomial c = e.coefficient_of(var, 1);
        if (!c.is_constant() || c.is_zero()) continue;
        const Polynomial rest = e.coefficient_of(var, 0);
        const Polynomial image = rest.scaled(-(c.constant_term().inverse()));
        Substitution s = Substitution::identity(e.ring());
        s.set(var, image);
        log.push_back(e.ring()->name(var) + " = " + image.to_string() + " from " + e.to_string());
        std::vector<Polynomial> next;
        for (std::size_t k = 0; k < eqs.size(); ++k) {
          if (k == j) continue;
          Polynomial g = s.apply(eqs[k]);
          if (!g.is_zero()) next.push_back(std::move(g));
        }
        eqs = std::move(next);
        changed = true;
        break;
      }
    }
  }
}

bool semi_invariant(const Polynomial& f, const std::vector<long>& action, long r) {
  std::optional<long> chi;
  for (const auto& [m, c] : f.terms()) {
    long s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += action[i] * m[i];
    s = mod(s, r);
    if (chi && *chi != s) return false;
    chi = s;
  }
  return true;
}

// Reduces f modulo linear forms, each solved for its first variable.
Polynomial reduce_linear(Polynomial f, const std::vector<Polynomial>& linear) {
  for (const auto& l : linear) {
    const std::size_t piv = l.variables().front();
    const Coefficient c = l.coefficient_of(piv, 1).constant_term();
    Substitution s = Substitution::identity(f.ring());
    s.set(piv, l.coefficient_of(piv, 0).scaled(-(c.inverse())));
    f = s.apply(f);
  }
  return f;
}

bool is_linear_form(const Polynomial& f) {
  return !f.is_zero() && std::all_of(f.terms().begin(), f.terms().end(), [](const auto& t) { return degree(t.first) == 1; });
}

bool even_in(const Polynomial& f, std::size_t var) {
  return std::all_of(f.terms().begin(), f.terms().end(), [&](const auto& t) { return t.first[var] % 2 == 0; });
}

std::string rat(const Rational& q) { return rational_string(q); }

}  // namespace

// ---------------------------------------------------------------------------

bool on_variety(const WCISpec& v, std::string_view coordinate_point) {
  const WPS& p = wps_of(v);
  const std::size_t xi = p.index(coordinate_point);
  for (std::size_t j = 0; j < v.equations.size(); ++j) {
    const long d = v.degrees[j][0];
    if (d % p.weight(xi) == 0 && !v.equations[j].coefficient(unit_monomial(p.size(), xi, static_cast<int>(d / p.weight(xi)))).is_zero()) {
      return false;
    }
  }
  return true;
}

std::vector<QuasismoothVerdict> quasismooth_check(const WCISpec& v, const Location& where) {
  v.validate();
  const WPS& p = wps_of(v);
  if (const auto* cp = std::get_if<CoordinatePoint>(&where)) {
    if (!on_variety(v, cp->var)) throw SingularityError("p_" + cp->var + " is not on V");
    std::vector<std::vector<std::string>> seen;
    const auto rows = point_jacobian(v, p.index(cp->var), &seen);
    QuasismoothVerdict vd;
    vd.location = "p_" + cp->var;
    vd.quasismooth = matrix_rank(rows) == v.equations.size();
    for (std::size_t j = 0; j < seen.size(); ++j) {
      std::string s;
      for (const auto& m : seen[j]) s += (s.empty() ? "" : ", ") + m;
      vd.witness += (j ? "; " : "") + eq_name(j) + ": " + (s.empty() ? "none" : s);
    }
    return {vd};
  }
  if (const auto* st = std::get_if<CoordinateStratum>(&where)) {
    std::vector<std::size_t> idx;
    std::string label = "stratum(";
    for (const auto& name : st->nonzero) {
      idx.push_back(p.index(name));
      label += (idx.size() > 1 ? "," : "") + name;
    }
    return sampled_verdicts(v, idx, st->samples, st->seed, st->p, label + ")");
  }
  const auto& sp = std::get<SampledPoints>(where);
  std::vector<std::size_t> all(p.size());
  std::iota(all.begin(), all.end(), 0);
  return sampled_verdicts(v, all, sp.count, sp.seed, sp.p, "V");
}

// ---------------------------------------------------------------------------

QuotientSingularity QuotientSingularity::canonical() const {
  QuotientSingularity best{r, sorted_residues(weights, 1, r)};
  for (long k = 2; k < r; ++k) {
    if (std::gcd(k, r) != 1) continue;
    auto v = sorted_residues(weights, k, r);
    if (v < best.weights) best.weights = std::move(v);
  }
  return best;
}

bool QuotientSingularity::terminal() const {
  if (weights.size() != 3 || r < 2) return false;
  for (long a : weights) {
    if (std::gcd(mod(a, r), r) != 1) return false;
  }
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      if (mod(weights[i] + weights[j], r) == 0) return true;
    }
  }
  return false;
}

std::string QuotientSingularity::to_string() const {
  std::string s = "1/" + std::to_string(r) + "(";
  for (std::size_t i = 0; i < weights.size(); ++i) s += (i ? "," : "") + std::to_string(weights[i]);
  return s + ")";
}

std::string to_string(PointKind k) {
  switch (k) {
    case PointKind::Smooth: return "smooth";
    case PointKind::Quotient: return "quotient";
    case PointKind::NonQuasismooth: return "non-quasismooth";
  }
  return "smooth";
}

std::string to_string(GermClass g) {
  switch (g) {
    case GermClass::None: return "none";
    case GermClass::CA2: return "cA/2";
    case GermClass::CE6: return "cE6";
    case GermClass::Unclassified: return "unclassified";
  }
  return "none";
}

SingularityReport classify_quotient_singularity(const WCISpec& v, std::string_view coordinate_point) {
  v.validate();
  const WPS& p = wps_of(v);
  const std::size_t m = v.equations.size();
  if (p.size() - 1 - m != 3) throw SingularityError("classification needs a threefold");
  const auto verdict = quasismooth_check(v, CoordinatePoint{std::string(coordinate_point)}).front();
  if (!verdict.quasismooth) throw SingularityError("V is not quasismooth at p_" + std::string(coordinate_point));
  const std::size_t xi = p.index(coordinate_point);
  const long r = p.weight(xi);

  SingularityReport rep;
  rep.point = "p_" + std::string(coordinate_point);
  const auto jac = point_jacobian(v, xi, nullptr);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v.degrees[a][0] < v.degrees[b][0]; });

  std::vector<std::size_t> chosen;
  std::vector<std::size_t> used_rows;
  for (std::size_t j : order) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i == xi || jac[j][i].is_zero() || std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
      // Keep the chosen minor nonsingular.
      std::vector<std::vector<Coefficient>> minor;
      auto rows = used_rows;
      rows.push_back(j);
      auto cols = chosen;
      cols.push_back(i);
      for (auto rr : rows) {
        std::vector<Coefficient> row;
        for (auto cc : cols) row.push_back(jac[rr][cc]);
        minor.push_back(std::move(row));
      }
      if (matrix_rank(minor) != rows.size()) continue;
      chosen.push_back(i);
      used_rows.push_back(j);
      const auto mono = linear_at_point(p, xi, i, v.degrees[j][0]);
      rep.witness.push_back(p.ring()->name(i) + " via " + monomial_string(*p.ring(), *mono) + " in " + eq_name(j) +
                            " (degree " + std::to_string(v.degrees[j][0]) + ")");
      break;
    }
  }
  if (chosen.size() != m) throw SingularityError("could not find " + std::to_string(m) + " eliminable variables at " + rep.point);

  if (r == 1) {
    rep.kind = PointKind::Smooth;
    return rep;
  }
  QuotientSingularity raw{r, {}};
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i != xi && std::find(chosen.begin(), chosen.end(), i) == chosen.end()) raw.weights.push_back(mod(p.weight(i), r));
  }
  rep.raw = raw;
  if (reflection_generated(raw.weights, r)) {
    rep.kind = PointKind::Smooth;
    rep.witness.push_back("the group is generated by pseudo-reflections");
    return rep;
  }
  rep.kind = PointKind::Quotient;
  rep.type = raw.canonical();
  rep.terminal = rep.type->terminal();
  if (!rep.terminal) rep.germ = GermClass::Unclassified;
  return rep;
}

// ---------------------------------------------------------------------------

DiscrepancyRecord weighted_blowup_discrepancy(const Germ& germ, const WeightVector& b, int trials, std::uint64_t seed) {
  const std::size_t n = germ.ring->size();
  if (b.size() != n) throw SingularityError("blowup weights must cover every germ variable");
  for (long x : b.numerators()) {
    if (x <= 0) throw SingularityError("blowup weights must be strictly positive");
  }
  const long r = b.denominator();
  if (germ.r != r) {
    throw SingularityError("weight denominator " + std::to_string(r) + " differs from the quotient order " +
                           std::to_string(germ.r));
  }
  if (r > 1) {
    if (germ.action.size() != n) throw SingularityError("quotient action must cover every variable");
    bool compatible = false;
    for (long k = 1; k < r && !compatible; ++k) {
      if (std::gcd(k, r) != 1) continue;
      compatible = true;
      for (std::size_t i = 0; i < n; ++i) compatible = compatible && mod(b.numerators()[i] - k * germ.action[i], r) == 0;
    }
    if (!compatible) throw SingularityError("weights " + b.to_string() + " do not match the action of Z_" + std::to_string(r));
    for (std::size_t j = 0; j < germ.equations.size(); ++j) {
      if (!semi_invariant(germ.equations[j], germ.action, r)) {
        throw SingularityError(eq_name(j) + " is not semi-invariant under Z_" + std::to_string(r));
      }
    }
  }

  DiscrepancyRecord rec{germ.label, b, {}, {WPS(b.numerators(), germ.ring->names()), {}, {}}, {}, {}, {}, {}};
  long total = std::accumulate(b.numerators().begin(), b.numerators().end(), 0L);
  std::vector<Polynomial> lowest;
  for (std::size_t j = 0; j < germ.equations.size(); ++j) {
    const Polynomial& f = germ.equations[j];
    if (f.is_zero()) throw SingularityError(eq_name(j) + " vanishes identically; degenerate center");
    if (!f.constant_term().is_zero()) throw SingularityError("the origin is not on the germ (" + eq_name(j) + ")");
    const Rational o = w_order(f, b) * r;
    const long mult = o.get_num().get_si();
    rec.multiplicities.push_back(mult);
    total -= mult;
    lowest.push_back(lowest_component(f, b));
    rec.exceptional_model.equations.push_back(lowest.back());
    rec.exceptional_model.degrees.push_back({mult});
  }
  rec.discrepancy = Rational(total - r, r);
  rec.discrepancy.canonicalize();

  eliminate_linear(lowest, rec.eliminated);
  if (lowest.empty()) {
    rec.irreducibility.kind = Irreducibility::Irreducible;
    rec.irreducibility.method = "weighted projective space";
  } else if (lowest.size() == 1) {
    rec.reduced_model = lowest.front();
    rec.irreducibility = irreducibility_verdict(lowest.front(), trials, seed);
  } else {
    rec.irreducibility.kind = Irreducibility::Unknown;
    rec.irreducibility.method = "complete intersection of codimension " + std::to_string(lowest.size());
  }
  return rec;
}

std::optional<Rational> exceptional_order(const Germ& germ, const WeightVector& b, std::size_t var) {
  std::vector<Polynomial> linear;
  std::optional<Rational> nonlinear_floor;
  for (const auto& f : germ.equations) {
    const Polynomial in = lowest_component(f, b);
    if (is_linear_form(in)) {
      linear.push_back(in);
    } else {
      const Rational w = w_order(f, b);
      if (!nonlinear_floor || w < *nonlinear_floor) nonlinear_floor = w;
    }
  }
  // Echelonize so that later forms no longer contain earlier pivots.
  for (std::size_t i = 0; i < linear.size(); ++i) {
    for (std::size_t k = i + 1; k < linear.size(); ++k) linear[k] = reduce_linear(linear[k], {linear[i]});
    linear.erase(std::remove_if(linear.begin() + static_cast<long>(i) + 1, linear.end(),
                                [](const Polynomial& l) { return l.is_zero(); }),
                 linear.end());
  }

  Polynomial phi = Polynomial::variable(germ.ring, var);
  for (int round = 0; round < 2; ++round) {
    const Rational d = w_order(phi, b);
    const Polynomial in = reduce_linear(lowest_component(phi, b), linear);
    if (!in.is_zero()) {
      if (!nonlinear_floor || d < *nonlinear_floor) return d;
      return std::nullopt;
    }
    if (round > 0) return std::nullopt;
    // var = -phi'/U on the germ when an equation reads var*U + phi' with U(0) != 0.
    bool moved = false;
    for (const auto& f : germ.equations) {
      Polynomial u(germ.ring), rest(germ.ring);
      for (const auto& [m, c] : f.terms()) {
        if (m[var] > 0) {
          Monomial q = m;
          --q[var];
          u.add_term(q, c);
        } else {
          rest.add_term(m, c);
        }
      }
      if (!u.constant_term().is_zero() && !rest.is_zero()) {
        phi = rest;
        moved = true;
        break;
      }
    }
    if (!moved) return std::nullopt;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

bool GermAnalysis::hypotheses_hold() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(), [](const HypothesisCheck& h) { return h.holds; });
}

const HypothesisCheck* GermAnalysis::check(std::string_view name) const {
  for (const auto& h : hypotheses) {
    if (h.name == name) return &h;
  }
  return nullptr;
}

namespace {

void require(const GermAnalysis& g) {
  for (const auto& h : g.hypotheses) {
    if (!h.holds) throw SingularityError("hypothesis '" + h.name + "' fails: " + h.detail);
  }
}

// Plane curve d(y, t) = 0 is smooth: no common zero of d, d_y, d_t.
std::optional<std::string> smooth_plane_curve(const Polynomial& d, std::size_t y, std::size_t t, std::uint64_t p) {
  if (d.is_zero()) return std::nullopt;
  auto squarefree_in = [&](const Polynomial& f, std::size_t var) -> std::optional<std::string> {
    const UPoly u = to_upoly(f, var, p);
    if (u.degree() < 0) return std::nullopt;
    if (u.degree() == 0) return "the curve is empty";
    if (is_squarefree(u)) return "squarefree in " + d.ring()->name(var);
    return std::nullopt;
  };
  const int dt = d.degree_in(t);
  if (dt == 0) return squarefree_in(d, y);
  const Polynomial dy = d.derivative(y);
  if (dy.is_zero()) return squarefree_in(d, t);
  const Polynomial lc = d.coefficient_of(t, dt);
  if (!lc.is_constant() || lc.reduce(p).is_zero()) return std::nullopt;
  const Polynomial r1 = resultant(d, d.derivative(t), t);
  const Polynomial r2 = resultant(d, dy, t);
  const UPoly u1 = to_upoly(r1, y, p);
  const UPoly u2 = to_upoly(r2, y, p);
  if (u1.is_zero() || u2.is_zero()) return std::nullopt;
  // Over Q the leading coefficients must survive reduction.
  if (u1.degree() != r1.degree_in(y) || u2.degree() != r2.degree_in(y)) return std::nullopt;
  if (gcd(u1, u2).degree() == 0) {
    return "gcd(Res_t(d, d_t), Res_t(d, d_y)) = 1 over F_" + std::to_string(p);
  }
  return std::nullopt;
}

}  // namespace

GermAnalysis analyze_cA2_germ(const Polynomial& g) {
  if (g.ring()->size() != 2) throw SingularityError("g must live in the ring (z, t)");
  GermAnalysis out;
  out.type = GermType::CA2;
  const std::size_t z = 0, t = 1;
  const WeightVector wzt({1, 2});
  const bool nonzero = !g.is_zero();
  out.hypotheses.push_back({"g is a polynomial in z^2 and t", nonzero && even_in(g, z), g.to_string()});
  const Rational ord = nonzero ? w_order(g, wzt) : Rational(0);
  out.hypotheses.push_back({"weighted order 6 under wt(z,t) = (1,2)", nonzero && ord == 6, "order " + rat(ord)});
  const bool t3 = contains_monomial(g, {0, 3});
  out.hypotheses.push_back({"t^3 in g", t3, t3 ? "coefficient " + g.coefficient({0, 3}).to_string() : "absent"});
  require(out);

  const RingPtr ring = make_ring({"x", "y", g.ring()->name(z), g.ring()->name(t)});
  const Polynomial f = Polynomial::variable(ring, 0) * Polynomial::variable(ring, 1) + g.in_ring(ring);
  const Germ germ{ring, {f}, 2, {1, 1, 1, 0}, "(xy + g(z^2,t))/Z_2(1,1,1,0)"};
  const WeightVector bE({5, 1, 1, 2}, 2);
  const auto rec = weighted_blowup_discrepancy(germ, bE);
  if (rec.irreducibility.kind != Irreducibility::Irreducible) {
    out.notes.push_back("exceptional divisor irreducibility: " + to_string(rec.irreducibility.kind));
  }
  out.minimal_discrepancy = rec.discrepancy;
  out.table.push_back({"E", bE, rec.discrepancy, Rational(0), rec.discrepancy, rec.discrepancy});
  out.notes.push_back("E = (" + rec.exceptional_model.equations.front().to_string() + " = 0) in " +
                      std::get<WPS>(rec.exceptional_model.ambient).to_string(true));
  out.notes.push_back("E is not Cartier only at q = (1:0:0:0), a point of type 1/5(1,2,3) with orbifold coordinates (x', z', t') of weights (3,2,1)");

  // Divisors over q with discrepancy below 1: wt(x', z', t') = ([3i], [2i], i)/5.
  const RingPtr chart = make_ring({"x'", "z'", "t'"});
  const Germ q{chart, {}, 5, {3, 2, 1}, "q in 1/5(3,2,1)"};
  out.count = 1;
  for (long i = 1; i <= 4; ++i) {
    const WeightVector b({mod(3 * i, 5), mod(2 * i, 5), i}, 5);
    const Rational aY = weighted_blowup_discrepancy(q, b).discrepancy;
    const auto o = exceptional_order(q, b, 0);
    if (!o) throw SingularityError("order of E along F_" + std::to_string(i) + " is undetermined");
    Rational aX = aY + *o * rec.discrepancy;
    aX.canonicalize();
    out.table.push_back({"F" + std::to_string(i), b, aY, *o, rec.discrepancy, aX});
    if (aX == out.minimal_discrepancy) ++out.count;
  }
  return out;
}

GermAnalysis analyze_cE6_germ(const Polynomial& f_in, int trials, std::uint64_t seed) {
  const RingPtr& ring = f_in.ring();
  if (ring->size() != 4) throw SingularityError("the cE6 analyzer expects four variables (x, y, z, t)");
  const std::size_t x = 0, y = 1, z = 2, t = 3;
  const std::uint64_t p = f_in.modulus() ? f_in.modulus() : kDefaultPrime;
  GermAnalysis out;
  out.type = GermType::CE6;
  out.notes.push_back("the hypothesis list names g3(y, z^2) while the equation uses g2; g2 of degree 2 is used");

  const Monomial x2 = unit_monomial(4, x, 2);
  const Coefficient cx2 = f_in.coefficient(x2);
  if (cx2.is_zero()) throw SingularityError("shape mismatch: x^2 is absent");
  const Polynomial f = f_in.scaled(cx2.inverse());
  const WeightVector W({3, 2, 1, 2});
  const Polynomial X = Polynomial::variable(ring, x);
  const Polynomial T = Polynomial::variable(ring, t);
  const Polynomial Z = Polynomial::variable(ring, z);

  // x-free part: g6(y, z^2) plus terms of weight > 6.
  const Polynomial a = f.coefficient_of(x, 0);
  Polynomial g6(ring), a_high(ring);
  for (const auto& [wt, part] : w_components(a, W)) {
    if (wt < 6) throw SingularityError("shape mismatch: x-free term of weight " + rat(wt) + " in " + part.to_string());
    (wt == 6 ? g6 : a_high) += part;
  }
  if (!a_high.is_zero()) {
    out.notes.push_back("x-free terms of weight > 6 are treated as higher order: " + a_high.to_string());
  }
  const auto bq = exact_quotient(f - Polynomial::term(ring, x2, Coefficient(1)) - a, X);
  if (!bq) throw SingularityError("shape mismatch: x-part is not divisible by x");
  const Polynomial& B = *bq;
  Polynomial b3(ring), rest(ring);
  for (const auto& [wt, part] : w_components(B, W)) {
    if (wt < 3) throw SingularityError("shape mismatch: x-cofactor term of weight " + rat(wt + 3) + " in " + part.to_string());
    (wt == 3 ? b3 : rest) += part;
  }
  const auto q3 = exact_quotient(b3, Z);
  if (!q3) throw SingularityError("shape mismatch: weight-6 x-terms are not divisible by xz");
  const Coefficient lambda = q3->coefficient(unit_monomial(4, t));
  out.lambda = lambda;
  const Polynomial g2 = *q3 - T.scaled(lambda);
  const Coefficient ct2 = rest.coefficient(unit_monomial(4, t, 2));
  if (ct2.is_zero()) throw SingularityError("shape mismatch: x*t^2 is absent");
  if (!ct2.is_one()) out.notes.push_back("coefficient of x*t^2 is " + ct2.to_string());
  const Polynomial h = rest - T.pow(2).scaled(ct2);
  if (h.involves(t)) throw SingularityError("shape mismatch: h involves t: " + h.to_string());
  if (!even_in(h, z)) out.notes.push_back("h has odd powers of z; the t-chart argument only uses its weighted order");

  const bool g_ok = !g2.involves(t) && !g2.involves(x) && even_in(g2, z) && !g6.involves(t) && !g6.involves(x) &&
                    even_in(g6, z);
  out.hypotheses.push_back({"(b) g2, g6 quasi-homogeneous in (y, z^2)", g_ok, "g2 = " + g2.to_string() + ", g6 = " + g6.to_string()});
  const Rational h_order = h.is_zero() ? Rational(99) : w_order(h, W);
  out.hypotheses.push_back({"(c) weighted order of h >= 4", h_order >= 4, h.is_zero() ? "h = 0" : "order " + rat(h_order)});
  const Coefficient mu = g6.coefficient(unit_monomial(4, y, 3));
  out.hypotheses.push_back({"y^3 in g6", !mu.is_zero(), "coefficient " + mu.to_string()});

  // (a): f0 = (x + zQ/2)^2 + D with Q = lambda t + g2. Off z = 0 only p_t is
  // singular once y^3 is present, so it is the plane curve D(y,1,t) = 0.
  const Polynomial Q = T.scaled(lambda) + g2;
  const Polynomial f0 = Polynomial::term(ring, x2, Coefficient(1)) + X * Z * Q + g6;
  const Polynomial D = g6 - (Z * Z * Q * Q).scaled(Coefficient(1) / Coefficient(4));
  Substitution z1 = Substitution::identity(ring);
  z1.set(z, Polynomial(ring, Coefficient(1)));
  const auto cert = mu.is_zero() ? std::nullopt : smooth_plane_curve(z1.apply(D), y, t, p);
  std::string detail = cert ? *cert : "not certified";
  const WCISpec model{WPS({3, 2, 1, 2}, ring->names()), {f0}, {{6}}};
  for (const auto& name : {ring->name(x), ring->name(y), ring->name(z)}) {
    if (!on_variety(model, name)) continue;
    const auto v = quasismooth_check(model, CoordinatePoint{name}).front();
    detail += "; p_" + name + (v.quasismooth ? " quasismooth" : " not quasismooth");
    if (!v.quasismooth) detail += " (fails)";
  }
  const auto samples = quasismooth_check(model, CoordinateStratum{{ring->name(x), ring->name(y), ring->name(z), ring->name(t)}, 16, seed, p});
  const bool sampled = std::all_of(samples.begin(), samples.end(), [](const QuasismoothVerdict& v) { return v.quasismooth; });
  detail += "; " + std::to_string(samples.size()) + " sampled points " + (sampled ? "quasismooth" : "include a singular one");
  out.hypotheses.push_back({"(a) quasismooth outside (0:0:0:1)", cert.has_value() && sampled && detail.find("(fails)") == std::string::npos, detail});
  require(out);

  // E: weights (3, 2, 1, 2).
  const WeightVector bE({3, 2, 1, 2});
  const auto recE = weighted_blowup_discrepancy(Germ{ring, {f}, 1, {}, "cE6 germ"}, bE, trials, seed);
  if (!(recE.exceptional_model.equations.front() == f0)) {
    throw SingularityError("lowest component differs from x^2 + xz(lambda t + g2) + g6");
  }
  out.minimal_discrepancy = recE.discrepancy;
  out.table.push_back({"E", bE, recE.discrepancy, Rational(0), recE.discrepancy, recE.discrepancy});
  out.notes.push_back("E = (" + f0.to_string() + " = 0) in P(3,2,1,2), irreducibility " +
                      to_string(recE.irreducibility.kind) + " (" + recE.irreducibility.method + ")");

  // t-chart: f(x t^3, y t^2, z t, t^2) / t^6, re-embedded with s = (f~ - G)/x.
  Substitution chart = Substitution::identity(ring);
  chart.set(x, X * T.pow(3));
  chart.set(y, Polynomial::variable(ring, y) * T.pow(2));
  chart.set(z, Z * T);
  chart.set(t, T.pow(2));
  const auto ft = exact_quotient(chart.apply(f), T.pow(6));
  if (!ft) throw SingularityError("t-chart transform is not divisible by t^6");
  const Polynomial G = ft->coefficient_of(x, 0);
  const Polynomial S = *exact_quotient(*ft - G, X);
  std::string s_name = "s";
  while (ring->find(s_name)) s_name += "'";
  auto names = ring->names();
  names.push_back(s_name);
  const RingPtr r5 = make_ring(names);
  const Polynomial s5 = Polynomial::variable(r5, 4);
  const Polynomial eq1 = Polynomial::variable(r5, x) * s5 + G.in_ring(r5);
  const Polynomial eq2 = s5 - S.in_ring(r5);
  const Germ chart_germ{r5, {eq1, eq2}, 2, {1, 0, 1, 1, 1}, "r in the t-chart"};
  out.notes.push_back("t-chart: (" + eq1.to_string() + " = " + eq2.to_string() + " = 0)/Z_2(1,0,1,1,1)");

  out.count = 1;
  for (long i : {1L, 3L, 5L}) {
    const WeightVector b({i, 2, 1, 1, 6 - i}, 2);
    const auto rec = weighted_blowup_discrepancy(chart_germ, b, trials, seed);
    const auto o = exceptional_order(chart_germ, b, t);
    if (!o) throw SingularityError("order of E along F_" + std::to_string(i) + " is undetermined");
    Rational aX = rec.discrepancy + *o * recE.discrepancy;
    aX.canonicalize();
    out.table.push_back({"F" + std::to_string(i), b, rec.discrepancy, *o, recE.discrepancy, aX});
    if (aX == out.minimal_discrepancy) ++out.count;
  }
  out.cited.push_back("no divisorial contraction centered at the point has discrepancy > 1 (external:[OkSolid Prop 3.16])");
  out.cited.push_back("the point is terminal of type cE6 via a general hyperplane section (external:[Pae24 Cor 4.7])");
  return out;
}

// ---------------------------------------------------------------------------

QuadraticInvolution quadratic_involution_test(const WCISpec& x7, std::string_view w_name) {
  x7.validate();
  const WPS& p = wps_of(x7);
  if (p.size() != 5 || x7.equations.size() != 1) throw SingularityError("expected a hypersurface in a 5-variable WPS");
  const std::size_t w = w_name.empty() ? p.size() - 1 : p.index(w_name);
  const Polynomial& F = x7.equations.front();
  if (F.degree_in(w) > 2) throw SingularityError("p_" + p.ring()->name(w) + " is not on X");

  QuadraticInvolution out{false, F.coefficient_of(w, 2), F.coefficient_of(w, 1), F.coefficient_of(w, 0), {}, false,
                          {WPS({1, 1, 1}), {}, {}}, {}, {}, {}};
  if (out.ell.is_zero()) throw SingularityError("not quasismooth at p_" + p.ring()->name(w) + " (ell = 0)");
  out.f4_over_ell = exact_quotient(out.f4, out.ell);
  out.self_link = !out.f4_over_ell.has_value();
  out.ell_divides_f7 = exact_quotient(out.f7, out.ell).has_value();
  out.assumptions.push_back("ell does not divide f7 (Q-factoriality of X)");
  if (out.ell_divides_f7) out.assumptions.push_back("ell divides f7 for this member, so the assumption fails");

  std::vector<std::string> names;
  std::vector<long> weights;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i == w) continue;
    names.push_back(p.ring()->name(i));
    weights.push_back(p.weight(i));
  }
  std::string s = "s";
  while (p.ring()->find(s)) s += "'";
  names.push_back(s);
  weights.push_back(p.weight(w) + (quasi_homogeneous_degree(out.ell, p.grading())->get_num().get_si()));
  const WPS zp(weights, names);
  const RingPtr zr = zp.ring();
  const Polynomial S = Polynomial::variable(zr, names.size() - 1);
  const Polynomial ell = out.ell.in_ring(zr), f4 = out.f4.in_ring(zr), f7 = out.f7.in_ring(zr);
  const Polynomial zeq = S * S + S * f4 + ell * f7;
  out.double_cover = WCISpec{zp, {zeq}, {{2 * weights.back()}}};
  out.special_locus = "(" + s + " = " + out.ell.to_string() + " = " + (out.f4.is_zero() ? "0" : out.f4.to_string()) +
                      " = " + out.f7.to_string() + " = 0)";
  const std::string wn = p.ring()->name(w);
  out.involution = wn + " -> -" + wn + " - (" + (out.f4.is_zero() ? "0" : out.f4.to_string()) + ")/(" + out.ell.to_string() + ")";
  return out;
}

}  // namespace wcilink
