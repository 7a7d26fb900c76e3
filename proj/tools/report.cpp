#include "report.hpp"

#include <algorithm>
#include <sstream>

namespace wcilink::report {

namespace {

template <class T, class F>
json list(const std::vector<T>& xs, F f) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(f(x));
  return out;
}

json strings(const std::vector<std::string>& xs) { return json(xs); }

json checks(const std::vector<HypothesisCheck>& hs) {
  return list(hs, [](const HypothesisCheck& h) { return json{{"name", h.name}, {"holds", h.holds}, {"detail", h.detail}}; });
}

std::string germ_type(GermType t) { return t == GermType::CA2 ? "cA/2" : "cE6"; }

}  // namespace

json rational(const Rational& q) { return rational_string(q); }
json coefficient(const Coefficient& c) { return c.to_string(); }
json polynomial(const Polynomial& f) { return f.to_string(); }
json bidegree(const Bidegree& b) { return "[" + std::to_string(b[0]) + "," + std::to_string(b[1]) + "]"; }

json wci(const WCISpec& v) {
  json j;
  j["ambient"] = std::holds_alternative<WPS>(v.ambient) ? std::get<WPS>(v.ambient).to_string(true)
                                                         : std::get<Rank2Toric>(v.ambient).to_string();
  j["equations"] = list(v.equations, polynomial);
  json degrees = json::array();
  for (const auto& d : v.degrees) degrees.push_back(json(d));
  j["degrees"] = degrees;
  return j;
}

json ambient(const AmbientAnalysis& a) {
  return {{"well_formed", a.well_formed},
          {"wci_well_formed", a.wci_well_formed},
          {"fano_index", a.fano_index},
          {"amplitude", rational(a.amplitude)}};
}

json verdict(const QuasismoothVerdict& v) {
  return {{"location", v.location}, {"quasismooth", v.quasismooth}, {"exact", v.exact}, {"witness", v.witness}};
}

json singularity(const SingularityReport& r) {
  json j{{"point", r.point}, {"kind", to_string(r.kind)}, {"germ", to_string(r.germ)}, {"terminal", r.terminal}};
  j["type"] = r.type ? json(r.type->to_string()) : json(nullptr);
  j["raw"] = r.raw ? json(r.raw->to_string()) : json(nullptr);
  j["witness"] = strings(r.witness);
  return j;
}

json germ(const GermAnalysis& g) {
  json j{{"type", germ_type(g.type)},
         {"hypotheses", checks(g.hypotheses)},
         {"minimal_discrepancy", rational(g.minimal_discrepancy)},
         {"count", g.count},
         {"notes", strings(g.notes)},
         {"cited", strings(g.cited)}};
  j["lambda"] = g.lambda ? coefficient(*g.lambda) : json(nullptr);
  j["table"] = list(g.table, [](const DivisorRow& r) {
    return json{{"label", r.label},      {"weights", r.weights.to_string()}, {"a_Y", rational(r.a_Y)},
                {"ord", rational(r.ord)}, {"coefficient", rational(r.coefficient)}, {"a_X", rational(r.a_X)}};
  });
  return j;
}

json discrepancy(const DiscrepancyRecord& d) {
  const long r = d.weights.denominator();
  json j{{"center", d.center},
         {"weights", d.weights.to_string()},
         {"multiplicities", list(d.multiplicities, [r](long m) {
           Rational q(m, r);
           q.canonicalize();
           return rational(q);
         })},
         {"exceptional_model", wci(d.exceptional_model)},
         {"eliminated", strings(d.eliminated)},
         {"irreducibility",
          {{"kind", to_string(d.irreducibility.kind)}, {"method", d.irreducibility.method}, {"witness", d.irreducibility.witness}}},
         {"discrepancy", rational(d.discrepancy)}};
  j["reduced_model"] = d.reduced_model ? polynomial(*d.reduced_model) : json(nullptr);
  return j;
}

namespace {

json wall(const Wall& w) {
  json j{{"ray", bidegree(w.ray)},
         {"on_ray", strings(w.on_ray)},
         {"kind", to_string(w.kind)},
         {"beyond", w.beyond},
         {"exponents", list(w.exponents, rational)}};
  j["contracted"] = w.contracted ? json(*w.contracted) : json(nullptr);
  if (w.target) {
    j["target"] = {{"space", w.target->space.to_string(true)},
                   {"raw_weights", json(w.target->raw_weights)},
                   {"normalization", strings(w.target->normalization)},
                   {"image_variables", strings(w.target->image_variables)}};
  } else {
    j["target"] = nullptr;
  }
  if (w.restricted) {
    j["restricted"] = {{"locus", w.restricted->locus},
                       {"isomorphism", w.restricted->isomorphism},
                       {"certificate", w.restricted->certificate}};
  } else {
    j["restricted"] = nullptr;
  }
  return j;
}

}  // namespace

json trace(const LinkTrace& t) {
  json rays = json::array();
  for (std::size_t i = 0; i < t.rays.size(); ++i) rays.push_back({{"ray", bidegree(t.rays[i])}, {"variables", strings(t.ray_variables[i])}});
  json matrix = json::array();
  for (const auto& row : t.ambient.matrix()) matrix.push_back(json(row));
  return {{"names", strings(t.ambient.names())},
          {"matrix", matrix},
          {"rays", rays},
          {"initial", wall(t.initial)},
          {"walls", list(t.walls, wall)},
          {"small_walls", t.small_walls()}};
}

json cones(const ConeReport& c) {
  return {{"nef", list(c.nef, [](const ConeZ2& z) { return z.to_string(); })},
          {"mov", c.mov.to_string()},
          {"anticanonical", bidegree(c.anticanonical)},
          {"anticanonical_label", c.anticanonical_label},
          {"on_boundary", c.anticanonical_on_boundary},
          {"in_interior", c.anticanonical_in_interior}};
}

json census(const Census& c) {
  json j{{"ambient", ambient(c.ambient)}, {"points", list(c.points, singularity)}, {"certificates", strings(c.certificates)}};
  // Exact verdicts in full; sampled ones as a tally.
  json exact = json::array();
  std::size_t sampled = 0, sampled_ok = 0;
  for (const auto& v : c.checks) {
    if (v.exact) {
      exact.push_back(verdict(v));
    } else {
      ++sampled;
      sampled_ok += v.quasismooth ? 1 : 0;
    }
  }
  j["coordinate_checks"] = exact;
  j["sampled"] = {{"points", sampled},
                  {"quasismooth", sampled_ok}};
  j["germ"] = c.germ ? germ(*c.germ) : json(nullptr);
  return j;
}

json link_report(const LinkReport& r) {
  json j{{"variety", r.variety},
         {"center", r.center},
         {"verdict", to_string(r.verdict)},
         {"certificate", r.certificate},
         {"reference", r.reference}};
  j["extraction"] = r.extraction ? discrepancy(*r.extraction) : json(nullptr);
  j["trace"] = r.trace ? trace(*r.trace) : json(nullptr);
  j["cones"] = r.cones ? cones(*r.cones) : json(nullptr);
  j["target"] = r.target ? wci(*r.target) : json(nullptr);
  return j;
}

json rational_map(const RationalMap& m) {
  return {{"description", m.description}, {"formula", m.to_string()}, {"target", strings(m.target_names)}};
}

json normal_form(const NormalFormX1214& nf) {
  return {{"F1", polynomial(nf.F1)},
          {"F2", polynomial(nf.F2)},
          {"a12", polynomial(nf.a12)},
          {"b4", polynomial(nf.b4)},
          {"c12", polynomial(nf.c12)},
          {"g14", polynomial(nf.g14)},
          {"lambda", coefficient(nf.lambda)},
          {"mu", coefficient(nf.mu)},
          {"resultant", coefficient(nf.resultant)},
          {"scale", {coefficient(nf.scale[0]), coefficient(nf.scale[1])}},
          {"change", nf.change.to_string()},
          {"steps", strings(nf.steps)},
          {"certificates", strings(nf.certificates)}};
}

json hat(const NormalFormHatX& h) {
  return {{"hypersurface", wci(h.hypersurface)},
          {"F", polynomial(h.F)},
          {"a6", polynomial(h.a6)},
          {"b2", polynomial(h.b2)},
          {"c6", polynomial(h.c6)},
          {"g6", polynomial(h.g6)},
          {"lambda", coefficient(h.lambda)},
          {"wci", wci(h.wci)}};
}

json link(const LinkSigma& l) {
  return {{"Y", wci(l.Y)},
          {"trace", trace(l.trace)},
          {"cones", cones(l.cones)},
          {"extraction", discrepancy(l.extraction)},
          {"hat", hat(l.hat)},
          {"q_hat", l.q_hat},
          {"sigma", rational_map(l.sigma)},
          {"sigma_inverse", rational_map(l.sigma_inverse)},
          {"certificates", strings(l.certificates)}};
}

json classification(const Classification& c) {
  auto count = [](std::size_t n) { return n; };
  return {{"reports", list(c.reports, link_report)},
          {"links_from_X", count(c.links_from_X)},
          {"links_from_hat", count(c.links_from_hat)},
          {"germ_count", count(c.germ_count)},
          {"divisors", strings(c.divisors)},
          {"valuations", strings(c.valuations)},
          {"assumptions", strings(c.assumptions)},
          {"summary", c.summary}};
}

namespace {

bool scalar(const json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

void emit(std::ostringstream& os, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (scalar(v)) {
        os << pad << k << ": " << scalar_text(v) << "\n";
      } else if (v.is_array() && std::all_of(v.begin(), v.end(), scalar)) {
        os << pad << k << ":";
        std::string sep = " ";
        for (const auto& x : v) {
          os << sep << scalar_text(x);
          sep = ", ";
        }
        os << "\n";
      } else {
        os << pad << k << ":\n";
        emit(os, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& x : j) {
      if (scalar(x)) {
        os << pad << "- " << scalar_text(x) << "\n";
      } else if (x.is_array() && std::all_of(x.begin(), x.end(), scalar)) {
        os << pad << "-";
        std::string sep = " ";
        for (const auto& y : x) {
          os << sep << scalar_text(y);
          sep = ", ";
        }
        os << "\n";
      } else {
        os << pad << "-\n";
        emit(os, x, indent + 2);
      }
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

}  // namespace

std::string text(const json& j) {
  std::ostringstream os;
  emit(os, j, 0);
  return os.str();
}

}  // namespace wcilink::report
