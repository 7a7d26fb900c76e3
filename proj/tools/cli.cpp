#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "paper_checks.hpp"
#include "report.hpp"
#include "wcilink/links.hpp"
#include "wcilink/parse.hpp"

namespace wcilink::cli {

namespace {

using json = nlohmann::json;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kRejected = 2;
constexpr int kInconsistent = 3;

struct Flags {
  std::string command;
  std::string input;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 100;
  std::string format = "json";
  int trials = 20;
  std::string field;
  bool parallel = false;
  std::string point;
  std::string weights;
  std::optional<long> denominator;
};

json echo(const Flags& f) {
  json j{{"name", f.command},
         {"samples", std::to_string(f.samples)},
         {"format", f.format},
         {"trials", std::to_string(f.trials)},
         {"parallel", f.parallel}};
  if (!f.input.empty()) j["input"] = f.input;
  if (f.seed) j["seed"] = std::to_string(*f.seed);
  if (!f.field.empty()) j["field"] = f.field;
  if (!f.point.empty()) j["point"] = f.point;
  if (!f.weights.empty()) j["weights"] = f.weights;
  if (f.denominator) j["denominator"] = std::to_string(*f.denominator);
  return j;
}

// Report entries are exact: integers become their decimal strings.
json exact(json j) {
  if (j.is_number_integer()) return j.dump();
  if (j.is_number()) throw std::logic_error("inexact number in a report: " + j.dump());
  if (j.is_structured()) {
    for (auto& v : j) v = exact(std::move(v));
  }
  return j;
}

std::vector<long> parse_weights(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw std::invalid_argument("--weights: not an integer: '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("--weights is empty");
  return out;
}

Polynomial at_one(const Polynomial& f, const std::string& name, const RingPtr& target) {
  Substitution s(f.ring(), target);
  s.set(name, Polynomial(target, Coefficient(1)));
  return s.apply(f);
}

const WPS& wps_of(const WCISpec& v) { return std::get<WPS>(v.ambient); }

std::size_t center_index(const WPS& p, const std::string& point) {
  if (point.empty()) throw std::invalid_argument("--point is required");
  return p.index(point);
}

// The center with its coordinate set to 1, in the other coordinates, acted on by mu_r.
Germ germ_at(const WCISpec& v, const std::string& point) {
  const WPS& p = wps_of(v);
  const std::size_t c = center_index(p, point);
  if (!on_variety(v, point)) throw std::invalid_argument("p_" + point + " is not on the variety");
  std::vector<std::string> names;
  std::vector<long> action;
  const long r = p.weight(c);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i == c) continue;
    names.push_back(p.ring()->name(i));
    if (r > 1) action.push_back(p.weight(i) % r);
  }
  const RingPtr ring = make_ring(names);
  Germ g{ring, {}, r, action, "p_" + point};
  for (const auto& f : v.equations) g.equations.push_back(at_one(f, point, ring));
  return g;
}

WeightVector blowup_weights(const Flags& f, const WPS& p) {
  const std::vector<long> b = parse_weights(f.weights);
  if (b.size() + 1 != p.size()) {
    throw std::invalid_argument("--weights needs " + std::to_string(p.size() - 1) + " entries, one per coordinate other than " + f.point);
  }
  const long r = f.denominator.value_or(p.weight(center_index(p, f.point)));
  if (r < 1) throw std::invalid_argument("--denominator must be positive");
  return WeightVector(b, r);
}

struct Outcome {
  json steps = json::array();
  json assumptions = json::array();
  int status = kOk;
  std::optional<std::string> result;
};

json step(const std::string& name, json result) { return {{"name", name}, {"result", std::move(result)}}; }

Outcome analyze(const InputSpec& in, const Flags& f) {
  Outcome o;
  const WPS& p = wps_of(in.spec);
  std::vector<long> degs;
  for (const auto& d : in.spec.degrees) degs.push_back(d.at(0));
  o.steps.push_back(step("ambient", report::ambient(analyze_ambient(p, degs))));
  o.steps.push_back(step("census", report::census(singularity_census(in.spec, f.samples, in.seed))));
  return o;
}

Outcome qsmooth(const InputSpec& in, const Flags& f) {
  Outcome o;
  const WPS& p = wps_of(in.spec);
  std::vector<QuasismoothVerdict> vs;
  if (!f.point.empty()) {
    vs = quasismooth_check(in.spec, CoordinatePoint{f.point});
  } else {
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::string name = p.ring()->name(i);
      if (on_variety(in.spec, name)) {
        const auto v = quasismooth_check(in.spec, CoordinatePoint{name});
        vs.insert(vs.end(), v.begin(), v.end());
      }
    }
    const auto sampled = quasismooth_check(in.spec, SampledPoints{f.samples, in.seed, kDefaultPrime});
    vs.insert(vs.end(), sampled.begin(), sampled.end());
  }
  bool all = true;
  json list = json::array();
  for (const auto& v : vs) {
    all = all && v.quasismooth;
    list.push_back(report::verdict(v));
  }
  o.steps.push_back(step("quasismooth", {{"verdicts", list}, {"quasismooth", all}}));
  return o;
}

Outcome blowup(const InputSpec& in, const Flags& f) {
  Outcome o;
  const WeightVector b = blowup_weights(f, wps_of(in.spec));
  const DiscrepancyRecord d = weighted_blowup_discrepancy(germ_at(in.spec, f.point), b, f.trials, in.seed + 1);
  o.steps.push_back(step("blowup", report::discrepancy(d)));
  return o;
}

Outcome two_ray(const InputSpec& in, const Flags& f) {
  Outcome o;
  const WPS& p = wps_of(in.spec);
  const WeightVector b = blowup_weights(f, p);
  const std::size_t c = center_index(p, f.point);
  std::vector<long> full = b.numerators();
  full.insert(full.begin() + static_cast<long>(c), 0);
  const WeightVector tw(full, b.denominator());
  const Rank2Toric T = blowup_ambient(p, f.point, b);

  WCISpec Y{T, {}, {}};
  std::vector<Bidegree> degrees;
  for (const auto& eq : in.spec.equations) {
    const Polynomial g = toric_transform(eq, tw, "u").in_ring(T.ring());
    const auto d = T.bidegree(g);
    if (!d) throw Inconsistency("transported equation is not bihomogeneous: " + g.to_string());
    Y.equations.push_back(g);
    Y.degrees.push_back({(*d)[0], (*d)[1]});
    degrees.push_back(*d);
  }
  Y.validate();
  const LinkTrace trace = run_two_ray_game(T);
  o.steps.push_back(step("transport", report::wci(Y)));
  o.steps.push_back(step("trace", report::trace(trace)));
  o.steps.push_back(step("cones", report::cones(cone_calculus(trace, degrees))));
  return o;
}

Outcome link(const InputSpec& in, const Flags& f) {
  Outcome o;
  const NormalFormX1214 nf = normal_form_X1214(in.spec);
  o.steps.push_back(step("normal_form", report::normal_form(nf)));
  o.steps.push_back(step("link", report::link(construct_link_sigma(nf, f.trials, in.seed + 1))));
  return o;
}

Outcome classify(const InputSpec& in, const Flags& f) {
  Outcome o;
  PipelineOptions po;
  po.trials = f.trials;
  po.samples = f.samples;
  po.seed = in.seed;
  po.parallel = f.parallel;
  const Classification c = classify_links(in.spec, po);
  o.steps.push_back(step("classification", report::classification(c)));
  o.assumptions = c.assumptions;
  return o;
}

Outcome verify_paper(const Flags& f) {
  Outcome o;
  PaperCheckOptions opt;
  opt.seed = f.seed.value_or(7);
  opt.samples = f.samples;
  opt.trials = f.trials;
  opt.parallel = f.parallel;
  std::size_t failed = 0;
  for (const auto& c : paper_checks(opt)) {
    failed += c.passed ? 0 : 1;
    o.steps.push_back(step(c.name, {{"criterion", std::to_string(c.criterion)}, {"passed", c.passed}, {"detail", c.detail}}));
  }
  o.assumptions = json::array({"[DG23 Cor 7.2, 7.11]: no smooth point and no curve on X is a maximal center",
                               "[OkSolid Lem 4.5, 4.9]: smooth points of X^ and the 1/2(1,1,1) point are not maximal centers",
                               "[OkII Lem 2.9]: a curve on X^ that is a maximal center has degree < 7/6",
                               "[CPR Thm 5.1.1 Step 2]: a degree-1 curve in the smooth locus of X^ is not a maximal center"});
  o.status = failed == 0 ? kOk : kInconsistent;
  o.result = failed == 0 ? std::string("all paper checks passed") : std::to_string(failed) + " paper check(s) failed";
  return o;
}

InputSpec load(const Flags& f) {
  std::ifstream file(f.input);
  if (!file) throw std::invalid_argument("cannot read input file '" + f.input + "'");
  const json j = json::parse(file);
  std::optional<Field> field;
  if (f.field == "q") field = Field::rationals();
  if (f.field == "p") field = Field::prime(kDefaultPrime);
  InputSpec in = read_input(j, field ? &*field : nullptr);
  if (f.seed) {
    in.seed = *f.seed;
    if (in.random) in.spec = random_member_X1214(in.field, in.seed, in.lambda_zero);
  }
  return in;
}

void emit(const json& report, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << report.dump(2) << "\n";
    return;
  }
  json body = report;
  body.erase("result");
  out << report::text(body);
  if (report.contains("result")) out << report["result"].get<std::string>() << "\n";
}

}  // namespace

InputSpec read_input(const json& j, const Field* field_override) {
  const json& a = j.at("ambient");
  const auto weights = a.at("weights").get<std::vector<long>>();
  const auto vars = a.at("vars").get<std::vector<std::string>>();
  if (std::set<std::string>(vars.begin(), vars.end()).size() != vars.size()) throw AmbientError("ambient.vars are not distinct");
  if (weights.size() != vars.size()) throw AmbientError("ambient.weights and ambient.vars differ in length");
  const WPS p(weights, vars);

  Field field = Field::prime(kDefaultPrime);
  if (j.contains("field")) {
    const json& fj = j.at("field");
    if (fj.is_string() && fj.get<std::string>() == "Q") {
      field = Field::rationals();
    } else if (fj.is_object() && fj.contains("Fp")) {
      const auto prime = fj.at("Fp").get<std::uint64_t>();
      if (prime < 2) throw std::invalid_argument("field.Fp must be a prime");
      field = Field::prime(prime);
    } else {
      throw std::invalid_argument("field must be \"Q\" or {\"Fp\": p}");
    }
  }
  if (field_override) field = *field_override;

  const auto seed = j.value("seed", std::uint64_t{0});
  const std::string member = j.value("member", std::string("explicit"));
  if (member == "random") {
    if (weights != x1214_ambient().weights()) throw AmbientError("a random member needs the ambient P(1,2,3,4,7,11)");
    const bool lz = j.value("lambda_zero", false);
    return InputSpec{random_member_X1214(field, seed, lz), field, seed, true, lz};
  }
  if (member != "explicit") throw std::invalid_argument("member must be \"explicit\" or \"random\"");

  const auto texts = j.at("equations").get<std::vector<std::string>>();
  const auto degrees = j.at("degrees").get<std::vector<long>>();
  if (texts.size() != degrees.size()) throw AmbientError("equations and degrees differ in length");
  WCISpec spec{p, {}, {}};
  for (std::size_t i = 0; i < texts.size(); ++i) {
    spec.equations.push_back(parse(texts[i], p.ring(), field));
    spec.degrees.push_back({degrees[i]});
  }
  spec.validate();
  return InputSpec{std::move(spec), field, seed, false, false};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Birational links of weighted complete intersections"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  auto common = [&](CLI::App* sub, bool input) {
    if (input) sub->add_option("input", f.input, "InputSpec JSON file")->required();
    sub->add_option("--seed", f.seed, "random seed (overrides the input)");
    sub->add_option("--samples", f.samples, "sampled points per check");
    sub->add_option("--format", f.format, "output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--trials", f.trials, "irreducibility witnesses");
    sub->add_option("--field", f.field, "q for the rationals, p for F_(2^31-1)")->check(CLI::IsMember({"q", "p"}));
    sub->add_flag("--parallel", f.parallel, "fan verification batches across workers");
  };
  auto centered = [&](CLI::App* sub) {
    sub->add_option("--point", f.point, "coordinate of the center")->required();
    sub->add_option("--weights", f.weights, "weights of the other coordinates, e.g. 4,1,2,1")->required();
    sub->add_option("--denominator", f.denominator, "common denominator (default: weight of the center)");
  };
  const std::vector<std::pair<std::string, std::string>> commands{
      {"analyze", "ambient data and singularity census"},
      {"qsmooth", "quasismoothness verdicts"},
      {"blowup", "weighted blowup discrepancy at a coordinate point"},
      {"two-ray", "2-ray game after a weighted blowup"},
      {"link", "normal form and the link sigma of X_{12,14}"},
      {"classify", "elementary links from X_{12,14} and X^"},
      {"verify-paper", "reproduce the computations on seeded random members"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub, name != "verify-paper");
    if (name == "qsmooth") sub->add_option("--point", f.point, "a single coordinate point");
    if (name == "blowup" || name == "two-ray") centered(sub);
    sub->callback([&f, n = name] { f.command = n; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInvalid;
  }

  json report{{"schema", 1}, {"command", echo(f)}, {"steps", json::array()}, {"assumptions", json::array()}};
  int status = kOk;
  try {
    Outcome o;
    if (f.command == "verify-paper") {
      o = verify_paper(f);
    } else {
      const InputSpec in = load(f);
      if (f.command == "analyze") o = analyze(in, f);
      if (f.command == "qsmooth") o = qsmooth(in, f);
      if (f.command == "blowup") o = blowup(in, f);
      if (f.command == "two-ray") o = two_ray(in, f);
      if (f.command == "link") o = link(in, f);
      if (f.command == "classify") o = classify(in, f);
    }
    report["steps"] = exact(std::move(o.steps));
    report["assumptions"] = o.assumptions;
    if (o.result) report["result"] = *o.result;
    status = o.status;
  } catch (const CertificateFailure& e) {
    report["error"] = {{"kind", "certificate"}, {"certificate", e.certificate()}, {"message", e.what()}};
    status = kRejected;
  } catch (const Inconsistency& e) {
    report["error"] = {{"kind", "inconsistency"}, {"message", e.what()}};
    status = kInconsistent;
  } catch (const json::exception& e) {
    report["error"] = {{"kind", "input"}, {"message", e.what()}};
    status = kInvalid;
  } catch (const ParseError& e) {
    report["error"] = {{"kind", "input"}, {"message", e.what()}};
    status = kInvalid;
  } catch (const std::invalid_argument& e) {
    report["error"] = {{"kind", "validation"}, {"message", e.what()}};
    status = kInvalid;
  } catch (const std::exception& e) {
    report["error"] = {{"kind", "inconsistency"}, {"message", e.what()}};
    status = kInconsistent;
  }
  report["exit_status"] = status;
  emit(report, f.format, out);
  if (report.contains("error")) err << "error: " << report["error"]["message"].get<std::string>() << "\n";
  return status;
}

}  // namespace wcilink::cli
