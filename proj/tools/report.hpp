// JSON renderings of the pipeline records. Rationals become "p/q" strings.
#pragma once

#include "json.hpp"
#include "wcilink/links.hpp"

namespace wcilink::report {

using json = nlohmann::json;

json rational(const Rational& q);
json coefficient(const Coefficient& c);
json polynomial(const Polynomial& f);
json bidegree(const Bidegree& b);

json wci(const WCISpec& v);
json ambient(const AmbientAnalysis& a);
json verdict(const QuasismoothVerdict& v);
json singularity(const SingularityReport& r);
json germ(const GermAnalysis& g);
json discrepancy(const DiscrepancyRecord& d);
json trace(const LinkTrace& t);
json cones(const ConeReport& c);
json census(const Census& c);
json link_report(const LinkReport& r);
json rational_map(const RationalMap& m);
json normal_form(const NormalFormX1214& nf);
json hat(const NormalFormHatX& h);
json link(const LinkSigma& l);
json classification(const Classification& c);

/// Indented "key: value" lines; scalar arrays on one line.
std::string text(const json& j);

}  // namespace wcilink::report
