#include <algorithm>
#include <set>

#include "wcilink/links.hpp"

namespace wcilink {

namespace {

struct Divisor {
  std::string label;
  std::vector<long> values;  // on (u, y, t, v) at z = 1
};

std::string vec_string(const std::vector<long>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// Order along (x = 0) of each coordinate of a map X -> X^, normalized by z.
std::vector<long> valuation_of(const RationalMap& m) {
  const std::size_t ix = m.source->index("x");
  auto ord = [&](std::size_t i) { return static_cast<long>(m.numerators[i].min_degree_in(ix)); };
  const long oz = ord(2);
  return {ord(0) - oz, ord(1) - oz, ord(3) - 2 * oz, ord(4) - 3 * oz};
}

LinkReport cited(const std::string& variety, const std::string& center, const std::string& reference, std::string certificate = {}) {
  LinkReport r;
  r.variety = variety;
  r.center = center;
  r.verdict = VerdictKind::CitedExclusion;
  r.reference = reference;
  r.certificate = std::move(certificate);
  return r;
}

}  // namespace

Classification classify_links(const WCISpec& x, const PipelineOptions& opt) {
  Classification out;
  const NormalFormX1214 nf = normal_form_X1214(x);
  const LinkSigma link = construct_link_sigma(nf, opt.trials, opt.seed + 1);
  const WCISpec X{x1214_ambient(), {nf.F1, nf.F2}, {{12}, {14}}};

  // X: smooth points and curves are cited, q is the only singular point.
  const Census cx = census_X1214(nf, opt.samples, opt.seed);
  if (cx.points.size() != 1 || cx.points.front().point != "p_w") {
    throw Inconsistency("X has singular points other than q = p_w");
  }
  out.reports.push_back(cited("X", "smooth points and curves", "[DG23 Cor 7.2, 7.11]"));
  {
    LinkReport r;
    r.variety = "X";
    r.center = "q = p_w, " + (cx.points.front().type ? cx.points.front().type->to_string() : std::string("?"));
    r.extraction = link.extraction;
    r.trace = link.trace;
    r.cones = link.cones;
    r.verdict = VerdictKind::ElementaryLink;
    r.target = link.hat.hypersurface;
    r.certificate = "the Kawamata blowup is the only extraction at q; it initiates sigma: X -> X^";
    out.reports.push_back(std::move(r));
  }
  out.links_from_X = 1;

  // X^: the cited exclusions, p_v and the curves.
  const NormalFormHatX& hat = link.hat;
  const Census ch = singularity_census_hatX(hat, opt.samples, opt.seed, opt.trials);
  out.reports.push_back(cited("X^", "smooth points and p_t, 1/2(1,1,1)", "[OkSolid Lem 4.5, 4.9]"));
  {
    const QuadraticInvolution qi = quadratic_involution_test(hat.hypersurface, "v");
    LinkReport r;
    r.variety = "X^";
    r.center = "p_v, 1/3(1,1,2)";
    if (qi.self_link) {
      r.verdict = VerdictKind::ElementaryLink;
      r.certificate = "birational involution " + qi.involution;
    } else if (qi.f4_over_ell) {
      r.verdict = VerdictKind::NotMaximal;
      r.certificate = "l = " + qi.ell.to_string() + " divides f4 = " + qi.f4.to_string() + "; not a maximal center";
    } else {
      throw Inconsistency("p_v: l divides neither f4 nor f7 but the test found no self-link");
    }
    r.reference = "[OkII Lem 3.2]";
    out.reports.push_back(std::move(r));
  }
  {
    const CurveCertificate cc = exclude_degree_one_curves(hat);
    std::string cert = cc.half_locus + "; " + cc.top_z_component + "; " + cc.ell2_certificate;
    for (const auto& l : cc.lines) cert += "; " + l;
    out.reports.push_back(cited("X^", "curves of degree >= 2", "[OkII Lem 2.9]", "deg C < 7/6"));
    out.reports.push_back(cited("X^", "curves of degree 1 or 1/2", "[CPR Thm 5.1.1 Step 2]",
                                "no such curve passes through q^: " + cert));
  }

  // q^: the discrepancy-1 divisors.
  if (!ch.germ) throw Inconsistency("the census of X^ found no cE6 point");
  out.germ_count = ch.germ->count;
  const bool lambda = !nf.lambda.is_zero();
  const Involutions inv = build_involutions(nf, link);
  if (!inv.chi_preserves_hat || !inv.chi_squared_identity) throw Inconsistency("chi^ is not an involution of X^");
  std::vector<Divisor> divisors{{"E^", valuation_of(link.sigma)}, {"F^1", {4, 1, 2, 1}}, {"F^2", {2, 1, 2, 1}}};
  if (lambda) divisors.push_back({"E^'", valuation_of(inv.sigma_prime)});
  std::set<std::vector<long>> distinct;
  for (const auto& d : divisors) {
    distinct.insert(d.values);
    out.divisors.push_back(d.label);
    out.valuations.push_back(d.label + ": (u,y,t,v) -> " + vec_string(d.values));
  }
  if (distinct.size() != divisors.size()) throw Inconsistency("two of the divisors over q^ share a valuation");
  if (divisors.size() != out.germ_count) {
    throw Inconsistency(std::to_string(divisors.size()) + " extractions constructed but the germ has " + std::to_string(out.germ_count) +
                        " divisors of discrepancy 1");
  }

  {
    LinkReport r;
    r.variety = "X^";
    r.center = "q^ = p_z, cE6, divisor E^";
    r.verdict = VerdictKind::ElementaryLink;
    r.target = X;
    r.certificate = "phi^ initiates sigma^-1: X^ -> X";
    out.reports.push_back(std::move(r));
  }
  if (lambda) {
    const InvolutionCheck ic = verify_involution(X, inv.involution_on_X, opt.samples, opt.seed, kDefaultPrime, opt.parallel);
    if (!ic.passed) throw Inconsistency("the involution of X fails: " + ic.failure);
    LinkReport r;
    r.variety = "X^";
    r.center = "q^ = p_z, cE6, divisor E^'";
    r.verdict = VerdictKind::ElementaryLink;
    r.target = X;
    r.certificate = "phi^' = chi^ o phi^ initiates sigma'^-1; nu_E(v) = " + rational_string(inv.nu_E_v) +
                    ", nu_E'(v) = " + rational_string(inv.nu_E_prime_v) + "; involution checked on " + std::to_string(ic.checked) + " points";
    out.reports.push_back(std::move(r));
  }
  const ExclusionBlowups ex = run_exclusion_blowups(hat, opt.trials, opt.seed + 1);
  out.reports.push_back(ex.psi1);
  out.reports.push_back(ex.psi2);
  out.links_from_hat = lambda ? 2 : 1;

  out.assumptions = {
      "[DG23 Cor 7.2, 7.11]: no smooth point and no curve on X is a maximal center",
      "[OkSolid Lem 4.5, 4.9]: smooth points of X^ and the 1/2(1,1,1) point are not maximal centers",
      "[OkII Lem 2.9]: a curve on X^ that is a maximal center has degree < 7/6",
      "[CPR Thm 5.1.1 Step 2]: a degree-1 curve in the smooth locus of X^ is not a maximal center",
  };
  out.summary = std::string("X is birationally solid, assuming the four cited exclusions: sigma is the unique elementary link from X, and ") +
                (lambda ? "sigma^-1 and sigma'^-1 are the elementary links from X^" : "sigma^-1 is the unique elementary link from X^");
  return out;
}

}  // namespace wcilink
