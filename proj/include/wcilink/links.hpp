// The X_{12,14} pipeline: normal form, the link to the degree-7 hypersurface,
// its singularities, the exclusion blowups, involutions and the link census.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcilink/singular.hpp"
#include "wcilink/substitution.hpp"
#include "wcilink/two_ray.hpp"

namespace wcilink {

/// A member fails a certificate and is rejected.
class CertificateFailure : public std::runtime_error {
 public:
  CertificateFailure(const std::string& certificate, const std::string& detail)
      : std::runtime_error(certificate + ": " + detail), certificate_(certificate) {}
  const std::string& certificate() const { return certificate_; }

 private:
  std::string certificate_;
};

/// Two computed results that should agree do not.
class Inconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

WPS x1214_ambient();  // P(1,2,3,4,7,11) in (x, y, z, t, v, w)
WPS hat_ambient();    // P(1,1,1,2,3) in (u, y, z, t, v)

std::vector<Monomial> monomials_of_degree(const std::vector<long>& weights, long d);

/// Every monomial of degrees 12 and 14 gets a seeded coefficient: uniform in
/// F_p, or in [-9, 9] over Q. With `lambda_zero` the member is a random
/// triangular coordinate change of a normal form without yzv.
WCISpec random_member_X1214(const Field& field, std::uint64_t seed, bool lambda_zero = false);

// ---------------------------------------------------------------------------

struct NormalFormX1214 {
  RingPtr ring;
  Polynomial F1, F2;
  Polynomial a12, b4, c12, g14;
  Coefficient lambda;
  /// F_i(normal) = scale_i * F_i(original) o change.
  Substitution change;
  Substitution inverse;
  std::array<Coefficient, 2> scale;
  std::vector<std::string> steps;
  Coefficient mu;         // t^3 in a12
  Coefficient resultant;  // a12, c12 as binary cubics in (y^2, t)
  std::vector<std::string> certificates;
};

/// Throws CertificateFailure when a monomial criterion or the nondegeneracy fails.
NormalFormX1214 normal_form_X1214(const Polynomial& F1, const Polynomial& F2);
NormalFormX1214 normal_form_X1214(const WCISpec& x);

/// Resultant of two binary cubics in (y^2, t) given as degree-12 forms in y, t.
Coefficient binary_cubic_resultant(const Polynomial& a, const Polynomial& c, std::size_t y, std::size_t t);

// ---------------------------------------------------------------------------

/// Coordinate images num_i / den_i; a zero denominator means undefined there.
struct RationalMap {
  RingPtr source;
  std::vector<std::string> target_names;
  std::vector<long> target_weights;
  std::vector<Polynomial> numerators;
  std::vector<Polynomial> denominators;
  std::string description;

  static RationalMap identity(const WPS& p);
  std::string to_string() const;
};

struct NormalFormHatX {
  WCISpec hypersurface;  // F^ in P(1_u,1_y,1_z,2_t,3_v)
  Polynomial F;
  Polynomial a6, b2, c6, g6;
  Coefficient lambda;
  /// F^1, F^2 before eliminating w, in the contraction target.
  WCISpec wci;
};

struct LinkSigma {
  Rank2Toric ambient;
  WCISpec Y;
  LinkTrace trace;
  ConeReport cones;
  DiscrepancyRecord extraction;  // Kawamata blowup at q = p_w
  NormalFormHatX hat;
  std::string q_hat = "p_z";
  RationalMap sigma;          // X -> X^
  RationalMap sigma_inverse;  // X^ -> X
  std::vector<std::string> certificates;
};

/// Throws Inconsistency when a restricted wall does not match the expected locus.
LinkSigma construct_link_sigma(const NormalFormX1214& nf, int trials = 20, std::uint64_t seed = 1);

/// Exact reassembly of F^ from its parts.
Polynomial assemble_hat(const NormalFormHatX& h);

// ---------------------------------------------------------------------------

struct Census {
  AmbientAnalysis ambient;
  std::vector<SingularityReport> points;
  std::vector<QuasismoothVerdict> checks;
  std::vector<std::string> certificates;
  std::optional<GermAnalysis> germ;  // when a cE6 point is found
};

/// Generic: coordinate points and minimal singular strata of a WPS, plus
/// sampled quasismoothness.
Census singularity_census(const WCISpec& v, std::size_t samples = 32, std::uint64_t seed = 0);

/// Census of X with the exact certificate that the (y, t) line misses X.
Census census_X1214(const NormalFormX1214& nf, std::size_t samples = 32, std::uint64_t seed = 0);

/// Throws Inconsistency if a point other than p_t, p_v, q^ is singular.
Census singularity_census_hatX(const NormalFormHatX& hat, std::size_t samples = 32, std::uint64_t seed = 0,
                               int trials = 20);

/// f^ = F^(u, y, 1, t, v) in the ring (u, t, y, v), ordered by the cE6 roles.
Polynomial hat_germ(const NormalFormHatX& hat);

// ---------------------------------------------------------------------------

struct ConditionCheck {
  bool holds = false;
  std::vector<HypothesisCheck> checks;
  WCISpec renamed;  // in P(1_x,1_y,1_z,2_t,3_w)
  Coefficient alpha, beta, gamma;
  Polynomial g2, g6, H, h;
  std::vector<std::string> notes;

  const HypothesisCheck* check(std::string_view name) const;
};

/// Renames (u, y, z, t, v) -> (y, z, x, t, w) and checks the Condition.
ConditionCheck condition_check(const NormalFormHatX& hat, int trials = 20, std::uint64_t seed = 1);
ConditionCheck condition_check(const WCISpec& renamed, int trials = 20, std::uint64_t seed = 1);

enum class VerdictKind { ElementaryLink, NotSarkisov, NotMaximal, CitedExclusion };
std::string to_string(VerdictKind k);

struct LinkReport {
  std::string variety;
  std::string center;
  std::optional<DiscrepancyRecord> extraction;
  std::optional<LinkTrace> trace;
  std::optional<ConeReport> cones;
  VerdictKind verdict = VerdictKind::CitedExclusion;
  std::optional<WCISpec> target;
  std::string certificate;
  std::string reference;
};

struct ExclusionBlowups {
  ConditionCheck condition;
  LinkReport psi1, psi2;
  WCISpec reembedded;  // F1 = ys + G, F2 = s - h
};

/// Throws CertificateFailure if the Condition or a cone certificate fails.
ExclusionBlowups run_exclusion_blowups(const NormalFormHatX& hat, int trials = 20, std::uint64_t seed = 1);
ExclusionBlowups run_exclusion_blowups(const ConditionCheck& cond, int trials = 20, std::uint64_t seed = 1);

// ---------------------------------------------------------------------------

struct CurveCertificate {
  Coefficient mu;
  std::string half_locus;        // (u = y = 0) on X^
  std::string top_z_component;   // the only term of z-weight 5
  std::string ell2_certificate;  // z-weight 4 part of F^(0, y, z, t, v)
  std::vector<std::uint64_t> alpha_roots;  // roots of a6(1, alpha) over F_p
  Coefficient resultant;
  std::vector<std::string> lines;
};

/// Throws CertificateFailure when mu = 0 or the resultant vanishes.
CurveCertificate exclude_degree_one_curves(const NormalFormHatX& hat, std::uint64_t p = kDefaultPrime);

struct Involutions {
  Substitution chi_hat;
  RationalMap sigma_prime;    // chi^-1 o sigma
  RationalMap involution_on_X;
  bool chi_squared_identity = false;
  bool chi_preserves_hat = false;
  Rational nu_E_v, nu_E_prime_v;
  std::vector<std::string> notes;
};

Involutions build_involutions(const NormalFormX1214& nf, const LinkSigma& link);

/// A point of V over F_p. Solves the last variable (one equation) or the
/// last two (two equations) after drawing the others.
/// `nonzero` names coordinates that must not vanish.
std::vector<std::uint64_t> sample_point(const WCISpec& v, std::uint64_t p, std::uint64_t seed,
                                        const std::vector<std::string>& nonzero = {});

/// Image of a point; nullopt where a denominator vanishes.
std::optional<std::vector<std::uint64_t>> apply_map(const RationalMap& m, const std::vector<std::uint64_t>& pt,
                                                    std::uint64_t p);
/// Equality in a weighted projective space over F_p.
bool projectively_equal(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                        const std::vector<long>& weights, std::uint64_t p);

struct InvolutionCheck {
  bool passed = false;
  std::size_t checked = 0;
  std::size_t resampled = 0;
  std::string failure;
};

InvolutionCheck verify_involution(const WCISpec& v, const RationalMap& m, std::size_t samples, std::uint64_t seed,
                                  std::uint64_t p = kDefaultPrime, bool parallel = false);

// ---------------------------------------------------------------------------

struct Classification {
  std::vector<LinkReport> reports;
  std::size_t links_from_X = 0;
  std::size_t links_from_hat = 0;
  std::size_t germ_count = 0;
  std::vector<std::string> divisors;  // discrepancy-1 extractions at q^
  std::vector<std::string> valuations;
  std::vector<std::string> assumptions;
  std::string summary;
};

struct PipelineOptions {
  int trials = 20;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  bool parallel = false;
};

/// Throws Inconsistency on a divisor-count mismatch.
Classification classify_links(const WCISpec& x, const PipelineOptions& opt = {});

}  // namespace wcilink
