// Quasismoothness, cyclic quotient points, weighted blowup discrepancies and
// the two compound Du Val germ analyzers (cA/2 and cE6).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wcilink/algorithms.hpp"
#include "wcilink/ambient.hpp"

namespace wcilink {

class SingularityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Quasismoothness

struct CoordinatePoint {
  std::string var;
};

/// Points whose nonzero coordinates lie among `nonzero` (the rest vanish).
struct CoordinateStratum {
  std::vector<std::string> nonzero;
  std::size_t samples = 64;
  std::uint64_t seed = 0;
  std::uint64_t p = kDefaultPrime;
};

/// Random points of the whole variety.
struct SampledPoints {
  std::size_t count = 64;
  std::uint64_t seed = 0;
  std::uint64_t p = kDefaultPrime;
};

using Location = std::variant<CoordinatePoint, CoordinateStratum, SampledPoints>;

struct QuasismoothVerdict {
  std::string location;
  bool quasismooth = false;
  bool exact = true;     // false for sampled witnesses over F_p
  std::string witness;   // monomials or the sampled point
};

/// Coordinate points are decided exactly by the Jacobian rank at the cone
/// line. Strata and samples yield one verdict per sampled point.
/// Throws SingularityError when a coordinate point is not on V, or when no
/// point of a stratum could be sampled.
std::vector<QuasismoothVerdict> quasismooth_check(const WCISpec& v, const Location& where);

bool on_variety(const WCISpec& v, std::string_view coordinate_point);

// ---------------------------------------------------------------------------
// Cyclic quotient singularities

struct QuotientSingularity {
  long r = 1;
  std::vector<long> weights;  // residues mod r

  /// Lexicographically least sorted residue vector over all units mod r.
  QuotientSingularity canonical() const;
  /// 1/r(1, a, r - a) with gcd(a, r) = 1 up to units and order.
  bool terminal() const;
  std::string to_string() const;  // "1/11(1,2,9)"
  friend bool operator==(const QuotientSingularity&, const QuotientSingularity&) = default;
};

enum class PointKind { Smooth, Quotient, NonQuasismooth };
enum class GermClass { None, CA2, CE6, Unclassified };
std::string to_string(PointKind k);
std::string to_string(GermClass g);

struct SingularityReport {
  std::string point;
  PointKind kind = PointKind::Smooth;
  std::optional<QuotientSingularity> type;  // canonical form
  std::optional<QuotientSingularity> raw;   // residual weights before canonicalization
  GermClass germ = GermClass::None;
  bool terminal = true;
  /// One line per eliminated variable: "x via w*x in F1 (degree 12)".
  std::vector<std::string> witness;
};

/// Requires dim V = 3 and quasismoothness at the point.
SingularityReport classify_quotient_singularity(const WCISpec& v, std::string_view coordinate_point);

// ---------------------------------------------------------------------------
// Weighted blowups

/// Germ at the origin of V(equations) in A^n / Z_r(action).
struct Germ {
  RingPtr ring;
  std::vector<Polynomial> equations;
  long r = 1;
  std::vector<long> action;  // empty when r == 1
  std::string label;
};

struct DiscrepancyRecord {
  std::string center;
  WeightVector weights;
  /// Lowest b-weight of each equation, in units of 1/r.
  std::vector<long> multiplicities;
  /// Lowest components in P(b*r); equations in the germ's ring.
  WCISpec exceptional_model;
  /// Steps that removed a variable through a lowest component linear in it.
  std::vector<std::string> eliminated;
  /// Remaining hypersurface after elimination, when there is one.
  std::optional<Polynomial> reduced_model;
  IrreducibilityVerdict irreducibility;
  Rational discrepancy;
};

/// a = (sum b - sum mult - r) / r for the blowup with weights b/r.
/// Throws SingularityError on a degenerate center or an action mismatch.
DiscrepancyRecord weighted_blowup_discrepancy(const Germ& germ, const WeightVector& b, int trials = 20,
                                              std::uint64_t seed = 1);

/// Order of `var` along the exceptional divisor of the b-blowup, when the
/// initial-form argument decides it.
std::optional<Rational> exceptional_order(const Germ& germ, const WeightVector& b, std::size_t var);

// ---------------------------------------------------------------------------
// Germ analyzers

struct HypothesisCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct DivisorRow {
  std::string label;
  WeightVector weights;
  Rational a_Y;
  Rational ord;          // order of the pulled-back first exceptional divisor
  Rational coefficient;  // its discrepancy over X
  Rational a_X;
};

enum class GermType { CA2, CE6 };

struct GermAnalysis {
  GermType type = GermType::CA2;
  std::vector<HypothesisCheck> hypotheses;
  std::optional<Coefficient> lambda;
  Rational minimal_discrepancy;
  std::vector<DivisorRow> table;
  std::size_t count = 0;  // divisors of minimal discrepancy, first exceptional included
  std::vector<std::string> notes;
  std::vector<std::string> cited;

  bool hypotheses_hold() const;
  const HypothesisCheck* check(std::string_view name) const;
};

/// g in the ring (z, t); the germ is (xy + g(z^2, t))/Z_2(1,1,1,0).
/// Throws SingularityError naming the failed hypothesis.
GermAnalysis analyze_cA2_germ(const Polynomial& g);

/// f in four variables read as (x, y, z, t) by position.
GermAnalysis analyze_cE6_germ(const Polynomial& f, int trials = 20, std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// Quadratic involutions at the 1/3 point of X_7

struct QuadraticInvolution {
  bool self_link = false;
  Polynomial ell, f4, f7;
  std::optional<Polynomial> f4_over_ell;  // the NotMaximal certificate
  bool ell_divides_f7 = false;
  WCISpec double_cover;                  // Z: s^2 + s f4 + ell f7 in P(..., 4)
  std::string special_locus;             // (s = ell = f4 = f7 = 0)
  std::string involution;                // w -> -w - f4/ell
  std::vector<std::string> assumptions;
};

/// `x7` is a hypersurface in a 5-variable WPS whose last coordinate w has
/// weight 3 and appears at most quadratically.
QuadraticInvolution quadratic_involution_test(const WCISpec& x7, std::string_view w = "");

}  // namespace wcilink
