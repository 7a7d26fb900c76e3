// The 2-ray game on a rank-2 toric variety and the nef/movable cone calculus.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wcilink/ambient.hpp"

namespace wcilink {

enum class WallKind { Small, Divisorial, Fibration };
std::string to_string(WallKind k);

/// Weighted projective target of a contraction, normalized to be well-formed.
struct ContractionTarget {
  WPS space;
  /// Rational weights before normalization, scaled to coprime integers.
  std::vector<long> raw_weights;
  /// Each normalization step, e.g. "divide all weights but u by 2".
  std::vector<std::string> normalization;
  /// Variables whose locus is the image of the contracted divisor.
  std::vector<std::string> image_variables;
};

/// What a wall does on the subvariety Y cut out by the equations.
struct RestrictedWall {
  std::string locus;         // ideal description of the flipped locus on Y
  bool isomorphism = false;  // locus certified empty, so the wall is invisible on Y
  std::string certificate;
};

struct Wall {
  Bidegree ray;                        // primitive generator
  std::vector<std::string> on_ray;     // variables whose column lies on the ray
  WallKind kind = WallKind::Small;
  std::size_t beyond = 0;              // columns strictly past the ray
  std::optional<std::string> contracted;
  std::optional<ContractionTarget> target;
  /// x_j -> x_j x_c^{e_j} exponents toward the contracted variable x_c.
  std::vector<Rational> exponents;
  std::optional<RestrictedWall> restricted;
};

/// A chamber lies between two consecutive rays.
struct Chamber {
  std::size_t left = 0;   // ray index, clockwise side
  std::size_t right = 0;  // ray index, counterclockwise side
};

struct LinkTrace {
  Rank2Toric ambient;
  /// Distinct rays in counterclockwise order with the variables on each.
  std::vector<Bidegree> rays;
  std::vector<std::vector<std::string>> ray_variables;
  std::vector<Chamber> models;
  /// Contraction on the clockwise side of the first model (e.g. the blow-down).
  Wall initial;
  /// Walls crossed counterclockwise; the last one ends the game.
  std::vector<Wall> walls;

  std::size_t small_walls() const;
  const Wall& final_wall() const { return walls.back(); }
};

/// Throws AmbientError on a degenerate grading (columns not in an open half-plane).
LinkTrace run_two_ray_game(const Rank2Toric& t);

/// Columns sorted counterclockwise from the clockwise-most one.
std::vector<std::size_t> angular_order(const std::vector<Bidegree>& columns);

struct ConeZ2 {
  Bidegree lower;  // clockwise ray, primitive
  Bidegree upper;  // counterclockwise ray, primitive
  std::string lower_label;
  std::string upper_label;

  bool contains(const Bidegree& v) const;
  bool on_boundary(const Bidegree& v) const;
  std::string to_string() const;
};

struct ConeReport {
  std::vector<ConeZ2> nef;  // one per model on Y, after merging invisible walls
  ConeZ2 mov;
  Bidegree anticanonical{0, 0};
  std::string anticanonical_label;  // "D_z" when -K is proportional to a column
  bool anticanonical_on_boundary = false;
  bool anticanonical_in_interior = false;
};

/// `equation_degrees` are the bidegrees of Y's equations in the trace ambient;
/// -K_Y is the column sum minus their sum.
ConeReport cone_calculus(const LinkTrace& trace, const std::vector<Bidegree>& equation_degrees);

}  // namespace wcilink
