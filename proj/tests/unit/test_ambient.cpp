#include "doctest.h"
#include "wcilink/parse.hpp"
#include "wcilink/two_ray.hpp"

using namespace wcilink;

namespace {

WPS p_main() { return WPS({1, 2, 3, 4, 7, 11}, {"x", "y", "z", "t", "v", "w"}); }
WPS p_hat() { return WPS({1, 1, 1, 2, 3}, {"x", "y", "z", "t", "w"}); }

// Hand oracle: walk the sorted column list and count interior rays that
// carry columns with at least two further columns past them.
std::size_t hand_small_wall_count(const std::vector<Bidegree>& sorted_cols, std::size_t first_chamber_ray) {
  std::vector<Bidegree> rays;
  std::vector<int> mult;
  for (auto c : sorted_cols) {
    auto p = primitive(c);
    if (rays.empty() || rays.back() != p) {
      rays.push_back(p);
      mult.push_back(0);
    }
    ++mult.back();
  }
  std::size_t count = 0;
  for (std::size_t r = first_chamber_ray; r < rays.size(); ++r) {
    int past = 0;
    for (std::size_t q = r + 1; q < rays.size(); ++q) past += mult[q];
    if (past >= 2) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("analyze_ambient") {
  auto a = analyze_ambient(p_main(), {12, 14});
  CHECK(a.well_formed);
  CHECK(a.wci_well_formed);
  CHECK(a.fano_index == 2);
  CHECK(a.amplitude == Rational(1, 11));
  auto b = analyze_ambient(WPS({1, 1, 1, 2, 3}), {7});
  CHECK(b.well_formed);
  CHECK(b.fano_index == 1);
  CHECK(analyze_ambient(WPS({1, 1, 1, 1, 1}), {2}).fano_index == 3);
  CHECK_FALSE(WPS({1, 2, 2, 4}).well_formed());
  CHECK_THROWS_AS(WPS({1, 0, 2}), AmbientError);
  CHECK_THROWS_AS(analyze_ambient(p_main(), {}), AmbientError);
}

TEST_CASE("blowup_ambient matrices") {
  auto t = blowup_ambient(p_main(), "w", WeightVector({6, 1, 7, 2, 9}, 11));
  CHECK(t.names() == std::vector<std::string>{"u", "w", "y", "t", "v", "z", "x"});
  CHECK(t.matrix() == std::vector<std::vector<long>>{{0, 11, 2, 4, 7, 3, 1}, {-11, 0, 1, 2, 9, 7, 6}});
  auto s = blowup_ambient(p_hat(), "x", WeightVector({4, 1, 2, 1}));
  CHECK(s.names() == std::vector<std::string>{"u", "x", "w", "z", "t", "y"});
  CHECK(s.matrix() == std::vector<std::vector<long>>{{0, 1, 3, 1, 2, 1}, {-1, 0, 1, 1, 2, 4}});
  auto o = blowup_ambient(WPS({1, 1, 1, 1}), "x0", WeightVector({1, 1, 1}));
  CHECK(o.matrix() == std::vector<std::vector<long>>{{0, 1, 1, 1, 1}, {-1, 0, 1, 1, 1}});
  CHECK_THROWS_AS(blowup_ambient(p_main(), "w", WeightVector({6, 1, 7, 2, 9}, 5)), AmbientError);
}

TEST_CASE("two-ray game of the main blowup") {
  auto t = blowup_ambient(p_main(), "w", WeightVector({6, 1, 7, 2, 9}, 11));
  auto trace = run_two_ray_game(t);
  CHECK(trace.initial.kind == WallKind::Divisorial);
  CHECK(*trace.initial.contracted == "u");
  CHECK(trace.initial.target->space.to_string(true) == "P(11_w,2_y,4_t,7_v,3_z,1_x)");
  REQUIRE(trace.walls.size() == 3);
  CHECK(trace.walls[0].on_ray == std::vector<std::string>{"y", "t"});
  CHECK(trace.walls[0].kind == WallKind::Small);
  CHECK(trace.walls[1].on_ray == std::vector<std::string>{"v"});
  CHECK(trace.walls[1].kind == WallKind::Small);
  const Wall& last = trace.final_wall();
  CHECK(last.kind == WallKind::Divisorial);
  CHECK(*last.contracted == "x");
  CHECK(last.target->space.to_string(true) == "P(1_u,6_w,1_y,2_t,3_v,1_z)");
  CHECK(last.target->image_variables == std::vector<std::string>{"z"});
  CHECK(trace.small_walls() == hand_small_wall_count({{0, -11}, {11, 0}, {2, 1}, {4, 2}, {7, 9}, {3, 7}, {1, 6}}, 2));
  CHECK(trace.small_walls() == 2);
  auto cones = cone_calculus(trace, {{12, 6}, {14, 7}});
  CHECK(cones.mov.to_string() == "cone([D_w],[D_z])");
}

TEST_CASE("two-ray games of the exclusion blowups") {
  auto first = run_two_ray_game(blowup_ambient(p_hat(), "x", WeightVector({4, 1, 2, 1})));
  REQUIRE(first.walls.size() == 2);
  CHECK(first.walls[0].on_ray == std::vector<std::string>{"w"});
  CHECK(first.final_wall().target->space.to_string(true) == "P(1_u,4_x,11_w,3_z,6_t)");
  auto cones = cone_calculus(first, {{7, 6}});
  REQUIRE(cones.nef.size() == 2);
  CHECK(cones.nef[0].to_string() == "cone([D_x],[D_w])");
  CHECK(cones.mov.to_string() == "cone([D_x],[D_z])");
  CHECK(cones.anticanonical_label == "D_z");
  CHECK(cones.anticanonical_on_boundary);

  WPS p6({1, 1, 1, 2, 3, 6}, {"x", "y", "z", "t", "w", "s"});
  auto second = run_two_ray_game(blowup_ambient(p6, "x", WeightVector({2, 1, 2, 1, 4})));
  CHECK(second.small_walls() == 2);
  CHECK(second.final_wall().target->space.to_string(true) == "P(1_u,2_x,5_w,8_s,1_z,2_t)");
  second.walls[0].restricted = RestrictedWall{"(x=u=0)", true, "test"};
  auto c2 = cone_calculus(second, {{7, 4}, {6, 4}});
  CHECK(c2.nef.front().to_string() == "cone([D_x],[D_s])");
  CHECK(c2.mov.to_string() == "cone([D_x],[D_z])");
  CHECK(c2.anticanonical_on_boundary);
}

TEST_CASE("ordinary blowup of P^2 at a point ends in a fibration") {
  auto trace = run_two_ray_game(blowup_ambient(WPS({1, 1, 1}, {"x", "y", "z"}), "x", WeightVector({1, 1})));
  REQUIRE(trace.walls.size() == 1);
  CHECK(trace.walls[0].kind == WallKind::Fibration);
  auto cones = cone_calculus(trace, {});
  CHECK(cones.nef.size() == 1);
  CHECK(cones.mov.to_string() == cones.nef[0].to_string());
  CHECK(cones.anticanonical_in_interior);
  CHECK_FALSE(cones.anticanonical_on_boundary);
}

TEST_CASE("degenerate gradings are rejected") {
  CHECK_THROWS_AS(run_two_ray_game(Rank2Toric({{0, -1}, {0, 1}, {1, 0}}, {"a", "b", "c"}, 1)), AmbientError);
  CHECK_THROWS_AS(run_two_ray_game(Rank2Toric({{1, 0}, {1, 1}, {2, 1}, {1, 3}}, {"a", "b", "c", "d"}, 2)),
                  AmbientError);
}

TEST_CASE("property: row rescaling leaves the game unchanged") {
  auto t = blowup_ambient(p_main(), "w", WeightVector({6, 1, 7, 2, 9}, 11));
  auto base = run_two_ray_game(t);
  for (long a : {1L, 2L, 5L}) {
    for (long b : {1L, 3L, 7L}) {
      std::vector<Bidegree> cols;
      for (auto c : t.columns()) cols.push_back({a * c[0], b * c[1]});
      auto scaled = run_two_ray_game(Rank2Toric(cols, t.names(), t.split()));
      REQUIRE(scaled.walls.size() == base.walls.size());
      for (std::size_t i = 0; i < base.walls.size(); ++i) {
        CHECK(scaled.walls[i].kind == base.walls[i].kind);
        CHECK(scaled.walls[i].on_ray == base.walls[i].on_ray);
      }
      CHECK(scaled.final_wall().target->space.weights() == base.final_wall().target->space.weights());
    }
  }
}

TEST_CASE("property: nef cones tile the movable cone") {
  for (auto trace : {run_two_ray_game(blowup_ambient(p_main(), "w", WeightVector({6, 1, 7, 2, 9}, 11))),
                     run_two_ray_game(blowup_ambient(p_hat(), "x", WeightVector({4, 1, 2, 1})))}) {
    auto cones = cone_calculus(trace, {});
    CHECK(cones.nef.front().lower == cones.mov.lower);
    CHECK(cones.nef.back().upper == cones.mov.upper);
    for (std::size_t i = 0; i + 1 < cones.nef.size(); ++i) CHECK(cones.nef[i].upper == cones.nef[i + 1].lower);
  }
}

TEST_CASE("round trip: contracting u recovers P") {
  for (auto [p, center, b] : {std::tuple{p_main(), "w", WeightVector({6, 1, 7, 2, 9}, 11)},
                              std::tuple{p_hat(), "x", WeightVector({4, 1, 2, 1})}}) {
    auto trace = run_two_ray_game(blowup_ambient(p, center, b));
    const auto& target = trace.initial.target->space;
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(target.weight(target.index(p.ring()->name(i))) == p.weight(i));
    }
  }
}

TEST_CASE("WCISpec validation") {
  WPS p = p_hat();
  WCISpec good{p, {parse("w^2*z + t^3*x + x^7", p.ring())}, {{7}}};
  CHECK_NOTHROW(good.validate());
  WCISpec bad{p, {parse("w^2*z + x^6", p.ring())}, {{7}}};
  CHECK_THROWS_AS(bad.validate(), AmbientError);
}
