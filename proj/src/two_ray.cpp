#include "wcilink/two_ray.hpp"

#include <algorithm>
#include <numeric>

namespace wcilink {

namespace {

long dot(const Bidegree& a, const Bidegree& b) { return a[0] * b[0] + a[1] * b[1]; }

bool same_direction(const Bidegree& a, const Bidegree& b) { return cross(a, b) == 0 && dot(a, b) > 0; }

ContractionTarget contraction_target(const Rank2Toric& t, const Bidegree& ray, std::size_t c,
                                     std::vector<Rational>& exponents) {
  const Bidegree& cc = t.column(c);
  const long denom = cross(ray, cc);
  std::vector<Rational> alpha;
  std::vector<std::string> names;
  exponents.assign(t.size(), Rational(0));
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (j == c) continue;
    Rational a(cross(t.column(j), cc), denom);
    a.canonicalize();
    Rational e(-cross(ray, t.column(j)), denom);
    e.canonicalize();
    exponents[j] = e;
    alpha.push_back(a);
    names.push_back(t.names()[j]);
  }
  mpz_class l = 1;
  for (const auto& a : alpha) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());
  std::vector<long> w;
  for (const auto& a : alpha) {
    Rational s = a * Rational(l);
    if (s <= 0) throw AmbientError("contraction target has a non-positive weight");
    w.push_back(s.get_num().get_si());
  }
  const long g = std::accumulate(w.begin(), w.end(), 0L, [](long x, long y) { return std::gcd(x, y); });
  for (auto& x : w) x /= g;

  ContractionTarget out{WPS(w, names), w, {}, {}};
  std::vector<long> norm = w;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < norm.size(); ++i) {
      long h = 0;
      for (std::size_t j = 0; j < norm.size(); ++j) {
        if (j != i) h = std::gcd(h, norm[j]);
      }
      if (h > 1) {
        for (std::size_t j = 0; j < norm.size(); ++j) {
          if (j != i) norm[j] /= h;
        }
        out.normalization.push_back("divide every weight except " + names[i] + " by " + std::to_string(h) +
                                    " (" + names[i] + "^" + std::to_string(h) + " becomes a coordinate)");
        changed = true;
      }
    }
  }
  out.space = WPS(norm, names);
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (j != c && same_direction(t.column(j), ray)) out.image_variables.push_back(t.names()[j]);
  }
  return out;
}

std::string ray_label(const LinkTrace& trace, std::size_t r) {
  const auto& vars = trace.ray_variables[r];
  for (const auto& v : vars) {
    const auto& col = trace.ambient.column(trace.ambient.index(v));
    if (primitive(col) == col) return "D_" + v;
  }
  return "D_" + vars.front();
}

}  // namespace

std::string to_string(WallKind k) {
  switch (k) {
    case WallKind::Small: return "small";
    case WallKind::Divisorial: return "divisorial";
    case WallKind::Fibration: return "fibration";
  }
  return "small";
}

std::vector<std::size_t> angular_order(const std::vector<Bidegree>& columns) {
  const std::size_t n = columns.size();
  std::optional<std::size_t> first;
  for (std::size_t i = 0; i < n && !first; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      const long c = cross(columns[i], columns[j]);
      ok = c > 0 || (c == 0 && dot(columns[i], columns[j]) > 0);
    }
    if (ok) first = i;
  }
  if (!first) throw AmbientError("columns do not lie in an open half-plane; the grading is degenerate");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cross(columns[a], columns[b]) > 0; });
  return order;
}

std::size_t LinkTrace::small_walls() const {
  return static_cast<std::size_t>(
      std::count_if(walls.begin(), walls.end(), [](const Wall& w) { return w.kind == WallKind::Small; }));
}

LinkTrace run_two_ray_game(const Rank2Toric& t) {
  const auto order = angular_order(t.columns());
  LinkTrace trace{t, {}, {}, {}, {}, {}};
  std::vector<std::size_t> ray_of(t.size());
  for (std::size_t k : order) {
    const Bidegree p = primitive(t.column(k));
    if (trace.rays.empty() || trace.rays.back() != p) {
      trace.rays.push_back(p);
      trace.ray_variables.emplace_back();
    }
    trace.ray_variables.back().push_back(t.names()[k]);
    ray_of[k] = trace.rays.size() - 1;
  }
  const std::size_t nrays = trace.rays.size();
  if (nrays < 2) throw AmbientError("all columns lie on one ray");

  std::size_t left = 0;
  std::size_t right = nrays;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i < t.split()) {
      left = std::max(left, ray_of[i]);
    } else {
      right = std::min(right, ray_of[i]);
    }
  }
  if (right != left + 1) {
    throw AmbientError("irrelevant-ideal split does not bound a chamber (groups interleave or share a ray)");
  }
  auto count_strictly = [&](std::size_t r, bool ccw) {
    return static_cast<std::size_t>(std::count_if(ray_of.begin(), ray_of.end(),
                                                  [&](std::size_t q) { return ccw ? q > r : q < r; }));
  };
  auto make_wall = [&](std::size_t r, bool ccw) {
    Wall w;
    w.ray = trace.rays[r];
    w.on_ray = trace.ray_variables[r];
    w.beyond = count_strictly(r, ccw);
    if (w.beyond >= 2) {
      w.kind = WallKind::Small;
    } else if (w.beyond == 1) {
      w.kind = WallKind::Divisorial;
      std::size_t c = 0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (ccw ? ray_of[i] > r : ray_of[i] < r) c = i;
      }
      w.contracted = t.names()[c];
      w.target = contraction_target(t, w.ray, c, w.exponents);
    } else {
      w.kind = WallKind::Fibration;
    }
    return w;
  };

  trace.initial = make_wall(left, false);
  trace.models.push_back({left, right});
  for (std::size_t r = right; r < nrays; ++r) {
    Wall w = make_wall(r, true);
    const bool more = w.kind == WallKind::Small;
    trace.walls.push_back(std::move(w));
    if (!more) break;
    trace.models.push_back({r, r + 1});
  }
  return trace;
}

bool ConeZ2::contains(const Bidegree& v) const { return cross(lower, v) >= 0 && cross(v, upper) >= 0 && (v[0] || v[1]); }

bool ConeZ2::on_boundary(const Bidegree& v) const {
  return contains(v) && (same_direction(v, lower) || same_direction(v, upper));
}

std::string ConeZ2::to_string() const { return "cone([" + lower_label + "],[" + upper_label + "])"; }

ConeReport cone_calculus(const LinkTrace& trace, const std::vector<Bidegree>& equation_degrees) {
  if (trace.models.empty()) throw AmbientError("trace has no models");
  ConeReport out;
  auto cone = [&](std::size_t a, std::size_t b) {
    return ConeZ2{trace.rays[a], trace.rays[b], ray_label(trace, a), ray_label(trace, b)};
  };
  std::size_t start = trace.models.front().left;
  for (std::size_t i = 0; i < trace.models.size(); ++i) {
    const bool invisible_next = i < trace.walls.size() && trace.walls[i].kind == WallKind::Small &&
                                trace.walls[i].restricted && trace.walls[i].restricted->isomorphism &&
                                i + 1 < trace.models.size();
    if (invisible_next) continue;
    out.nef.push_back(cone(start, trace.models[i].right));
    start = trace.models[i].right;
  }
  out.mov = cone(trace.models.front().left, trace.models.back().right);

  Bidegree k{0, 0};
  for (const auto& c : trace.ambient.columns()) {
    k[0] += c[0];
    k[1] += c[1];
  }
  for (const auto& d : equation_degrees) {
    k[0] -= d[0];
    k[1] -= d[1];
  }
  out.anticanonical = k;
  out.anticanonical_label = "(" + std::to_string(k[0]) + "," + std::to_string(k[1]) + ")";
  for (std::size_t i = 0; i < trace.ambient.size(); ++i) {
    if (trace.ambient.column(i) == k) {
      out.anticanonical_label = "D_" + trace.ambient.names()[i];
      break;
    }
  }
  out.anticanonical_on_boundary = out.mov.on_boundary(k);
  out.anticanonical_in_interior = out.mov.contains(k) && !out.anticanonical_on_boundary;
  return out;
}

}  // namespace wcilink
