#include "wcilink/ambient.hpp"

#include <algorithm>
#include <numeric>

namespace wcilink {

namespace {

long gcd_of(const std::vector<long>& v) {
  long g = 0;
  for (long x : v) g = std::gcd(g, x);
  return g;
}

// Calls fn on every k-subset of [0, n).
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn fn) {
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(std::min(k, n)), true);
  do {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) idx.push_back(i);
    }
    fn(idx);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

}  // namespace

WPS::WPS(std::vector<long> weights, std::vector<std::string> names) : weights_(std::move(weights)) {
  if (weights_.size() < 3) throw AmbientError("a weighted projective space needs at least 3 variables");
  if (names.size() != weights_.size()) throw AmbientError("weights and names differ in length");
  for (long a : weights_) {
    if (a <= 0) throw AmbientError("weights must be positive");
  }
  ring_ = make_ring(std::move(names));
}

WPS::WPS(std::vector<long> weights) : WPS(weights, default_names(weights.size())) {}

bool WPS::well_formed() const {
  bool ok = true;
  for_each_subset(size(), size() - 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<long> sub;
    for (auto i : idx) sub.push_back(weights_[i]);
    ok = ok && gcd_of(sub) == 1;
  });
  return ok;
}

std::string WPS::to_string(bool labelled) const {
  std::string s = "P(";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) s += ",";
    s += std::to_string(weights_[i]);
    if (labelled) s += "_" + ring_->name(i);
  }
  return s + ")";
}

AmbientAnalysis analyze_ambient(const WPS& p, const std::vector<long>& degrees) {
  if (degrees.empty()) throw AmbientError("at least one degree is required");
  for (long d : degrees) {
    if (d < 1) throw AmbientError("degrees must be positive");
  }
  AmbientAnalysis out;
  out.well_formed = p.well_formed();
  const long sum_a = std::accumulate(p.weights().begin(), p.weights().end(), 0L);
  const long sum_d = std::accumulate(degrees.begin(), degrees.end(), 0L);
  out.fano_index = sum_a - sum_d;
  mpz_class num = 1, den = 1;
  for (long d : degrees) num *= d;
  for (long a : p.weights()) den *= a;
  out.amplitude = Rational(num, den);
  out.amplitude.canonicalize();

  // For mu = 1..c the gcd of any n - mu weights divides at least mu degrees.
  const std::size_t n = p.size() - 1;
  bool wci = out.well_formed;
  for (std::size_t mu = 1; mu <= degrees.size() && mu < n && wci; ++mu) {
    for_each_subset(p.size(), n - mu, [&](const std::vector<std::size_t>& idx) {
      std::vector<long> sub;
      for (auto i : idx) sub.push_back(p.weight(i));
      const long g = gcd_of(sub);
      const auto hits = std::count_if(degrees.begin(), degrees.end(), [&](long d) { return d % g == 0; });
      wci = wci && static_cast<std::size_t>(hits) >= mu;
    });
  }
  out.wci_well_formed = wci;
  return out;
}

long cross(const Bidegree& a, const Bidegree& b) { return a[0] * b[1] - a[1] * b[0]; }

Bidegree primitive(const Bidegree& v) {
  const long g = std::gcd(v[0], v[1]);
  if (g == 0) throw AmbientError("zero column");
  return {v[0] / g, v[1] / g};
}

Rank2Toric::Rank2Toric(std::vector<Bidegree> columns, std::vector<std::string> names, std::size_t split)
    : columns_(std::move(columns)), names_(std::move(names)), split_(split) {
  if (columns_.size() != names_.size()) throw AmbientError("columns and names differ in length");
  if (split_ < 1 || split_ >= columns_.size()) throw AmbientError("split must leave both groups nonempty");
  for (const auto& c : columns_) {
    if (c[0] == 0 && c[1] == 0) throw AmbientError("zero column for a rank-2 grading");
  }
  ring_ = make_ring(names_);
}

WeightVector Rank2Toric::row(int r) const {
  std::vector<long> w;
  for (const auto& c : columns_) w.push_back(c.at(static_cast<std::size_t>(r)));
  return WeightVector(std::move(w));
}

Bidegree Rank2Toric::bidegree(const Monomial& m) const {
  Bidegree d{0, 0};
  for (std::size_t i = 0; i < m.size(); ++i) {
    d[0] += columns_[i][0] * m[i];
    d[1] += columns_[i][1] * m[i];
  }
  return d;
}

std::optional<Bidegree> Rank2Toric::bidegree(const Polynomial& f) const {
  if (f.is_zero()) return std::nullopt;
  const Bidegree d = bidegree(f.terms().begin()->first);
  for (const auto& [m, c] : f.terms()) {
    if (bidegree(m) != d) return std::nullopt;
  }
  return d;
}

std::vector<std::vector<long>> Rank2Toric::matrix() const {
  std::vector<std::vector<long>> rows(2);
  for (const auto& c : columns_) {
    rows[0].push_back(c[0]);
    rows[1].push_back(c[1]);
  }
  return rows;
}

std::string Rank2Toric::to_string() const {
  std::string head, top, bottom;
  for (std::size_t i = 0; i < size(); ++i) {
    const std::string sep = i ? " " : "";
    head += sep + names_[i];
    top += sep + std::to_string(columns_[i][0]);
    bottom += sep + std::to_string(columns_[i][1]);
  }
  return "[" + head + " | " + top + " / " + bottom + " | split " + std::to_string(split_) + "]";
}

Rank2Toric blowup_ambient(const WPS& p, std::string_view center, const WeightVector& b, const std::string& u) {
  const std::size_t c = p.index(center);
  const long a0 = p.weight(c);
  if (a0 <= 0) throw AmbientError("center weight must be positive");
  if (b.size() != p.size() - 1) throw AmbientError("blowup weights must cover every non-center variable");
  if (p.ring()->find(u)) throw AmbientError("exceptional variable name clashes with P");

  struct Col {
    std::string name;
    Bidegree col;
  };
  std::vector<Col> rest;
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i == c) continue;
    // b_k / a0 scaled to the integer b_k.
    Rational bi = b[k++] * a0;
    if (bi.get_den() != 1 || bi <= 0) {
      throw AmbientError("blowup weight for " + p.ring()->name(i) + " must be a positive multiple of 1/" +
                         std::to_string(a0));
    }
    rest.push_back({p.ring()->name(i), {p.weight(i), bi.get_num().get_si()}});
  }
  std::stable_sort(rest.begin(), rest.end(), [](const Col& x, const Col& y) { return cross(x.col, y.col) > 0; });

  std::vector<Bidegree> cols{{0, -a0}, {a0, 0}};
  std::vector<std::string> names{u, p.ring()->name(c)};
  for (const auto& r : rest) {
    cols.push_back(r.col);
    names.push_back(r.name);
  }
  return Rank2Toric(std::move(cols), std::move(names), 2);
}

const RingPtr& WCISpec::ring() const {
  return std::visit([](const auto& a) -> const RingPtr& { return a.ring(); }, ambient);
}

void WCISpec::validate() const {
  if (degrees.size() != equations.size()) throw AmbientError("one degree per equation is required");
  for (std::size_t j = 0; j < equations.size(); ++j) {
    const Polynomial& f = equations[j];
    if (!same_ring(f.ring(), ring())) throw AmbientError("equation " + std::to_string(j + 1) + " uses another ring");
    if (f.is_zero()) throw AmbientError("equation " + std::to_string(j + 1) + " is zero");
    bool ok = false;
    if (const auto* w = std::get_if<WPS>(&ambient)) {
      auto d = quasi_homogeneous_degree(f, w->grading());
      ok = degrees[j].size() == 1 && d && *d == degrees[j][0];
    } else {
      auto d = std::get<Rank2Toric>(ambient).bidegree(f);
      ok = degrees[j].size() == 2 && d && (*d)[0] == degrees[j][0] && (*d)[1] == degrees[j][1];
    }
    if (!ok) throw AmbientError("equation " + std::to_string(j + 1) + " is not homogeneous of its declared degree");
  }
}

}  // namespace wcilink
