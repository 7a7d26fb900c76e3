#include "wcilink/substitution.hpp"

#include "wcilink/parse.hpp"

namespace wcilink {

Substitution::Substitution(RingPtr source, RingPtr target)
    : source_(std::move(source)), target_(std::move(target)), images_(source_->size()) {
  for (std::size_t i = 0; i < source_->size(); ++i) {
    if (auto j = target_->find(source_->name(i))) images_[i] = Polynomial::variable(target_, *j);
  }
}

Substitution& Substitution::set(std::size_t var, Polynomial image) {
  if (!same_ring(image.ring(), target_)) throw RingMismatch("substitution image outside the target ring");
  images_.at(var) = image.in_ring(target_);
  return *this;
}

Substitution& Substitution::set(std::string_view var, Polynomial image) {
  return set(source_->index(var), std::move(image));
}

Substitution& Substitution::set(std::string_view var, std::string_view image_text) {
  return set(source_->index(var), parse(image_text, target_));
}

const Polynomial& Substitution::image(std::size_t var) const {
  const auto& im = images_.at(var);
  if (!im) throw RingMismatch("no image for variable '" + source_->name(var) + "'");
  return *im;
}

Polynomial Substitution::apply(const Polynomial& f) const {
  if (!same_ring(f.ring(), source_)) throw RingMismatch("polynomial is not over the substitution source");
  std::vector<std::vector<Polynomial>> powers(source_->size());
  auto power = [&](std::size_t i, int e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.emplace_back(target_, Coefficient(1));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * image(i));
    return cache[static_cast<std::size_t>(e)];
  };
  Polynomial out(target_);
  for (const auto& [m, c] : f.terms()) {
    Polynomial t(target_, c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] > 0) t *= power(i, m[i]);
    }
    out += t;
  }
  return out;
}

Substitution Substitution::then(const Substitution& g) const {
  if (!same_ring(target_, g.source_)) throw RingMismatch("substitutions do not compose");
  Substitution out(source_, g.target_);
  for (std::size_t i = 0; i < source_->size(); ++i) {
    if (images_[i]) out.images_[i] = g.apply(*images_[i]);
  }
  return out;
}

std::string Substitution::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (!images_[i]) continue;
    if (images_[i]->is_monomial() && images_[i]->to_string() == source_->name(i)) continue;
    if (!s.empty()) s += ", ";
    s += source_->name(i) + " -> " + images_[i]->to_string();
  }
  return s.empty() ? "id" : s;
}

}  // namespace wcilink
