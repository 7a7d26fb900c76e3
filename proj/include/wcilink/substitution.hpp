// Ring maps given by variable images.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wcilink/polynomial.hpp"

namespace wcilink {

class Substitution {
 public:
  /// Variables whose name also occurs in `target` start out mapped to it.
  Substitution(RingPtr source, RingPtr target);
  static Substitution identity(const RingPtr& ring) { return Substitution(ring, ring); }

  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }

  Substitution& set(std::string_view var, Polynomial image);
  Substitution& set(std::size_t var, Polynomial image);
  /// Convenience: parse the image over the target ring.
  Substitution& set(std::string_view var, std::string_view image_text);

  bool defined(std::size_t var) const { return images_.at(var).has_value(); }
  const Polynomial& image(std::size_t var) const;

  Polynomial apply(const Polynomial& f) const;
  /// Then-composition: (this.then(g))(f) == g(this(f)).
  Substitution then(const Substitution& g) const;

  std::string to_string() const;

 private:
  RingPtr source_;
  RingPtr target_;
  std::vector<std::optional<Polynomial>> images_;
};

inline Polynomial substitute(const Polynomial& f, const Substitution& s) { return s.apply(f); }

}  // namespace wcilink
