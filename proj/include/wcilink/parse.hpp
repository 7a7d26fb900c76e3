// Polynomial text grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := int | int '/' int | var | '(' expr ')'
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "wcilink/polynomial.hpp"

namespace wcilink {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Unknown names raise UnknownVariable; grammar violations raise ParseError.
Polynomial parse(std::string_view text, const RingPtr& ring);

/// Parse over Q and reduce coefficients modulo p when p != 0.
Polynomial parse(std::string_view text, const RingPtr& ring, const Field& field);

}  // namespace wcilink
