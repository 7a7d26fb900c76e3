// Command-line driver. Exit codes: 0 success, 1 parse or validation error,
// 2 certificate failure (member rejected), 3 inconsistency or failed checks.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "wcilink/ambient.hpp"

namespace wcilink::cli {

struct InputSpec {
  WCISpec spec;
  Field field = Field::prime(kDefaultPrime);
  std::uint64_t seed = 0;
  bool random = false;
  bool lambda_zero = false;
};

/// Throws nlohmann::json::exception, ParseError or AmbientError on bad input.
InputSpec read_input(const nlohmann::json& j, const Field* field_override = nullptr);

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wcilink::cli
