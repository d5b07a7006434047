#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "manet/scenario.hpp"

namespace manet {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Applies one `key = value` setting. Throws ConfigError on unknown keys
/// and unparsable values. Repeatable keys (flow, move) append.
void apply_setting(Scenario& scenario, std::string_view key, std::string_view value);

/// Reads `key = value` lines (`#` starts a comment) on top of `scenario`
/// without validating the result; errors name the line and key.
void apply_scenario_text(std::istream& in, Scenario& scenario);

/// Defaults, then the file, then validate(). Throws IoError if unreadable.
Scenario parse_scenario(const std::string& path);

/// `src:dst:bytes:interval[:start[:stop]]`
Flow parse_flow(std::string_view text);
/// `WxH`
Point parse_field(std::string_view text);

}  // namespace manet
