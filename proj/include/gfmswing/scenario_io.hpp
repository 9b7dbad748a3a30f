#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gfmswing/scenario.hpp"

namespace gfmswing {

inline constexpr int kScenarioSchemaVersion = 1;

/// Parses scenario JSON. Omitted fields take the reference test-system defaults.
/// Throws ParseError for malformed text or mistyped/unknown fields and
/// ValidationError when the result violates an invariant.
Scenario parse_scenario(std::string_view text);

/// Reads and parses a scenario file.
Scenario load_scenario(const std::filesystem::path& path);

/// Serializes every field explicitly; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

} // namespace gfmswing
