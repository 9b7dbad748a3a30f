#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gfmswing/scenario.hpp"

namespace gfmswing {

/// Identifiers of the built-in case library (caseA1 ... caseE2).
std::vector<std::string> builtin_case_ids();

/// Built-in scenario `id`. Throws std::invalid_argument for unknown ids.
///
/// Cases E1/E2 default to no limiter; override the strategy with with_strategy().
Scenario builtin_case(std::string_view id);

/// Copy of `scenario` running `strategy` with gains designed for its system.
Scenario with_strategy(Scenario scenario, Strategy strategy);

} // namespace gfmswing
