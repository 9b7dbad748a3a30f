#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gfmswing/dynamics.hpp"
#include "gfmswing/limiter.hpp"
#include "gfmswing/network.hpp"
#include "gfmswing/relay.hpp"

namespace gfmswing {

/// Complete description of one simulation run.
struct Scenario
{
    std::string name = "scenario";
    SystemParams system = SystemParams::reference();
    ApclParams apcl;
    LimiterConfig limiter = LimiterConfig::for_system(Strategy::None, SystemParams::reference());
    std::vector<Event> events;
    double horizon = 20.0; ///< s
    double dt = 5e-4;      ///< s
    RelaySettings relay = RelaySettings::reference();
    std::optional<double> initial_delta;
    std::string outputs = "out";

    bool operator==(const Scenario&) const = default;

    std::vector<std::string> violations() const;
    /// Throws ValidationError listing every violated invariant.
    void validate() const;
};

} // namespace gfmswing
