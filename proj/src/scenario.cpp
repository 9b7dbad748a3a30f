#include "gfmswing/scenario.hpp"

#include <cmath>

#include "gfmswing/errors.hpp"

namespace gfmswing {

std::vector<std::string> Scenario::violations() const
{
    std::vector<std::string> out = system.violations();
    auto append = [&out](std::vector<std::string> more) {
        out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    };
    append(apcl.violations());
    append(limiter.violations());
    append(relay.violations());
    append(event_violations(events));
    if (!(dt > 0.0)) {
        out.emplace_back("dt must be positive");
    }
    if (!(horizon > 0.0)) {
        out.emplace_back("horizon must be positive");
    }
    if (!events.empty() && !(horizon > events.back().time)) {
        out.emplace_back("horizon must exceed the last event time");
    }
    if (initial_delta && !std::isfinite(*initial_delta)) {
        out.emplace_back("initial_delta must be finite");
    }
    return out;
}

void Scenario::validate() const
{
    auto v = violations();
    if (!v.empty()) {
        throw ValidationError(std::move(v));
    }
}

} // namespace gfmswing
