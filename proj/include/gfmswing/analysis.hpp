#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gfmswing/dynamics.hpp"
#include "gfmswing/limiter.hpp"
#include "gfmswing/network.hpp"

namespace gfmswing {

struct PDeltaCurve
{
    Strategy strategy = Strategy::None;
    std::vector<double> delta;
    std::vector<double> p;
    std::vector<bool> vi_active;

    std::size_t size() const { return delta.size(); }
    /// Largest p over the grid.
    double peak() const;
};

/// Quasi-static output power along a uniform grid delta in [0, 2pi] (n points).
///
/// None: unlimited current. VariableVI: implicit solve with the designed gain.
/// AdaptiveVI: current magnitude regulated to exactly I_max wherever the unlimited
/// current would exceed it. Requires n >= 3.
PDeltaCurve p_delta_curve(Strategy strategy, const SystemParams& params, int n);

/// Active power of the adaptive strategy in steady regulation at angle delta.
double adaptive_regulated_power(double delta, const SystemParams& params, bool* vi_active = nullptr);

enum class Stability { Stable, Unstable };

std::string_view to_string(Stability s);

struct StabilityVerdict
{
    Stability classification = Stability::Stable;
    double max_delta_excursion = 0.0; ///< rad, measured from the pre-event angle
    int pole_slips = 0;
};

/// Unstable iff the unwrapped angle moves more than 2pi away from its pre-event value.
/// Requires at least `min_horizon` seconds of record after the first event (or after t0
/// when there are no events); throws InsufficientHorizon otherwise.
StabilityVerdict classify_stability(const SimulationRecord& record, double min_horizon = 20.0);

/// (delta, omega_dev) pairs in record order.
std::vector<std::pair<double, double>> phase_portrait(const SimulationRecord& record);

/// Time between the first two local maxima of delta after the first event; empty if the
/// record holds fewer than two.
std::optional<double> first_swing_period(const SimulationRecord& record);

} // namespace gfmswing
