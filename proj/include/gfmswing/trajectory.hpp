#pragma once

#include <vector>

#include "gfmswing/limiter.hpp"
#include "gfmswing/network.hpp"

namespace gfmswing {

enum class Segment { Inactive, ActiveVariable, ActiveAdaptive };

std::string_view to_string(Segment s);

struct TrajectorySample
{
    double delta = 0.0;
    Phasor z_app;
    Segment segment = Segment::Inactive;
};

/// Straight-line locus without current limiting, valid for |V_g| = |E_ref|:
/// (z_g + z_l - Z/2) - j (Z/2) cot(delta/2). Throws PoleAtZero when delta is a multiple of 2pi.
Phasor z_unlimited(double delta, const SystemParams& params);

/// Locus under the variable VI: (z_g + z_l) + (|V_g| / |I|) at angle (-delta - theta_i),
/// with I from the implicit solve. Outside the active set this is z_unlimited.
Phasor z_variable_vi(double delta, const SystemParams& params, double gain);

/// Phase of the I_max-regulated current: pi/2 - delta/2 - phi, wrapped to (-pi, pi].
double limited_current_angle(double delta, double phi);

/// Arc of radius |V_g| / I_max about z_g + z_l, at angle (-delta/2 - pi/2 + phi).
Phasor z_adaptive_vi(double delta, const SystemParams& params);

/// Uniform grid of n_samples angles strictly inside (0, 2pi), each evaluated with the
/// formula for its segment. Requires n_samples >= 3.
std::vector<TrajectorySample> full_cycle(Strategy strategy, const SystemParams& params, int n_samples);

} // namespace gfmswing
