#include "gfmswing/trajectory.hpp"

#include <cmath>
#include <stdexcept>

#include "gfmswing/errors.hpp"

namespace gfmswing {

std::string_view to_string(Segment s)
{
    switch (s) {
    case Segment::Inactive:
        return "inactive";
    case Segment::ActiveVariable:
        return "active_variable";
    case Segment::ActiveAdaptive:
        return "active_adaptive";
    }
    return "unknown";
}

Phasor z_unlimited(double delta, const SystemParams& params)
{
    const double half = 0.5 * wrap_two_pi(delta);
    const double s = std::sin(half);
    if (std::abs(s) < 1e-15) {
        throw PoleAtZero("apparent impedance is at infinity for delta = 0 (mod 2pi)");
    }
    const Phasor z_sum = total_impedance(params);
    const double cot = std::cos(half) / s;
    return (params.z_g + params.z_l - 0.5 * z_sum) - Phasor{0.0, 1.0} * (0.5 * z_sum) * cot;
}

Phasor z_variable_vi(double delta, const SystemParams& params, double gain)
{
    const auto limited = solve_variable_vi_current(delta, params, gain);
    if (!limited.vi.active()) {
        return z_unlimited(delta, params);
    }
    const double theta_i = std::arg(limited.solution.current);
    return params.z_g + params.z_l + std::polar(params.v_g_mag / limited.magnitude, -delta - theta_i);
}

double limited_current_angle(double delta, double phi)
{
    return normalize_angle(0.5 * kPi - 0.5 * delta - phi);
}

Phasor z_adaptive_vi(double delta, const SystemParams& params)
{
    const double phi = std::arg(total_impedance(params));
    return params.z_g + params.z_l + std::polar(params.v_g_mag / params.i_max, -0.5 * delta - 0.5 * kPi + phi);
}

std::vector<TrajectorySample> full_cycle(Strategy strategy, const SystemParams& params, int n_samples)
{
    if (n_samples < 3) {
        throw std::invalid_argument("full_cycle needs at least 3 samples");
    }
    ActivationSets sets{kPi}; // unused for Strategy::None
    const double gain = strategy == Strategy::VariableVI ? variable_vi_gain(params) : 0.0;
    if (strategy != Strategy::None) {
        sets = activation_sets(params, strategy);
    }

    std::vector<TrajectorySample> out;
    out.reserve(static_cast<std::size_t>(n_samples));
    for (int k = 0; k < n_samples; ++k) {
        TrajectorySample s;
        s.delta = kTwoPi * (k + 1) / (n_samples + 1);
        if (strategy == Strategy::None || !sets.is_active(s.delta)) {
            s.z_app = z_unlimited(s.delta, params);
            s.segment = Segment::Inactive;
        } else if (strategy == Strategy::VariableVI) {
            s.z_app = z_variable_vi(s.delta, params, gain);
            s.segment = Segment::ActiveVariable;
        } else {
            s.z_app = z_adaptive_vi(s.delta, params);
            s.segment = Segment::ActiveAdaptive;
        }
        out.push_back(s);
    }
    return out;
}

} // namespace gfmswing
