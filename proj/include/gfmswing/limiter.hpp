#pragma once

#include <string_view>

#include "gfmswing/network.hpp"
#include "gfmswing/phasor.hpp"

namespace gfmswing {

enum class Strategy { None, VariableVI, AdaptiveVI };

std::string_view to_string(Strategy s);
/// Accepts "none", "variable", "adaptive". Throws std::invalid_argument otherwise.
Strategy parse_strategy(std::string_view text);

struct LimiterConfig
{
    Strategy strategy = Strategy::None;
    double k_vi = 0.0;     ///< fixed gain of the variable strategy
    double alpha_vi = 0.0; ///< X_VI / R_VI
    double kp = 1.0;       ///< adaptive PI proportional gain, 1/pu
    double ki = 1000.0;    ///< adaptive PI integral gain, 1/(pu s)
    double delta_v_max = 2.0;

    bool operator==(const LimiterConfig&) const = default;

    /// Gains designed for `params`: k_vi from the bolted-fault rule, alpha from params.
    static LimiterConfig for_system(Strategy strategy, const SystemParams& params);

    std::vector<std::string> violations() const;
};

/// PI state of the adaptive strategy.
struct AdaptiveState
{
    double integrator = 0.0;
    double delta_v = 0.0; ///< voltage drop commanded across the VI
};

struct ViValue
{
    double r_vi = 0.0;
    double x_vi = 0.0;

    Phasor impedance() const { return {r_vi, x_vi}; }
    bool active() const { return r_vi > 0.0; }
};

/// Everything a simulation carries for its limiter between steps.
struct LimiterState
{
    Strategy strategy = Strategy::None;
    AdaptiveState adaptive;
    ViValue last_vi;
};

/// Gain that limits a bolted terminal fault to I_max:
/// |E_ref| / ((I_max - I_th) I_max sqrt(1 + alpha^2)). Throws InvalidThresholds if I_max <= I_th.
double variable_vi_gain(const SystemParams& params);

/// Gain realising a VI voltage drop `delta_v` at I_max (the adaptive strategy's mapping).
double gain_from_voltage_drop(double delta_v, double i_max, double i_th, double alpha_vi);

/// R_VI = gain (mag - I_th) above threshold, X_VI = alpha R_VI.
ViValue vi_from_current(double mag, double gain, double alpha_vi, double i_th);

/// dq voltage drop across the VI, V_dVI + j V_qVI, from the rectangular expansion.
Phasor vi_voltage_drop(const ViValue& vi, Phasor i_dq);

/// Updated PCC voltage reference e_ref - (V_dVI + j V_qVI).
Phasor vi_reference_update(const ViValue& vi, Phasor i_dq, Phasor e_ref);

struct LimitedCurrent
{
    double magnitude = 0.0;
    ViValue vi;
    NetworkSolution solution;
    int iterations = 0;
};

/// Solves I = (source - far_end) / (z_total + gain (|I| - I_th)(1 + j alpha)) for |I|.
///
/// Returns the unlimited solution with a zero VI when it does not exceed I_th.
/// Throws NoConvergence when the bracketed solve exhausts its 100-iteration budget.
LimitedCurrent solve_limited_current(const Circuit& circuit, double gain, double alpha_vi, double i_th);

/// solve_limited_current on the healthy network at angle delta with the system's alpha.
LimitedCurrent solve_variable_vi_current(double delta, const SystemParams& params, double gain);

/// One sampled step of the current-magnitude PI with clamping anti-windup.
AdaptiveState adaptive_vi_step(const AdaptiveState& state, double mag, double dt,
                               const LimiterConfig& cfg, double i_max);

/// Angle at which the unlimited current magnitude reaches `i_level`.
/// Throws CriticalAngleError when the arccos argument leaves [-1, 1].
double critical_angle(const SystemParams& params, double i_level);

/// Split of a full swing cycle into VI-inactive and VI-active angles.
///
/// Inactive: [0, boundary] U [2pi - boundary, 2pi]; active: (boundary, 2pi - boundary).
struct ActivationSets
{
    double boundary = 0.0;

    bool is_active(double delta) const;
    bool is_inactive(double delta) const { return !is_active(delta); }
    double active_begin() const { return boundary; }
    double active_end() const { return kTwoPi - boundary; }
};

/// boundary = delta_th for VariableVI, delta_lim for AdaptiveVI.
/// Throws std::invalid_argument for Strategy::None.
ActivationSets activation_sets(const SystemParams& params, Strategy strategy);

} // namespace gfmswing
