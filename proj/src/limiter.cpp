#include "gfmswing/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gfmswing/errors.hpp"
#include "gfmswing/root_finding.hpp"

namespace gfmswing {

namespace {
constexpr double kSolveTolerance = 1e-10;
constexpr int kSolveIterations = 100;
constexpr double kTinyImpedance = 1e-12;
} // namespace

std::string_view to_string(Strategy s)
{
    switch (s) {
    case Strategy::None:
        return "none";
    case Strategy::VariableVI:
        return "variable";
    case Strategy::AdaptiveVI:
        return "adaptive";
    }
    return "unknown";
}

Strategy parse_strategy(std::string_view text)
{
    if (text == "none") {
        return Strategy::None;
    }
    if (text == "variable") {
        return Strategy::VariableVI;
    }
    if (text == "adaptive") {
        return Strategy::AdaptiveVI;
    }
    throw std::invalid_argument("unknown strategy '" + std::string(text) +
                                "' (expected none, variable or adaptive)");
}

LimiterConfig LimiterConfig::for_system(Strategy strategy, const SystemParams& params)
{
    LimiterConfig cfg;
    cfg.strategy = strategy;
    cfg.alpha_vi = params.alpha_vi;
    cfg.k_vi = variable_vi_gain(params);
    return cfg;
}

std::vector<std::string> LimiterConfig::violations() const
{
    std::vector<std::string> out;
    if (!(k_vi >= 0.0)) {
        out.emplace_back("limiter.k_vi must be non-negative");
    }
    if (!(alpha_vi >= 0.0)) {
        out.emplace_back("limiter.alpha_vi must be non-negative");
    }
    if (!(kp >= 0.0)) {
        out.emplace_back("limiter.kp must be non-negative");
    }
    if (!(ki >= 0.0)) {
        out.emplace_back("limiter.ki must be non-negative");
    }
    if (!(delta_v_max > 0.0)) {
        out.emplace_back("limiter.delta_v_max must be positive");
    }
    return out;
}

double variable_vi_gain(const SystemParams& params)
{
    if (!(params.i_max > params.i_th)) {
        throw InvalidThresholds("I_max must exceed I_th to design the VI gain");
    }
    return std::abs(params.e_ref) /
           ((params.i_max - params.i_th) * params.i_max * std::sqrt(1.0 + params.alpha_vi * params.alpha_vi));
}

double gain_from_voltage_drop(double delta_v, double i_max, double i_th, double alpha_vi)
{
    if (!(i_max > i_th)) {
        throw InvalidThresholds("I_max must exceed I_th to map a voltage drop to a VI gain");
    }
    return delta_v / ((i_max - i_th) * i_max * std::sqrt(1.0 + alpha_vi * alpha_vi));
}

ViValue vi_from_current(double mag, double gain, double alpha_vi, double i_th)
{
    if (!(mag > i_th)) {
        return {};
    }
    const double r = gain * (mag - i_th);
    return {r, alpha_vi * r};
}

Phasor vi_voltage_drop(const ViValue& vi, Phasor i_dq)
{
    const double i_sd = i_dq.real();
    const double i_sq = i_dq.imag();
    return {vi.r_vi * i_sd - vi.x_vi * i_sq, vi.r_vi * i_sq + vi.x_vi * i_sd};
}

Phasor vi_reference_update(const ViValue& vi, Phasor i_dq, Phasor e_ref)
{
    return e_ref - vi_voltage_drop(vi, i_dq);
}

LimitedCurrent solve_limited_current(const Circuit& circuit, double gain, double alpha_vi, double i_th)
{
    const Phasor drive = circuit.source - circuit.far_end;
    const double drive_mag = std::abs(drive);
    const Phasor z = circuit.z_total;
    const bool open_loop = std::abs(z) < kTinyImpedance;

    double unlimited_mag = std::numeric_limits<double>::infinity();
    if (!open_loop) {
        auto sol = solve_circuit(circuit, {});
        unlimited_mag = std::abs(sol.current);
        if (gain <= 0.0 || unlimited_mag <= i_th) {
            return {unlimited_mag, {}, sol, 0};
        }
    } else if (gain <= 0.0) {
        throw DegenerateCircuit("no series impedance and no virtual impedance to limit the current");
    }

    const Phasor unit_vi{1.0, alpha_vi};
    // m |z + gain (m - I_th) (1 + j alpha)| - |drive|, increasing in m on [I_th, inf)
    auto residual = [&](double m) -> std::pair<double, double> {
        const Phasor loop = z + gain * (m - i_th) * unit_vi;
        const double loop_mag = std::abs(loop);
        const double d_loop = loop_mag > 0.0 ? gain * (loop * std::conj(unit_vi)).real() / loop_mag : 0.0;
        return {m * loop_mag - drive_mag, loop_mag + m * d_loop};
    };

    const double lo = i_th;
    double hi = std::isfinite(unlimited_mag) ? unlimited_mag : 2.0 * i_th + 1.0;
    for (int i = 0; residual(hi).first < 0.0; ++i) {
        if (i > 200) {
            throw NoConvergence("could not bracket the limited current", residual(hi).first, i);
        }
        hi *= 2.0;
    }

    const RootResult root = find_root_bracketed(residual, lo, hi, kSolveTolerance, kSolveIterations);
    if (!root.converged) {
        throw NoConvergence("limited current solve did not converge (residual " + std::to_string(root.residual) +
                                ")",
                            root.residual, root.iterations);
    }
    LimitedCurrent out;
    out.vi = vi_from_current(root.root, gain, alpha_vi, i_th);
    out.solution = solve_circuit(circuit, out.vi.impedance());
    out.magnitude = std::abs(out.solution.current);
    out.iterations = root.iterations;
    return out;
}

LimitedCurrent solve_variable_vi_current(double delta, const SystemParams& params, double gain)
{
    return solve_limited_current(healthy_circuit(delta, params), gain, params.alpha_vi, params.i_th);
}

AdaptiveState adaptive_vi_step(const AdaptiveState& state, double mag, double dt, const LimiterConfig& cfg,
                               double i_max)
{
    const double error = mag - i_max;
    const double unclamped = cfg.kp * error + state.integrator;
    const bool pushing_high = unclamped >= cfg.delta_v_max && error > 0.0;
    const bool pushing_low = unclamped <= 0.0 && error < 0.0;

    AdaptiveState next = state;
    if (!pushing_high && !pushing_low) {
        next.integrator = std::clamp(state.integrator + cfg.ki * error * dt, 0.0, cfg.delta_v_max);
    }
    next.delta_v = std::clamp(cfg.kp * error + next.integrator, 0.0, cfg.delta_v_max);
    return next;
}

double critical_angle(const SystemParams& params, double i_level)
{
    const double e = std::abs(params.e_ref);
    const double vg = params.v_g_mag;
    const double drop = std::abs(total_impedance(params)) * i_level;
    const double arg = (e * e + vg * vg - drop * drop) / (2.0 * e * vg);
    if (arg > 1.0) {
        throw CriticalAngleError(CriticalAngleError::Kind::AlwaysExceeded,
                                 "current level " + std::to_string(i_level) + " pu is exceeded at every angle");
    }
    if (arg < -1.0) {
        throw CriticalAngleError(CriticalAngleError::Kind::Unreachable,
                                 "current level " + std::to_string(i_level) + " pu is never reached");
    }
    return std::acos(arg);
}

bool ActivationSets::is_active(double delta) const
{
    const double d = wrap_two_pi(delta);
    return d > active_begin() && d < active_end();
}

ActivationSets activation_sets(const SystemParams& params, Strategy strategy)
{
    switch (strategy) {
    case Strategy::VariableVI:
        return {critical_angle(params, params.i_th)};
    case Strategy::AdaptiveVI:
        return {critical_angle(params, params.i_max)};
    case Strategy::None:
        break;
    }
    throw std::invalid_argument("no activation boundary without a current limiter");
}

} // namespace gfmswing
