#include "gfmswing/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gfmswing/errors.hpp"

namespace gfmswing {

double PDeltaCurve::peak() const
{
    double best = -std::numeric_limits<double>::infinity();
    for (double v : p) {
        best = std::max(best, v);
    }
    return best;
}

double adaptive_regulated_power(double delta, const SystemParams& params, bool* vi_active)
{
    const Circuit circuit = healthy_circuit(delta, params);
    NetworkSolution sol = solve_circuit(circuit, {});
    const bool limited = std::abs(sol.current) > params.i_max;
    if (limited) {
        // |z_total + r e^{j psi}| = |drive| / I_max, solved for r >= 0
        const double psi = std::atan(params.alpha_vi);
        const Phasor dir = std::polar(1.0, psi);
        const Phasor z = circuit.z_total;
        const double target = std::abs(circuit.source - circuit.far_end) / params.i_max;
        const double b = (z * std::conj(dir)).real();
        const double r = -b + std::sqrt(b * b - std::norm(z) + target * target);
        sol = solve_circuit(circuit, r * dir);
    }
    if (vi_active != nullptr) {
        *vi_active = limited;
    }
    return active_power(sol);
}

PDeltaCurve p_delta_curve(Strategy strategy, const SystemParams& params, int n)
{
    if (n < 3) {
        throw std::invalid_argument("p_delta_curve needs at least 3 points");
    }
    PDeltaCurve curve;
    curve.strategy = strategy;
    curve.delta.reserve(static_cast<std::size_t>(n));
    curve.p.reserve(static_cast<std::size_t>(n));
    curve.vi_active.reserve(static_cast<std::size_t>(n));
    const double gain = strategy == Strategy::VariableVI ? variable_vi_gain(params) : 0.0;

    for (int k = 0; k < n; ++k) {
        const double delta = kTwoPi * k / (n - 1);
        double p = 0.0;
        bool active = false;
        switch (strategy) {
        case Strategy::None:
            p = active_power(solve_network(delta, {}, params));
            break;
        case Strategy::VariableVI: {
            const auto limited = solve_variable_vi_current(delta, params, gain);
            p = active_power(limited.solution);
            active = limited.vi.active();
            break;
        }
        case Strategy::AdaptiveVI:
            p = adaptive_regulated_power(delta, params, &active);
            break;
        }
        curve.delta.push_back(delta);
        curve.p.push_back(p);
        curve.vi_active.push_back(active);
    }
    return curve;
}

std::string_view to_string(Stability s)
{
    return s == Stability::Stable ? "stable" : "unstable";
}

StabilityVerdict classify_stability(const SimulationRecord& record, double min_horizon)
{
    if (record.empty()) {
        throw InsufficientHorizon("empty record");
    }
    const double t_event = record.first_event_time.value_or(record.samples.front().t);
    const double covered = record.samples.back().t - t_event;
    if (covered + 1e-9 < min_horizon) {
        throw InsufficientHorizon("record covers " + std::to_string(covered) + " s after the event, need " +
                                  std::to_string(min_horizon) + " s");
    }

    // reference angle: last sample at or before the event
    double reference = record.samples.front().delta;
    for (const auto& s : record.samples) {
        if (s.t > t_event + 1e-12) {
            break;
        }
        reference = s.delta;
    }

    StabilityVerdict verdict;
    for (const auto& s : record.samples) {
        verdict.max_delta_excursion = std::max(verdict.max_delta_excursion, std::abs(s.delta - reference));
    }
    verdict.pole_slips = static_cast<int>(std::floor(verdict.max_delta_excursion / kTwoPi));
    verdict.classification = verdict.pole_slips >= 1 ? Stability::Unstable : Stability::Stable;
    return verdict;
}

std::vector<std::pair<double, double>> phase_portrait(const SimulationRecord& record)
{
    std::vector<std::pair<double, double>> out;
    out.reserve(record.size());
    for (const auto& s : record.samples) {
        out.emplace_back(s.delta, s.omega_dev);
    }
    return out;
}

std::optional<double> first_swing_period(const SimulationRecord& record)
{
    const double t_event = record.first_event_time.value_or(record.empty() ? 0.0 : record.samples.front().t);
    std::vector<double> peaks;
    const auto& s = record.samples;
    for (std::size_t i = 1; i + 1 < s.size() && peaks.size() < 2; ++i) {
        if (s[i].t <= t_event) {
            continue;
        }
        if (s[i].delta > s[i - 1].delta && s[i].delta >= s[i + 1].delta) {
            peaks.push_back(s[i].t);
        }
    }
    if (peaks.size() < 2) {
        return std::nullopt;
    }
    return peaks[1] - peaks[0];
}

} // namespace gfmswing
