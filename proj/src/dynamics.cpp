#include "gfmswing/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gfmswing/errors.hpp"
#include "gfmswing/root_finding.hpp"
#include "gfmswing/scenario.hpp"

namespace gfmswing {

namespace {

template<class... Ts>
struct Overloaded : Ts...
{
    using Ts::operator()...;
};
template<class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double limiter_gain(const LimiterState& limiter, const Model& model)
{
    switch (limiter.strategy) {
    case Strategy::None:
        return 0.0;
    case Strategy::VariableVI:
        return model.limiter.k_vi;
    case Strategy::AdaptiveVI:
        return gain_from_voltage_drop(limiter.adaptive.delta_v, model.system.i_max, model.system.i_th,
                                      model.limiter.alpha_vi);
    }
    return 0.0;
}

} // namespace

std::vector<std::string> ApclParams::violations() const
{
    std::vector<std::string> out;
    if (!(h > 0.0)) {
        out.emplace_back("apcl.h must be positive");
    }
    if (!(d_p > 0.0)) {
        out.emplace_back("apcl.d_p must be positive");
    }
    if (!(freq_clamp > 0.0)) {
        out.emplace_back("apcl.freq_clamp must be positive");
    }
    if (!(omega_n > 0.0)) {
        out.emplace_back("apcl.omega_n must be positive");
    }
    if (!std::isfinite(p0)) {
        out.emplace_back("apcl.p0 must be finite");
    }
    return out;
}

std::vector<std::string> event_violations(std::span<const Event> events)
{
    std::vector<std::string> out;
    bool fault_open = false;
    double last_time = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        const std::string where = "events[" + std::to_string(i) + "]";
        if (!(e.time >= 0.0)) {
            out.push_back(where + ".time must be non-negative");
        }
        if (e.time < last_time) {
            out.push_back(where + ".time is earlier than the previous event");
        }
        last_time = e.time;
        std::visit(Overloaded{
                       [&](const FaultApply& f) {
                           if (fault_open) {
                               out.push_back(where + " applies a fault while one is already applied");
                           }
                           if (!(f.location >= 0.0 && f.location <= 1.0)) {
                               out.push_back(where + ".location must lie in [0, 1]");
                           }
                           fault_open = true;
                       },
                       [&](const FaultClear&) {
                           if (!fault_open) {
                               out.push_back(where + " clears a fault that was never applied");
                           }
                           fault_open = false;
                       },
                       [](const auto&) {},
                   },
                   e.action);
    }
    return out;
}

SwingDerivatives swing_derivatives(const SimState& state, double p_e, const ApclParams& params)
{
    return {
        .d_omega_dev = (state.p0 - p_e - state.omega_dev / params.d_p) / (2.0 * params.h),
        .d_delta = params.omega_n * state.omega_dev,
    };
}

PowerEvaluation electrical_power(double delta, const LimiterState& limiter, const Model& model,
                                 std::optional<double> fault_location)
{
    const Circuit circuit =
        fault_location ? faulted_circuit(model.system, *fault_location) : healthy_circuit(delta, model.system);
    const double gain = limiter_gain(limiter, model);
    const LimitedCurrent limited = solve_limited_current(circuit, gain, model.limiter.alpha_vi, model.system.i_th);
    return {
        .p_e = active_power(limited.solution),
        .magnitude = limited.magnitude,
        .solution = limited.solution,
        .vi = limited.vi,
    };
}

SimState apply_due_events(SimState state, std::span<const Event> events, double tolerance)
{
    while (state.next_event < events.size() && events[state.next_event].time <= state.t + tolerance) {
        std::visit(Overloaded{
                       [&](const PhaseJump& j) { state.delta += j.angle; },
                       [&](const FaultApply& f) { state.fault_location = f.location; },
                       [&](const FaultClear&) { state.fault_location.reset(); },
                       [&](const PowerStep& p) { state.p0 += p.delta_p; },
                   },
                   events[state.next_event].action);
        ++state.next_event;
    }
    return state;
}

StepResult step(const SimState& state, double dt, const Model& model, std::span<const Event> events)
{
    SimState s = apply_due_events(state, events, 1e-9 * std::max(dt, 1.0));
    try {
        auto derivative = [&](double delta, double omega_dev) {
            SimState probe = s;
            probe.delta = delta;
            probe.omega_dev = omega_dev;
            const double p_e = electrical_power(delta, s.limiter, model, s.fault_location).p_e;
            return swing_derivatives(probe, p_e, model.apcl);
        };

        const auto k1 = derivative(s.delta, s.omega_dev);
        const auto k2 = derivative(s.delta + 0.5 * dt * k1.d_delta, s.omega_dev + 0.5 * dt * k1.d_omega_dev);
        const auto k3 = derivative(s.delta + 0.5 * dt * k2.d_delta, s.omega_dev + 0.5 * dt * k2.d_omega_dev);
        const auto k4 = derivative(s.delta + dt * k3.d_delta, s.omega_dev + dt * k3.d_omega_dev);

        s.delta += dt / 6.0 * (k1.d_delta + 2.0 * k2.d_delta + 2.0 * k3.d_delta + k4.d_delta);
        s.omega_dev += dt / 6.0 * (k1.d_omega_dev + 2.0 * k2.d_omega_dev + 2.0 * k3.d_omega_dev + k4.d_omega_dev);
        s.omega_dev = std::clamp(s.omega_dev, -model.apcl.freq_clamp, model.apcl.freq_clamp);
        s.t = state.t + dt;

        PowerEvaluation end = electrical_power(s.delta, s.limiter, model, s.fault_location);
        if (s.limiter.strategy == Strategy::AdaptiveVI) {
            s.limiter.adaptive = adaptive_vi_step(s.limiter.adaptive, end.magnitude, dt, model.limiter,
                                                  model.system.i_max);
        }
        s.limiter.last_vi = end.vi;
        return {s, end};
    } catch (const SwingError& e) {
        throw SimulationError("at t = " + std::to_string(state.t) + " s: " + e.what(), state.t);
    }
}

double equilibrium_angle(const Model& model)
{
    LimiterState limiter;
    limiter.strategy = model.limiter.strategy;
    const double target = model.apcl.p0;
    auto power = [&](double delta) { return electrical_power(delta, limiter, model).p_e; };

    const double direction = target >= 0.0 ? 1.0 : -1.0;
    const double scan_step = 1e-3;
    double prev = 0.0;
    double prev_gap = power(0.0) - target;
    if (prev_gap == 0.0) {
        return 0.0;
    }
    for (double d = scan_step; d <= kPi; d += scan_step) {
        const double delta = direction * d;
        const double gap = power(delta) - target;
        if ((gap >= 0.0) != (prev_gap >= 0.0)) {
            auto residual = [&](double x) -> std::pair<double, double> {
                // derivative-free: reporting zero slope forces pure bisection
                return {direction * (power(x) - target), 0.0};
            };
            const auto root = find_root_bracketed(residual, prev, delta, 1e-13, 200);
            return root.root;
        }
        prev = delta;
        prev_gap = gap;
    }
    throw NoEquilibrium("active power setpoint " + std::to_string(target) + " pu exceeds the P-delta curve");
}

SimState initial_state(const Model& model, std::optional<double> delta0)
{
    SimState s;
    s.limiter.strategy = model.limiter.strategy;
    s.delta = delta0 ? *delta0 : equilibrium_angle(model);
    s.omega_dev = 0.0;
    s.p0 = model.apcl.p0;
    s.limiter.last_vi = electrical_power(s.delta, s.limiter, model).vi;
    return s;
}

namespace {

RecordSample make_sample(const SimState& s, const PowerEvaluation& eval, const RelayState& relay)
{
    RecordSample r;
    r.t = s.t;
    r.delta = s.delta;
    r.omega_dev = s.omega_dev;
    r.i_mag = eval.magnitude;
    r.z_app = eval.solution.z_apparent;
    r.v_relay = eval.solution.v_relay;
    r.p_e = eval.p_e;
    r.vi = eval.vi;
    r.delta_v = s.limiter.adaptive.delta_v;
    r.faulted = s.fault_location.has_value();
    r.psb = relay.psb_asserted;
    r.ost = relay.ost_tripped;
    return r;
}

std::optional<Phasor> measured(const PowerEvaluation& eval)
{
    if (eval.solution.zero_current) {
        return std::nullopt;
    }
    return eval.solution.z_apparent;
}

} // namespace

SimulationRecord run_scenario(const Scenario& scenario)
{
    scenario.validate();
    const Model model{scenario.system, scenario.apcl, scenario.limiter};
    const std::span<const Event> events{scenario.events};
    const double dt = scenario.dt;
    const auto n_steps = static_cast<std::size_t>(std::llround(scenario.horizon / dt));

    SimulationRecord record;
    record.dt = dt;
    record.freq_clamp = scenario.apcl.freq_clamp;
    if (!scenario.events.empty()) {
        record.first_event_time = scenario.events.front().time;
    }
    record.samples.reserve(n_steps + 1);

    SimState state = initial_state(model, scenario.initial_delta);
    PowerEvaluation eval = electrical_power(state.delta, state.limiter, model, state.fault_location);
    RelayState relay = relay_step({}, measured(eval), 0.0, dt, scenario.relay);
    record.samples.push_back(make_sample(state, eval, relay));

    for (std::size_t i = 1; i <= n_steps; ++i) {
        StepResult next = step(state, dt, model, events);
        state = std::move(next.state);
        // keep the time grid exactly uniform
        state.t = static_cast<double>(i) * dt;
        relay = relay_step(std::move(relay), measured(next.end), state.t, dt, scenario.relay);
        record.samples.push_back(make_sample(state, next.end, relay));
    }
    record.relay_events = std::move(relay.event_log);
    return record;
}

} // namespace gfmswing
