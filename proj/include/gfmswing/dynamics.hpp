#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gfmswing/limiter.hpp"
#include "gfmswing/network.hpp"
#include "gfmswing/relay.hpp"

namespace gfmswing {

/// Active power control loop emulating a swing equation.
struct ApclParams
{
    double h = 7.0;             ///< inertia constant, s
    double d_p = 0.05;          ///< damping coefficient; the damping term is (omega - omega0) / d_p
    double p0 = 0.45;           ///< active power setpoint, pu
    double omega0 = 1.0;        ///< frequency setpoint, pu
    double omega_n = 2.0 * kPi * 60.0; ///< rated angular frequency, rad/s
    double freq_clamp = 0.01;   ///< limit on |omega - omega0|, pu

    bool operator==(const ApclParams&) const = default;

    std::vector<std::string> violations() const;
};

struct PhaseJump
{
    double angle = 0.0; ///< step added to delta, rad

    bool operator==(const PhaseJump&) const = default;
};

struct FaultApply
{
    double location = 0.5; ///< fraction of the line from the relay bus

    bool operator==(const FaultApply&) const = default;
};

struct FaultClear
{
    bool operator==(const FaultClear&) const = default;
};

struct PowerStep
{
    double delta_p = 0.0; ///< added to the active power setpoint, pu

    bool operator==(const PowerStep&) const = default;
};

using EventAction = std::variant<PhaseJump, FaultApply, FaultClear, PowerStep>;

struct Event
{
    double time = 0.0;
    EventAction action;

    bool operator==(const Event&) const = default;
};

std::vector<std::string> event_violations(std::span<const Event> events);

struct SimState
{
    double delta = 0.0;     ///< unwrapped power angle, rad
    double omega_dev = 0.0; ///< omega - omega0, pu
    LimiterState limiter;
    double t = 0.0;
    double p0 = 0.0;                      ///< current active power setpoint
    std::optional<double> fault_location; ///< set while a fault is applied
    std::size_t next_event = 0;           ///< index of the first event not yet applied
};

struct Model
{
    SystemParams system;
    ApclParams apcl;
    LimiterConfig limiter;
};

struct SwingDerivatives
{
    double d_omega_dev = 0.0; ///< 1/s
    double d_delta = 0.0;     ///< rad/s
};

/// d(omega_dev)/dt = (p0 - p_e - omega_dev/d_p) / 2H with p0 taken from the state,
/// d(delta)/dt = omega_n omega_dev.
SwingDerivatives swing_derivatives(const SimState& state, double p_e, const ApclParams& params);

struct PowerEvaluation
{
    double p_e = 0.0;
    double magnitude = 0.0;
    NetworkSolution solution;
    ViValue vi;
};

/// Quasi-static network/limiter solve at angle delta for the limiter's current state.
PowerEvaluation electrical_power(double delta, const LimiterState& limiter, const Model& model,
                                 std::optional<double> fault_location = std::nullopt);

/// Applies every event due at state.t (time <= t + tolerance).
SimState apply_due_events(SimState state, std::span<const Event> events, double tolerance = 1e-9);

struct StepResult
{
    SimState state;
    PowerEvaluation end; ///< network solution at the end of the step
};

/// Applies due events, advances (delta, omega_dev) by one RK4 step with the limiter
/// frozen across stages, clamps omega_dev, then steps the adaptive PI with the
/// end-of-step current magnitude. Solver failures become SimulationError.
StepResult step(const SimState& state, double dt, const Model& model, std::span<const Event> events);

/// Angle on the first rising branch of the strategy's P-delta curve where P = p0.
double equilibrium_angle(const Model& model);

/// Initial state at equilibrium (or at `delta0` when given) with zero frequency deviation.
SimState initial_state(const Model& model, std::optional<double> delta0 = std::nullopt);

struct RecordSample
{
    double t = 0.0;
    double delta = 0.0;
    double omega_dev = 0.0;
    double i_mag = 0.0;
    Phasor z_app; ///< NaN when the current is zero
    Phasor v_relay;
    double p_e = 0.0;
    ViValue vi;
    double delta_v = 0.0;
    bool faulted = false;
    bool psb = false;
    bool ost = false;
};

struct SimulationRecord
{
    std::vector<RecordSample> samples;
    std::vector<RelayEvent> relay_events;
    double dt = 0.0;
    double freq_clamp = 0.0;
    std::optional<double> first_event_time;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
};

struct Scenario;

/// Integrates the scenario from t = 0 to its horizon, feeding every sample to the relay.
SimulationRecord run_scenario(const Scenario& scenario);

} // namespace gfmswing
