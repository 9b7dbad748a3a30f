#pragma once

#include <string>
#include <vector>

#include "gfmswing/phasor.hpp"

namespace gfmswing {

/// Single-machine infinite-bus system: inverter PCC -> transformer -> line -> grid Thevenin source.
/// All quantities per-unit.
struct SystemParams
{
    Phasor e_ref{1.0, 0.0}; ///< PCC voltage setpoint
    double v_g_mag = 1.0;   ///< grid Thevenin voltage magnitude
    Phasor z_g;
    Phasor z_l;
    Phasor z_tr;
    double i_max = 1.2;
    double i_th = 1.0;
    double alpha_vi = 0.0; ///< X_VI / R_VI
    double f_nominal = 60.0;

    bool operator==(const SystemParams&) const = default;

    /// Default test system; alpha_vi is matched to the total impedance angle.
    static SystemParams reference();

    /// Messages for every violated invariant; empty when valid.
    std::vector<std::string> violations() const;
    /// Throws ValidationError when violations() is non-empty.
    void validate() const;
};

/// z_tr + z_l + z_g.
Phasor total_impedance(const SystemParams& params);

/// tan of the total impedance angle, the default VI ratio.
double matched_alpha(const SystemParams& params);

/// Two-source series circuit seen from the inverter.
///
/// `source` drives current through `z_total` (plus any virtual impedance) into `far_end`.
/// The relay bus sits `z_relay` away from `far_end`.
struct Circuit
{
    Phasor source;
    Phasor far_end;
    Phasor z_total;
    Phasor z_relay;
};

/// Healthy network at power angle delta (inverter frame, grid source at -delta).
Circuit healthy_circuit(double delta, const SystemParams& params);

/// Bolted three-phase fault at `location` (0..1) along the line, measured from the relay bus.
/// The grid side is cut off from the inverter's loop.
Circuit faulted_circuit(const SystemParams& params, double location);

struct NetworkSolution
{
    Phasor current;    ///< inverter output current, flows through the relay
    Phasor v_pcc;
    Phasor v_relay;
    Phasor z_apparent; ///< NaN when zero_current
    bool zero_current = false;
};

NetworkSolution solve_circuit(const Circuit& circuit, Phasor z_vi);

/// Solves the healthy network for angle delta with series virtual impedance z_vi (0 = unlimited).
NetworkSolution solve_network(double delta, Phasor z_vi, const SystemParams& params);

/// Re(V_pcc * conj(I)).
double active_power(const NetworkSolution& sol);

} // namespace gfmswing
