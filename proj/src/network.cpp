#include "gfmswing/network.hpp"

#include <cmath>
#include <limits>

#include "gfmswing/errors.hpp"

namespace gfmswing {

namespace {
constexpr double kDegenerateImpedance = 1e-12;
constexpr double kZeroCurrent = 1e-12;
} // namespace

SystemParams SystemParams::reference()
{
    SystemParams p;
    p.e_ref = {1.0, 0.0};
    p.v_g_mag = 1.0;
    p.z_g = from_polar_deg(0.6, 84.29);
    p.z_l = from_polar_deg(0.3, 84.29);
    p.z_tr = from_polar_deg(0.16, 88.57);
    p.i_max = 1.2;
    p.i_th = 1.0;
    p.alpha_vi = matched_alpha(p);
    p.f_nominal = 60.0;
    return p;
}

std::vector<std::string> SystemParams::violations() const
{
    std::vector<std::string> out;
    if (!(std::abs(z_g) > 0.0)) {
        out.emplace_back("system.z_g must be non-zero");
    }
    if (!(std::abs(z_l) > 0.0)) {
        out.emplace_back("system.z_l must be non-zero");
    }
    if (!(std::abs(z_tr) > 0.0)) {
        out.emplace_back("system.z_tr must be non-zero");
    }
    if (!(i_th > 0.0)) {
        out.emplace_back("system.i_th must be positive");
    }
    if (!(i_max > i_th)) {
        out.emplace_back("system.i_max must exceed system.i_th");
    }
    if (!(alpha_vi >= 0.0)) {
        out.emplace_back("system.alpha_vi must be non-negative");
    }
    if (!(v_g_mag > 0.0)) {
        out.emplace_back("system.v_g must be positive");
    }
    if (!(f_nominal > 0.0)) {
        out.emplace_back("system.f_nominal must be positive");
    }
    return out;
}

void SystemParams::validate() const
{
    auto v = violations();
    if (!v.empty()) {
        throw ValidationError(std::move(v));
    }
}

Phasor total_impedance(const SystemParams& params)
{
    return params.z_tr + params.z_l + params.z_g;
}

double matched_alpha(const SystemParams& params)
{
    return std::tan(std::arg(total_impedance(params)));
}

Circuit healthy_circuit(double delta, const SystemParams& params)
{
    return Circuit{
        .source = params.e_ref,
        .far_end = std::polar(params.v_g_mag, -delta),
        .z_total = total_impedance(params),
        .z_relay = params.z_g + params.z_l,
    };
}

Circuit faulted_circuit(const SystemParams& params, double location)
{
    return Circuit{
        .source = params.e_ref,
        .far_end = Phasor{0.0, 0.0},
        .z_total = params.z_tr + location * params.z_l,
        .z_relay = location * params.z_l,
    };
}

NetworkSolution solve_circuit(const Circuit& circuit, Phasor z_vi)
{
    const Phasor z_loop = circuit.z_total + z_vi;
    if (std::abs(z_loop) < kDegenerateImpedance) {
        throw DegenerateCircuit("series impedance of the circuit is zero");
    }
    NetworkSolution sol;
    sol.current = (circuit.source - circuit.far_end) / z_loop;
    sol.v_pcc = circuit.far_end + circuit.z_total * sol.current;
    sol.v_relay = circuit.far_end + circuit.z_relay * sol.current;
    if (std::abs(sol.current) < kZeroCurrent) {
        sol.zero_current = true;
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        sol.z_apparent = {nan, nan};
    } else {
        sol.z_apparent = sol.v_relay / sol.current;
    }
    return sol;
}

NetworkSolution solve_network(double delta, Phasor z_vi, const SystemParams& params)
{
    return solve_circuit(healthy_circuit(delta, params), z_vi);
}

double active_power(const NetworkSolution& sol)
{
    return (sol.v_pcc * std::conj(sol.current)).real();
}

} // namespace gfmswing
