#include "gfmswing/cases.hpp"

#include <stdexcept>

namespace gfmswing {

namespace {

Scenario base_case(std::string name, Strategy strategy, double h, double d_p, double p0, std::vector<Event> events,
                   double horizon)
{
    Scenario s;
    s.name = std::move(name);
    s.system = SystemParams::reference();
    s.apcl.h = h;
    s.apcl.d_p = d_p;
    s.apcl.p0 = p0;
    s.apcl.omega_n = kTwoPi * s.system.f_nominal;
    s.limiter = LimiterConfig::for_system(strategy, s.system);
    s.events = std::move(events);
    s.horizon = horizon;
    s.dt = 5e-4;
    s.relay = RelaySettings::reference();
    s.outputs = "out/" + s.name;
    return s;
}

// stable swing: phase jump of the grid angle
Scenario case_a(std::string name, Strategy strategy)
{
    return base_case(std::move(name), strategy, 7.0, 0.05, 0.45, {{8.0, PhaseJump{-1.59}}}, 30.0);
}

// fault on line BC, cleared after 0.25 s
Scenario case_b(std::string name, Strategy strategy)
{
    return base_case(std::move(name), strategy, 7.0, 0.05, 0.7, {{4.0, FaultApply{0.5}}, {4.25, FaultClear{}}},
                     25.0);
}

// APCL parameter study
Scenario case_c(std::string name, Strategy strategy, double h, double d_p)
{
    return base_case(std::move(name), strategy, h, d_p, 0.65, {{8.0, PhaseJump{-1.13}}}, 30.0);
}

// shorter line and weaker grid; relay settings follow the line impedance
Scenario case_d()
{
    Scenario s = base_case("caseD", Strategy::AdaptiveVI, 7.0, 0.05, 0.7,
                           {{8.0, FaultApply{0.5}}, {8.25, FaultClear{}}}, 30.0);
    const SystemParams reference = SystemParams::reference();
    s.system.z_l = from_polar_deg(0.2, 84.29);
    s.system.z_g = from_polar_deg(0.3, 84.29);
    s.system.alpha_vi = matched_alpha(s.system);
    s.limiter = LimiterConfig::for_system(Strategy::AdaptiveVI, s.system);
    s.relay = RelaySettings::reference().scaled(std::abs(s.system.z_l) / std::abs(reference.z_l));
    return s;
}

// setpoint step
Scenario case_e(std::string name, double delta_p)
{
    return base_case(std::move(name), Strategy::None, 5.0, 0.05, 0.6, {{8.0, PowerStep{delta_p}}}, 30.0);
}

} // namespace

std::vector<std::string> builtin_case_ids()
{
    return {"caseA1", "caseA2", "caseA3", "caseB1", "caseB2", "caseB3", "caseC1",
            "caseC2", "caseC3", "caseD",  "caseE1", "caseE2"};
}

Scenario builtin_case(std::string_view id)
{
    if (id == "caseA1") {
        return case_a("caseA1", Strategy::None);
    }
    if (id == "caseA2") {
        return case_a("caseA2", Strategy::VariableVI);
    }
    if (id == "caseA3") {
        return case_a("caseA3", Strategy::AdaptiveVI);
    }
    if (id == "caseB1") {
        return case_b("caseB1", Strategy::None);
    }
    if (id == "caseB2") {
        return case_b("caseB2", Strategy::VariableVI);
    }
    if (id == "caseB3") {
        return case_b("caseB3", Strategy::AdaptiveVI);
    }
    if (id == "caseC1") {
        return case_c("caseC1", Strategy::None, 3.0, 0.05);
    }
    if (id == "caseC2") {
        return case_c("caseC2", Strategy::VariableVI, 9.0, 0.05);
    }
    if (id == "caseC3") {
        return case_c("caseC3", Strategy::AdaptiveVI, 3.0, 0.15);
    }
    if (id == "caseD") {
        return case_d();
    }
    if (id == "caseE1") {
        return case_e("caseE1", 0.4);
    }
    if (id == "caseE2") {
        return case_e("caseE2", 0.5);
    }
    throw std::invalid_argument("unknown built-in case '" + std::string(id) + "'");
}

Scenario with_strategy(Scenario scenario, Strategy strategy)
{
    const LimiterConfig designed = LimiterConfig::for_system(strategy, scenario.system);
    scenario.limiter.strategy = strategy;
    scenario.limiter.k_vi = designed.k_vi;
    scenario.limiter.alpha_vi = designed.alpha_vi;
    return scenario;
}

} // namespace gfmswing
