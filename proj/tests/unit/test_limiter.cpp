#include <doctest.h>

#include <random>

#include "gfmswing/errors.hpp"
#include "gfmswing/limiter.hpp"
#include "oracles.hpp"

using namespace gfmswing;

namespace {

// Closed loop at a frozen angle: PI drives the adaptive gain, the implicit solve gives |I|.
double adaptive_settle(double delta, const SystemParams& p, int steps, double dt = 5e-4)
{
    const auto cfg = LimiterConfig::for_system(Strategy::AdaptiveVI, p);
    AdaptiveState state;
    double mag = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double gain = gain_from_voltage_drop(state.delta_v, p.i_max, p.i_th, p.alpha_vi);
        mag = solve_variable_vi_current(delta, p, gain).magnitude;
        state = adaptive_vi_step(state, mag, dt, cfg, p.i_max);
    }
    return mag;
}

} // namespace

TEST_CASE("strategy names")
{
    for (Strategy s : {Strategy::None, Strategy::VariableVI, Strategy::AdaptiveVI}) {
        CHECK(parse_strategy(to_string(s)) == s);
    }
    CHECK_THROWS_AS(parse_strategy("fixed"), std::invalid_argument);
}

TEST_CASE("variable_vi_gain")
{
    const auto p = SystemParams::reference();
    const oracle::Reference ref;
    const double expected = 1.0 / (0.2 * 1.2 * std::sqrt(1.0 + ref.alpha() * ref.alpha()));
    CHECK(variable_vi_gain(p) == doctest::Approx(expected).epsilon(1e-12));
    // 0.3675 results from alpha = tan(84.94 deg), the angle rounded to two decimals
    CHECK(variable_vi_gain(p) == doctest::Approx(0.3675).epsilon(2e-3));

    SystemParams q = p;
    q.alpha_vi = 0.0;
    q.i_max = 2.0;
    q.i_th = 1.0;
    CHECK(variable_vi_gain(q) == doctest::Approx(0.5));

    q.i_max = 1.0;
    CHECK_THROWS_AS(variable_vi_gain(q), InvalidThresholds);
}

TEST_CASE("vi_from_current")
{
    CHECK_FALSE(vi_from_current(1.0, 0.3675, 11.295, 1.0).active());
    CHECK(vi_from_current(0.5, 0.3675, 11.295, 1.0).r_vi == 0.0);
    const auto vi = vi_from_current(1.2, 0.3675, 11.295, 1.0);
    CHECK(vi.r_vi == doctest::Approx(0.0735));
    CHECK(vi.x_vi == doctest::Approx(0.8302).epsilon(1e-4));
}

TEST_CASE("vi_reference_update")
{
    CHECK(vi_reference_update({}, {0.3, -0.7}, {1.0, 0.0}) == Phasor{1.0, 0.0});
    CHECK(std::abs(vi_reference_update({1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0})) < 1e-15);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const ViValue vi{pos(rng), pos(rng)};
        const Phasor cur{u(rng), u(rng)}, e{u(rng), u(rng)};
        CHECK(std::abs(vi_reference_update(vi, cur, e) - (e - vi.impedance() * cur)) < 1e-12);
    }
}

TEST_CASE("VI voltage drop magnitude identity")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> mag(1.0, 3.0), ang(-kPi, kPi), gain(0.0, 1.0), alpha(0.0, 20.0);
    for (int i = 0; i < 1000; ++i) {
        const double m = mag(rng), k = gain(rng), a = alpha(rng);
        const Phasor cur = from_polar(m, ang(rng));
        const auto vi = vi_from_current(m, k, a, 1.0);
        const double expected = k * (m - 1.0) * m * std::sqrt(1.0 + a * a);
        CHECK(std::abs(std::abs(vi_voltage_drop(vi, cur)) - expected) < 1e-12);
    }
}

TEST_CASE("solve_variable_vi_current")
{
    const auto p = SystemParams::reference();
    const oracle::Reference ref;
    const double k = variable_vi_gain(p);

    SUBCASE("zero angle carries no current")
    {
        const auto r = solve_variable_vi_current(0.0, p, k);
        CHECK(r.magnitude < 1e-12);
        CHECK_FALSE(r.vi.active());
    }
    SUBCASE("activation boundary")
    {
        const double d_th = critical_angle(p, p.i_th);
        const auto r = solve_variable_vi_current(d_th, p, k);
        CHECK(r.magnitude == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.vi.r_vi < 1e-8);
    }
    SUBCASE("bisection oracle across the active set")
    {
        for (int i = 1; i < 200; ++i) {
            const double d = kTwoPi * i / 200.0;
            const double expected =
                oracle::variable_vi_magnitude(ref.e - ref.grid(d), ref.z_sum(), k, ref.alpha(), ref.i_th);
            const auto r = solve_variable_vi_current(d, p, k);
            CHECK(r.magnitude == doctest::Approx(expected).epsilon(1e-9));
            // the reported solution is self-consistent
            CHECK(std::abs(r.solution.current) == doctest::Approx(r.magnitude).epsilon(1e-12));
        }
        const double at_pi = oracle::variable_vi_magnitude(ref.e - ref.grid(kPi), ref.z_sum(), k, ref.alpha(), 1.0);
        CHECK(solve_variable_vi_current(kPi, p, k).magnitude == doctest::Approx(at_pi).epsilon(1e-10));
    }
    SUBCASE("continuity at the activation boundary")
    {
        const double d_th = critical_angle(p, p.i_th);
        const double left = solve_variable_vi_current(d_th - 1e-9, p, k).magnitude;
        const double right = solve_variable_vi_current(d_th + 1e-9, p, k).magnitude;
        CHECK(std::abs(left - right) < 1e-6);
    }
    SUBCASE("bolted terminal fault is held at I_max")
    {
        Circuit bolted{p.e_ref, 0.0, 0.0, 0.0};
        const auto r = solve_limited_current(bolted, k, p.alpha_vi, p.i_th);
        CHECK(std::abs(r.magnitude - p.i_max) < 1e-6);
        CHECK_THROWS_AS(solve_limited_current(bolted, 0.0, p.alpha_vi, p.i_th), DegenerateCircuit);
    }
    SUBCASE("zero gain returns the unlimited current")
    {
        const auto r = solve_variable_vi_current(kPi, p, 0.0);
        CHECK(r.magnitude == doctest::Approx(std::abs(ref.current(kPi))).epsilon(1e-12));
    }
}

TEST_CASE("adaptive_vi_step")
{
    const auto p = SystemParams::reference();
    const auto cfg = LimiterConfig::for_system(Strategy::AdaptiveVI, p);

    SUBCASE("idle below I_max")
    {
        const auto s = adaptive_vi_step({}, 1.1, 5e-4, cfg, p.i_max);
        CHECK(s.delta_v == 0.0);
        CHECK(s.integrator == 0.0);
    }
    SUBCASE("persistent overcurrent raises the output monotonically until the clamp")
    {
        AdaptiveState s;
        double last = 0.0;
        for (int i = 0; i < 10000; ++i) {
            s = adaptive_vi_step(s, 1.5, 5e-4, cfg, p.i_max);
            CHECK(s.delta_v >= last);
            last = s.delta_v;
        }
        CHECK(s.delta_v == doctest::Approx(cfg.delta_v_max));
        CHECK(s.integrator <= cfg.delta_v_max);
    }
    SUBCASE("clamped integrator unwinds immediately")
    {
        AdaptiveState s{cfg.delta_v_max, cfg.delta_v_max};
        s = adaptive_vi_step(s, 1.19, 5e-4, cfg, p.i_max);
        CHECK(s.delta_v < cfg.delta_v_max);
    }
    SUBCASE("closed loop settles at I_max in the active set")
    {
        for (double d : {1.6, 2.2, kPi, 4.0, 4.6}) {
            CHECK(std::abs(adaptive_settle(d, p, 4000) - p.i_max) < 1e-6);
        }
    }
}

TEST_CASE("critical_angle")
{
    const auto p = SystemParams::reference();
    const oracle::Reference ref;
    CHECK(critical_angle(p, 1.0) == doctest::Approx(oracle::scan_crossing(ref, 1.0, 1000000)).epsilon(1e-6));
    CHECK(critical_angle(p, 1.2) == doctest::Approx(oracle::scan_crossing(ref, 1.2, 1000000)).epsilon(1e-6));
    CHECK(rad_to_deg(critical_angle(p, 1.0)) == doctest::Approx(63.98).epsilon(1e-4));
    CHECK(rad_to_deg(critical_angle(p, 1.2)) == doctest::Approx(78.95).epsilon(1e-4));

    SystemParams q = p;
    q.z_g = 2.0 / std::abs(total_impedance(p)) * p.z_g;
    q.z_l = 2.0 / std::abs(total_impedance(p)) * p.z_l;
    q.z_tr = 2.0 / std::abs(total_impedance(p)) * p.z_tr;
    CHECK(critical_angle(q, 1.0) == doctest::Approx(kPi));

    try {
        critical_angle(p, 5.0);
        FAIL("expected CriticalAngleError");
    } catch (const CriticalAngleError& e) {
        CHECK(e.kind() == CriticalAngleError::Kind::Unreachable);
    }
    try {
        SystemParams weak = p;
        weak.v_g_mag = 0.5; // minimum current 0.5 / |Z| exceeds 0.4
        critical_angle(weak, 0.4);
        FAIL("expected CriticalAngleError");
    } catch (const CriticalAngleError& e) {
        CHECK(e.kind() == CriticalAngleError::Kind::AlwaysExceeded);
    }
}

TEST_CASE("activation_sets")
{
    const auto p = SystemParams::reference();
    const auto var = activation_sets(p, Strategy::VariableVI);
    const auto ad = activation_sets(p, Strategy::AdaptiveVI);
    CHECK(rad_to_deg(var.boundary) == doctest::Approx(63.98).epsilon(1e-4));
    CHECK(rad_to_deg(ad.boundary) == doctest::Approx(78.95).epsilon(1e-4));
    CHECK(var.is_active(kPi));
    CHECK(ad.is_active(kPi));
    CHECK(var.is_inactive(var.boundary));
    CHECK(var.is_inactive(0.1));
    CHECK(var.is_inactive(kTwoPi - 0.1));
    CHECK(var.is_active(kPi + kTwoPi)); // unwrapped angles wrap
    CHECK(var.active_end() == doctest::Approx(kTwoPi - var.boundary));
    CHECK_THROWS_AS(activation_sets(p, Strategy::None), std::invalid_argument);
}
