#include <doctest.h>

#include <algorithm>
#include <random>

#include "gfmswing/relay.hpp"

using namespace gfmswing;

namespace {

constexpr double kDt = 5e-4;
const Phasor kLoad{1.5, 0.3};

struct Run
{
    RelayState state;
    double t = 0.0;

    void feed(std::optional<Phasor> z, const RelaySettings& s)
    {
        state = relay_step(std::move(state), z, t, kDt, s);
        t += kDt;
    }
    void hold(Phasor z, double seconds, const RelaySettings& s)
    {
        for (int i = 0, n = static_cast<int>(seconds / kDt); i < n; ++i) {
            feed(z, s);
        }
    }
    // straight-line ramp from a to b in `seconds`
    void ramp(Phasor a, Phasor b, double seconds, const RelaySettings& s)
    {
        const int n = static_cast<int>(seconds / kDt);
        for (int i = 0; i <= n; ++i) {
            feed(a + (b - a) * (static_cast<double>(i) / n), s);
        }
    }
    bool has(RelayEventKind kind, int id = -1) const
    {
        return std::any_of(state.event_log.begin(), state.event_log.end(),
                           [&](const RelayEvent& e) { return e.kind == kind && (id < 0 || e.id == id); });
    }
};

// Along X = 0.2 the resistive coordinate u moves at the ramp speed, so the outer
// (u = 0.84) to middle (u = 0.61) transit takes 0.23 / speed.
Run swing_ramp(double transit, const RelaySettings& s)
{
    const double speed = 0.23 / transit;
    const double x = 0.2;
    const double cot = std::cos(s.outer.tilt) / std::sin(s.outer.tilt);
    const Phasor start{1.2 + x * cot, x};
    const Phasor stop{0.0 + x * cot, x};
    Run run;
    run.hold(kLoad, 0.05, s);
    run.ramp(start, stop, 1.2 / speed, s);
    return run;
}

bool ost_only_after_psb(const std::vector<RelayEvent>& log)
{
    bool blocked = false;
    for (const auto& e : log) {
        if (e.kind == RelayEventKind::PsbAssert) {
            blocked = true;
        } else if (e.kind == RelayEventKind::PsbReset) {
            blocked = false;
        } else if (e.kind == RelayEventKind::OstTrip && !blocked) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("mho_contains")
{
    const MhoZone zone{from_polar_deg(0.48, 84.29), 0.0};
    CHECK(mho_contains(zone.reach / 2.0, zone));
    CHECK(mho_contains(0.0, zone));
    CHECK(mho_contains(zone.reach, zone));
    CHECK_FALSE(mho_contains(1.1 * zone.reach, zone));
    CHECK_FALSE(mho_contains(-0.1 * zone.reach, zone));
}

TEST_CASE("blinder_contains")
{
    const auto s = RelaySettings::reference();
    for (const Blinder* b : {&s.outer, &s.middle, &s.inner}) {
        CHECK(blinder_contains(0.0, *b));
    }
    const Phasor z{0.0, 0.5};
    const double u = z.real() - z.imag() / std::tan(s.inner.tilt);
    CHECK(u == doctest::Approx(-0.0443).epsilon(1e-2));
    CHECK(blinder_contains(z, s.inner));
    CHECK_FALSE(blinder_contains({1.0, 0.0}, s.outer));
    CHECK(blinder_contains({0.84, 0.0}, s.outer)); // closed boundary
    CHECK_FALSE(blinder_contains({0.0, 1.9}, s.outer));
    CHECK_FALSE(blinder_contains({0.0, -0.6}, s.outer));
}

TEST_CASE("settings")
{
    const auto s = RelaySettings::reference();
    CHECK(s.violations().empty());
    CHECK(s.psb_time() == doctest::Approx(2.0 / 60.0));
    CHECK(s.scaled(1.0) == s);

    const auto half = s.scaled(0.5);
    CHECK(half.outer.rev == doctest::Approx(-0.28));
    CHECK(std::abs(half.zones[2].reach) == doctest::Approx(0.6));
    CHECK(half.outer.tilt == s.outer.tilt);

    RelaySettings bad = s;
    bad.inner.lft = 0.1;
    bad.zones[1].reach = 0.0;
    bad.psb_cycles = 0.0;
    CHECK(bad.violations().size() == 3);
}

TEST_CASE("blinders are nested")
{
    const auto s = RelaySettings::reference();
    int inner_points = 0;
    for (int i = 0; i <= 400; ++i) {
        for (int j = 0; j <= 400; ++j) {
            const Phasor z{-1.0 + 2.0 * i / 400.0, -0.8 + 3.0 * j / 400.0};
            if (blinder_contains(z, s.inner)) {
                ++inner_points;
                CHECK(blinder_contains(z, s.middle));
            }
            if (blinder_contains(z, s.middle)) {
                CHECK(blinder_contains(z, s.outer));
            }
        }
    }
    CHECK(inner_points > 1000);
}

TEST_CASE("fault step trips zone 1 without blocking")
{
    const auto s = RelaySettings::reference();
    Run run;
    run.hold(kLoad, 0.1, s);
    run.hold(0.5 * s.zones[0].reach, 0.05, s);
    CHECK(run.has(RelayEventKind::ZoneTrip, 1));
    CHECK(run.has(RelayEventKind::FaultDetected));
    CHECK_FALSE(run.has(RelayEventKind::PsbAssert));
    CHECK_FALSE(run.has(RelayEventKind::ZoneTrip, 2));

    // zone 2 needs its 0.5 s delay
    run.hold(0.5 * s.zones[0].reach, 0.5, s);
    CHECK(run.has(RelayEventKind::ZoneTrip, 2));
    CHECK_FALSE(run.has(RelayEventKind::ZoneTrip, 3));
}

TEST_CASE("slow swing asserts PSB, blocks zones and trips out of step")
{
    const auto s = RelaySettings::reference();
    Run run = swing_ramp(0.1, s);
    CHECK(run.has(RelayEventKind::PsbAssert));
    CHECK_FALSE(run.has(RelayEventKind::FaultDetected));
    CHECK(run.has(RelayEventKind::OstTrip));
    CHECK(run.state.psb_asserted);

    // dwelling inside every zone while blocked never trips
    run.hold(0.1 * s.zones[0].reach, 2.0, s);
    CHECK_FALSE(run.has(RelayEventKind::ZoneTrip));
    CHECK(run.has(RelayEventKind::ZoneEntry, 1));

    // leaving the outer blinder releases the block
    run.hold(kLoad, 0.01, s);
    CHECK(run.has(RelayEventKind::PsbReset));
    CHECK_FALSE(run.state.psb_asserted);
}

TEST_CASE("fast transit is treated as a fault")
{
    const auto s = RelaySettings::reference();
    Run run = swing_ramp(0.01, s);
    CHECK_FALSE(run.has(RelayEventKind::PsbAssert));
    CHECK(run.has(RelayEventKind::FaultDetected));
    CHECK_FALSE(run.has(RelayEventKind::OstTrip));
}

TEST_CASE("zero current leaves every characteristic")
{
    const auto s = RelaySettings::reference();
    Run run = swing_ramp(0.1, s);
    run.feed(std::nullopt, s);
    CHECK_FALSE(run.state.in_outer);
    CHECK_FALSE(run.state.in_zone[0]);
    CHECK_FALSE(run.state.psb_asserted);
}

TEST_CASE("random streams: determinism and no OST without PSB")
{
    const auto s = RelaySettings::reference();
    std::mt19937_64 rng(17);
    std::normal_distribution<double> jitter(0.0, 0.02);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::optional<Phasor>> stream;
        Phasor z = kLoad;
        for (int i = 0; i < 20000; ++i) {
            z += Phasor{jitter(rng), jitter(rng)};
            z = {std::clamp(z.real(), -2.0, 2.0), std::clamp(z.imag(), -1.0, 2.5)};
            stream.push_back(i % 997 == 0 ? std::nullopt : std::optional<Phasor>(z));
        }
        auto replay = [&] {
            Run run;
            for (const auto& x : stream) {
                run.feed(x, s);
            }
            return run.state.event_log;
        };
        const auto first = replay();
        CHECK(first == replay());
        CHECK(ost_only_after_psb(first));
    }
}

TEST_CASE("decision events")
{
    const auto s = RelaySettings::reference();
    const auto log = swing_ramp(0.1, s).state.event_log;
    for (const auto& e : decision_events(log)) {
        CHECK(e.kind != RelayEventKind::OuterEntry);
        CHECK(e.kind != RelayEventKind::ZoneEntry);
    }
    CHECK(to_string(RelayEventKind::OstTrip) == "ost_trip");
}
