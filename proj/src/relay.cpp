#include "gfmswing/relay.hpp"

#include <cmath>
#include <string>

namespace gfmswing {

RelaySettings RelaySettings::reference()
{
    const double line_angle = 84.29;
    const double blinder_tilt = deg_to_rad(84.94);
    RelaySettings s;
    s.zones = {
        MhoZone{from_polar_deg(0.48, line_angle), 0.0},
        MhoZone{from_polar_deg(0.72, line_angle), 0.5},
        MhoZone{from_polar_deg(1.20, line_angle), 1.0},
    };
    s.outer = {0.84, -0.84, 1.88, -0.56, blinder_tilt};
    s.middle = {0.61, -0.61, 1.57, -0.47, blinder_tilt};
    s.inner = {0.25, -0.25, 1.31, -0.39, blinder_tilt};
    s.psb_cycles = 2.0;
    s.f_nominal = 60.0;
    return s;
}

RelaySettings RelaySettings::scaled(double factor) const
{
    RelaySettings s = *this;
    for (auto& zone : s.zones) {
        zone.reach *= factor;
    }
    for (Blinder* b : {&s.outer, &s.middle, &s.inner}) {
        b->rgt *= factor;
        b->lft *= factor;
        b->fwd *= factor;
        b->rev *= factor;
    }
    return s;
}

std::vector<std::string> RelaySettings::violations() const
{
    std::vector<std::string> out;
    for (int i = 0; i < kZoneCount; ++i) {
        const auto& zone = zones[static_cast<std::size_t>(i)];
        if (!(std::abs(zone.reach) > 0.0)) {
            out.push_back("relay.zones[" + std::to_string(i) + "].reach must be non-zero");
        }
        if (!(zone.time_delay >= 0.0)) {
            out.push_back("relay.zones[" + std::to_string(i) + "].delay must be non-negative");
        }
    }
    const std::pair<const char*, const Blinder*> blinders[] = {
        {"outer", &outer}, {"middle", &middle}, {"inner", &inner}};
    for (const auto& [name, b] : blinders) {
        const std::string prefix = std::string("relay.blinders.") + name;
        if (!(b->lft < 0.0 && 0.0 < b->rgt)) {
            out.push_back(prefix + " requires lft < 0 < rgt");
        }
        if (!(b->rev < 0.0 && 0.0 < b->fwd)) {
            out.push_back(prefix + " requires rev < 0 < fwd");
        }
        if (!(b->tilt > 0.0 && b->tilt <= 0.5 * kPi)) {
            out.push_back(prefix + " tilt must lie in (0, 90] degrees");
        }
    }
    if (!(psb_cycles > 0.0)) {
        out.emplace_back("relay.psb_cycles must be positive");
    }
    if (!(f_nominal > 0.0)) {
        out.emplace_back("relay.f_nominal must be positive");
    }
    return out;
}

bool mho_contains(Phasor z, const MhoZone& zone)
{
    const Phasor center = 0.5 * zone.reach;
    return std::abs(z - center) <= 0.5 * std::abs(zone.reach);
}

bool blinder_contains(Phasor z, const Blinder& b)
{
    const double x = z.imag();
    const double u = z.real() - x * (std::cos(b.tilt) / std::sin(b.tilt));
    return u >= b.lft && u <= b.rgt && x >= b.rev && x <= b.fwd;
}

std::string_view to_string(RelayEventKind kind)
{
    switch (kind) {
    case RelayEventKind::OuterEntry:
        return "outer_entry";
    case RelayEventKind::OuterExit:
        return "outer_exit";
    case RelayEventKind::MiddleEntry:
        return "middle_entry";
    case RelayEventKind::InnerEntry:
        return "inner_entry";
    case RelayEventKind::FaultDetected:
        return "fault_detected";
    case RelayEventKind::PsbAssert:
        return "psb_assert";
    case RelayEventKind::PsbReset:
        return "psb_reset";
    case RelayEventKind::OstTrip:
        return "ost_trip";
    case RelayEventKind::ZoneEntry:
        return "zone_entry";
    case RelayEventKind::ZoneExit:
        return "zone_exit";
    case RelayEventKind::ZoneTrip:
        return "zone_trip";
    }
    return "unknown";
}

bool RelayState::any_zone_tripped() const
{
    for (bool tripped : zone_tripped) {
        if (tripped) {
            return true;
        }
    }
    return false;
}

RelayState relay_step(RelayState state, std::optional<Phasor> z, double t, double dt, const RelaySettings& settings)
{
    auto log = [&](RelayEventKind kind, int id = 0) { state.event_log.push_back({t, kind, id}); };

    const bool measurable = z.has_value() && std::isfinite(z->real()) && std::isfinite(z->imag());
    const bool outer = measurable && blinder_contains(*z, settings.outer);
    const bool middle = measurable && blinder_contains(*z, settings.middle);
    const bool inner = measurable && blinder_contains(*z, settings.inner);

    // power swing blocking: outer -> middle transit timing
    if (outer && !state.in_outer) {
        state.outer_entry_time = t;
        log(RelayEventKind::OuterEntry);
    }
    if (middle && !state.in_middle) {
        log(RelayEventKind::MiddleEntry);
        const double transit = state.outer_entry_time ? t - *state.outer_entry_time : 0.0;
        if (!state.psb_asserted) {
            if (transit > settings.psb_time()) {
                state.psb_asserted = true;
                log(RelayEventKind::PsbAssert);
            } else {
                log(RelayEventKind::FaultDetected);
            }
        }
    }
    if (inner && !state.in_inner) {
        log(RelayEventKind::InnerEntry);
        if (state.psb_asserted) {
            state.ost_tripped = true;
            log(RelayEventKind::OstTrip);
        }
    }
    if (!outer && state.in_outer) {
        log(RelayEventKind::OuterExit);
        state.outer_entry_time.reset();
        if (state.psb_asserted) {
            state.psb_asserted = false;
            log(RelayEventKind::PsbReset);
        }
    }
    state.in_outer = outer;
    state.in_middle = middle;
    state.in_inner = inner;

    // distance zones, all blocked while PSB is asserted
    for (std::size_t i = 0; i < settings.zones.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        const bool inside = measurable && mho_contains(*z, settings.zones[i]);
        if (inside && !state.in_zone[i]) {
            log(RelayEventKind::ZoneEntry, id);
            state.zone_timers[i] = 0.0;
        } else if (inside) {
            state.zone_timers[i] += dt;
        } else if (state.in_zone[i]) {
            log(RelayEventKind::ZoneExit, id);
            state.zone_timers[i] = 0.0;
        }
        state.in_zone[i] = inside;

        if (state.psb_asserted) {
            state.zone_timers[i] = 0.0;
            continue;
        }
        // 1e-9 s slack on the accumulated dt sums
        if (inside && !state.zone_tripped[i] && state.zone_timers[i] >= settings.zones[i].time_delay - 1e-9) {
            state.zone_tripped[i] = true;
            log(RelayEventKind::ZoneTrip, id);
        }
    }
    return state;
}

std::vector<RelayEvent> decision_events(const std::vector<RelayEvent>& log)
{
    std::vector<RelayEvent> out;
    for (const auto& e : log) {
        switch (e.kind) {
        case RelayEventKind::FaultDetected:
        case RelayEventKind::PsbAssert:
        case RelayEventKind::PsbReset:
        case RelayEventKind::OstTrip:
        case RelayEventKind::ZoneTrip:
            out.push_back(e);
            break;
        default:
            break;
        }
    }
    return out;
}

} // namespace gfmswing
