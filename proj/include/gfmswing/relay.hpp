#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gfmswing/phasor.hpp"

namespace gfmswing {

/// Directional mho circle through the origin with diameter `reach`.
struct MhoZone
{
    Phasor reach;
    double time_delay = 0.0; ///< s

    bool operator==(const MhoZone&) const = default;
};

/// Quadrilateral bounded by two tilted resistive blinders and two reactance reaches.
struct Blinder
{
    double rgt = 0.0;
    double lft = 0.0;
    double fwd = 0.0;
    double rev = 0.0;
    double tilt = 0.0; ///< angle of the resistive blinders, rad

    bool operator==(const Blinder&) const = default;
};

inline constexpr int kZoneCount = 3;

struct RelaySettings
{
    std::array<MhoZone, kZoneCount> zones;
    Blinder outer;
    Blinder middle;
    Blinder inner;
    double psb_cycles = 2.0;
    double f_nominal = 60.0;

    /// Distance and power-swing settings of the reference test system.
    static RelaySettings reference();

    /// Every reach and blinder scaled by `factor` (used when the protected line changes length).
    RelaySettings scaled(double factor) const;

    /// Outer-to-middle transit time above which a swing is declared, s.
    double psb_time() const { return psb_cycles / f_nominal; }

    std::vector<std::string> violations() const;

    bool operator==(const RelaySettings&) const = default;
};

bool mho_contains(Phasor z, const MhoZone& zone);

/// u = R - X cot(tilt) within [lft, rgt] and X within [rev, fwd]; closed boundaries.
bool blinder_contains(Phasor z, const Blinder& b);

enum class RelayEventKind {
    OuterEntry,
    OuterExit,
    MiddleEntry,
    InnerEntry,
    FaultDetected, ///< outer-to-middle transit faster than the PSB timer
    PsbAssert,
    PsbReset,
    OstTrip,
    ZoneEntry,
    ZoneExit,
    ZoneTrip,
};

std::string_view to_string(RelayEventKind kind);

struct RelayEvent
{
    double t = 0.0;
    RelayEventKind kind = RelayEventKind::OuterEntry;
    int id = 0; ///< zone number (1..3) for zone events, 0 otherwise

    bool operator==(const RelayEvent&) const = default;
};

struct RelayState
{
    std::array<double, kZoneCount> zone_timers{}; ///< s spent inside each zone, reset on exit
    std::array<bool, kZoneCount> in_zone{};
    std::array<bool, kZoneCount> zone_tripped{};
    std::optional<double> outer_entry_time;
    bool in_outer = false;
    bool in_middle = false;
    bool in_inner = false;
    bool psb_asserted = false;
    bool ost_tripped = false;
    std::vector<RelayEvent> event_log;

    bool any_zone_tripped() const;
};

/// Advances the relay by one sample of apparent impedance.
///
/// `z` empty means no measurable current (impedance at infinity).
RelayState relay_step(RelayState state, std::optional<Phasor> z, double t, double dt, const RelaySettings& settings);

/// Events that are not pure geometry transitions (trips, PSB assert/reset, fault detections).
std::vector<RelayEvent> decision_events(const std::vector<RelayEvent>& log);

} // namespace gfmswing
