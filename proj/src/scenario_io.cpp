#include "gfmswing/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "gfmswing/errors.hpp"

namespace gfmswing {

using json = nlohmann::json;

namespace {

/// Typed access to a JSON object that remembers its dotted path for error messages.
class Fields
{
  public:
    Fields(const json& object, std::string path, std::string_view text)
        : object_(object), path_(std::move(path)), text_(text)
    {
        if (!object_.is_object()) {
            fail(path_, "expected an object");
        }
    }

    void allow_only(std::initializer_list<std::string_view> keys) const
    {
        for (const auto& [key, value] : object_.items()) {
            if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
                fail(child(key), "unknown field");
            }
        }
    }

    bool has(const std::string& key) const { return object_.contains(key) && !object_.at(key).is_null(); }

    double number(const std::string& key, double fallback) const
    {
        if (!has(key)) {
            return fallback;
        }
        return number_at(object_.at(key), child(key));
    }

    std::optional<double> optional_number(const std::string& key) const
    {
        if (!has(key)) {
            return std::nullopt;
        }
        return number_at(object_.at(key), child(key));
    }

    std::string string(const std::string& key, const std::string& fallback) const
    {
        if (!has(key)) {
            return fallback;
        }
        const json& v = object_.at(key);
        if (!v.is_string()) {
            fail(child(key), "expected a string");
        }
        return v.get<std::string>();
    }

    /// {"re", "im"}, {"mag", "deg"} or [re, im].
    Phasor phasor(const std::string& key, Phasor fallback) const
    {
        if (!has(key)) {
            return fallback;
        }
        const json& v = object_.at(key);
        const std::string path = child(key);
        if (v.is_array()) {
            if (v.size() != 2) {
                fail(path, "expected [re, im]");
            }
            return {number_at(v[0], path + "[0]"), number_at(v[1], path + "[1]")};
        }
        Fields f(v, path, text_);
        if (f.has("re") || f.has("im")) {
            f.allow_only({"re", "im"});
            return {f.number("re", 0.0), f.number("im", 0.0)};
        }
        f.allow_only({"mag", "deg"});
        if (!f.has("mag")) {
            fail(path, "expected {re, im} or {mag, deg}");
        }
        return from_polar_deg(f.number("mag", 0.0), f.number("deg", 0.0));
    }

    Fields object(const std::string& key) const { return {object_.at(key), child(key), text_}; }

    const json& raw(const std::string& key) const { return object_.at(key); }

    std::string_view text() const { return text_; }

    std::string child(std::string_view key) const
    {
        return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    }

    [[noreturn]] void fail(const std::string& path, const std::string& message) const
    {
        throw ParseError("field '" + path + "': " + message, locate(path), path);
    }

  private:
    double number_at(const json& v, const std::string& path) const
    {
        if (!v.is_number()) {
            fail(path, "expected a number");
        }
        return v.get<double>();
    }

    /// Best-effort line of the last path component in the source text.
    std::size_t locate(const std::string& path) const
    {
        std::string key = path.substr(path.find_last_of('.') + 1);
        key = key.substr(0, key.find('['));
        const auto pos = text_.find("\"" + key + "\"");
        if (pos == std::string_view::npos) {
            return 0;
        }
        return 1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + static_cast<long>(pos), '\n'));
    }

    const json& object_;
    std::string path_;
    std::string_view text_;
};

SystemParams read_system(const Fields& f)
{
    f.allow_only({"e_ref", "v_g", "z_g", "z_l", "z_tr", "i_max", "i_th", "alpha_vi", "f_nominal"});
    const SystemParams defaults = SystemParams::reference();
    SystemParams s;
    s.e_ref = f.phasor("e_ref", defaults.e_ref);
    s.v_g_mag = f.number("v_g", defaults.v_g_mag);
    s.z_g = f.phasor("z_g", defaults.z_g);
    s.z_l = f.phasor("z_l", defaults.z_l);
    s.z_tr = f.phasor("z_tr", defaults.z_tr);
    s.i_max = f.number("i_max", defaults.i_max);
    s.i_th = f.number("i_th", defaults.i_th);
    s.f_nominal = f.number("f_nominal", defaults.f_nominal);
    s.alpha_vi = f.optional_number("alpha_vi").value_or(matched_alpha(s));
    return s;
}

ApclParams read_apcl(const Fields& f, const SystemParams& system)
{
    f.allow_only({"h", "d_p", "p0", "omega0", "omega_n", "freq_clamp"});
    const ApclParams defaults;
    ApclParams a;
    a.h = f.number("h", defaults.h);
    a.d_p = f.number("d_p", defaults.d_p);
    a.p0 = f.number("p0", defaults.p0);
    a.omega0 = f.number("omega0", defaults.omega0);
    a.omega_n = f.number("omega_n", kTwoPi * system.f_nominal);
    a.freq_clamp = f.number("freq_clamp", defaults.freq_clamp);
    return a;
}

LimiterConfig read_limiter(const Fields& f, const SystemParams& system)
{
    f.allow_only({"strategy", "k_vi", "alpha_vi", "kp", "ki", "delta_v_max"});
    LimiterConfig cfg;
    try {
        cfg.strategy = parse_strategy(f.string("strategy", "none"));
    } catch (const std::invalid_argument& e) {
        f.fail(f.child("strategy"), e.what());
    }
    cfg.alpha_vi = f.number("alpha_vi", system.alpha_vi);
    if (f.has("k_vi")) {
        cfg.k_vi = f.number("k_vi", 0.0);
    } else {
        try {
            cfg.k_vi = variable_vi_gain(system);
        } catch (const InvalidThresholds&) {
            cfg.k_vi = 0.0; // reported by validation
        }
    }
    const LimiterConfig defaults;
    cfg.kp = f.number("kp", defaults.kp);
    cfg.ki = f.number("ki", defaults.ki);
    cfg.delta_v_max = f.number("delta_v_max", defaults.delta_v_max);
    return cfg;
}

Event read_event(const Fields& f)
{
    const std::string kind = f.string("kind", "");
    Event e;
    if (!f.has("time")) {
        f.fail(f.child("time"), "missing");
    }
    e.time = f.number("time", 0.0);
    if (kind == "phase_jump") {
        f.allow_only({"time", "kind", "angle"});
        e.action = PhaseJump{f.number("angle", 0.0)};
    } else if (kind == "fault_apply") {
        f.allow_only({"time", "kind", "location"});
        e.action = FaultApply{f.number("location", 0.5)};
    } else if (kind == "fault_clear") {
        f.allow_only({"time", "kind"});
        e.action = FaultClear{};
    } else if (kind == "power_step") {
        f.allow_only({"time", "kind", "delta_p"});
        e.action = PowerStep{f.number("delta_p", 0.0)};
    } else {
        f.fail(f.child("kind"), "expected phase_jump, fault_apply, fault_clear or power_step");
    }
    return e;
}

Blinder read_blinder(const Fields& f, const Blinder& fallback)
{
    f.allow_only({"rgt", "lft", "fwd", "rev", "tilt_rad", "tilt_deg"});
    Blinder b;
    b.rgt = f.number("rgt", fallback.rgt);
    b.lft = f.number("lft", fallback.lft);
    b.fwd = f.number("fwd", fallback.fwd);
    b.rev = f.number("rev", fallback.rev);
    b.tilt = fallback.tilt;
    if (f.has("tilt_deg")) {
        b.tilt = deg_to_rad(f.number("tilt_deg", 0.0));
    }
    if (f.has("tilt_rad")) {
        b.tilt = f.number("tilt_rad", 0.0);
    }
    return b;
}

RelaySettings read_relay(const Fields& f, const SystemParams& system)
{
    f.allow_only({"scale", "zones", "blinders", "psb_cycles", "f_nominal"});
    RelaySettings r = RelaySettings::reference().scaled(f.number("scale", 1.0));
    if (f.has("zones")) {
        const json& zones = f.raw("zones");
        if (!zones.is_array() || zones.size() != kZoneCount) {
            f.fail(f.child("zones"), "expected an array of 3 zones");
        }
        for (std::size_t i = 0; i < zones.size(); ++i) {
            const Fields z(zones[i], f.child("zones") + "[" + std::to_string(i) + "]", f.text());
            z.allow_only({"reach", "delay"});
            r.zones[i].reach = z.phasor("reach", r.zones[i].reach);
            r.zones[i].time_delay = z.number("delay", r.zones[i].time_delay);
        }
    }
    if (f.has("blinders")) {
        const Fields b = f.object("blinders");
        b.allow_only({"outer", "middle", "inner"});
        if (b.has("outer")) {
            r.outer = read_blinder(b.object("outer"), r.outer);
        }
        if (b.has("middle")) {
            r.middle = read_blinder(b.object("middle"), r.middle);
        }
        if (b.has("inner")) {
            r.inner = read_blinder(b.object("inner"), r.inner);
        }
    }
    r.psb_cycles = f.number("psb_cycles", r.psb_cycles);
    r.f_nominal = f.number("f_nominal", system.f_nominal);
    return r;
}

json phasor_json(Phasor p)
{
    return json{{"re", p.real()}, {"im", p.imag()}};
}

json blinder_json(const Blinder& b)
{
    return json{{"rgt", b.rgt}, {"lft", b.lft}, {"fwd", b.fwd}, {"rev", b.rev}, {"tilt_rad", b.tilt}};
}

json event_json(const Event& e)
{
    json out{{"time", e.time}};
    if (const auto* j = std::get_if<PhaseJump>(&e.action)) {
        out["kind"] = "phase_jump";
        out["angle"] = j->angle;
    } else if (const auto* f = std::get_if<FaultApply>(&e.action)) {
        out["kind"] = "fault_apply";
        out["location"] = f->location;
    } else if (std::holds_alternative<FaultClear>(e.action)) {
        out["kind"] = "fault_clear";
    } else if (const auto* p = std::get_if<PowerStep>(&e.action)) {
        out["kind"] = "power_step";
        out["delta_p"] = p->delta_p;
    }
    return out;
}

} // namespace

Scenario parse_scenario(std::string_view text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto byte = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
        throw ParseError(std::string("malformed JSON: ") + e.what(), line, "");
    }

    const Fields f(root, "", text);
    f.allow_only({"schema_version", "name", "system", "apcl", "limiter", "events", "horizon", "dt", "relay",
                  "initial_delta", "outputs"});
    if (!f.has("schema_version")) {
        f.fail("schema_version", "missing");
    }
    if (f.number("schema_version", 0.0) != kScenarioSchemaVersion) {
        f.fail("schema_version", "unsupported version (expected " + std::to_string(kScenarioSchemaVersion) + ")");
    }

    Scenario s;
    s.name = f.string("name", s.name);
    s.system = f.has("system") ? read_system(f.object("system")) : SystemParams::reference();
    s.apcl = f.has("apcl") ? read_apcl(f.object("apcl"), s.system) : read_apcl(Fields(json::object(), "apcl", text), s.system);
    s.limiter = f.has("limiter") ? read_limiter(f.object("limiter"), s.system)
                                 : read_limiter(Fields(json::object(), "limiter", text), s.system);
    if (f.has("events")) {
        const json& events = f.raw("events");
        if (!events.is_array()) {
            f.fail("events", "expected an array");
        }
        for (std::size_t i = 0; i < events.size(); ++i) {
            s.events.push_back(read_event(Fields(events[i], "events[" + std::to_string(i) + "]", text)));
        }
    }
    s.horizon = f.number("horizon", s.horizon);
    s.dt = f.number("dt", s.dt);
    s.relay = f.has("relay") ? read_relay(f.object("relay"), s.system)
                             : read_relay(Fields(json::object(), "relay", text), s.system);
    s.initial_delta = f.optional_number("initial_delta");
    s.outputs = f.string("outputs", s.outputs);

    s.validate();
    return s;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open scenario file " + path.string(), 0, "");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& s)
{
    json zones = json::array();
    for (const auto& z : s.relay.zones) {
        zones.push_back(json{{"reach", phasor_json(z.reach)}, {"delay", z.time_delay}});
    }
    json events = json::array();
    for (const auto& e : s.events) {
        events.push_back(event_json(e));
    }
    json root{
        {"schema_version", kScenarioSchemaVersion},
        {"name", s.name},
        {"system",
         {{"e_ref", phasor_json(s.system.e_ref)},
          {"v_g", s.system.v_g_mag},
          {"z_g", phasor_json(s.system.z_g)},
          {"z_l", phasor_json(s.system.z_l)},
          {"z_tr", phasor_json(s.system.z_tr)},
          {"i_max", s.system.i_max},
          {"i_th", s.system.i_th},
          {"alpha_vi", s.system.alpha_vi},
          {"f_nominal", s.system.f_nominal}}},
        {"apcl",
         {{"h", s.apcl.h},
          {"d_p", s.apcl.d_p},
          {"p0", s.apcl.p0},
          {"omega0", s.apcl.omega0},
          {"omega_n", s.apcl.omega_n},
          {"freq_clamp", s.apcl.freq_clamp}}},
        {"limiter",
         {{"strategy", std::string(to_string(s.limiter.strategy))},
          {"k_vi", s.limiter.k_vi},
          {"alpha_vi", s.limiter.alpha_vi},
          {"kp", s.limiter.kp},
          {"ki", s.limiter.ki},
          {"delta_v_max", s.limiter.delta_v_max}}},
        {"events", events},
        {"horizon", s.horizon},
        {"dt", s.dt},
        {"relay",
         {{"zones", zones},
          {"blinders",
           {{"outer", blinder_json(s.relay.outer)},
            {"middle", blinder_json(s.relay.middle)},
            {"inner", blinder_json(s.relay.inner)}}},
          {"psb_cycles", s.relay.psb_cycles},
          {"f_nominal", s.relay.f_nominal}}},
        {"outputs", s.outputs},
    };
    if (s.initial_delta) {
        root["initial_delta"] = *s.initial_delta;
    }
    return root.dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path)
{
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    out << serialize_scenario(scenario);
    if (!out) {
        throw std::runtime_error("cannot write scenario file " + path.string());
    }
}

} // namespace gfmswing
