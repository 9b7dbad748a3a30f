#include "gfmswing/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <thread>

#include <json.hpp>

#include "gfmswing/cases.hpp"
#include "gfmswing/errors.hpp"
#include "gfmswing/scenario_io.hpp"

namespace gfmswing {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::ofstream open_output(const fs::path& path)
{
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

json boundary_angles(const SystemParams& params)
{
    json out = json::object();
    auto add = [&](const char* key, double level) {
        try {
            const double a = critical_angle(params, level);
            out[key] = {{"rad", a}, {"deg", rad_to_deg(a)}};
        } catch (const CriticalAngleError& e) {
            out[key] = {{"error", e.what()}};
        }
    };
    add("delta_th", params.i_th);
    add("delta_lim", params.i_max);
    return out;
}

json verdict_json(const StabilityVerdict& v)
{
    return {{"classification", std::string(to_string(v.classification))},
            {"max_delta_excursion", v.max_delta_excursion},
            {"pole_slips", v.pole_slips}};
}

json events_json(const std::vector<RelayEvent>& events)
{
    json out = json::array();
    for (const auto& e : events) {
        out.push_back({{"t", e.t}, {"event", std::string(to_string(e.kind))}, {"id", e.id}});
    }
    return out;
}

void write_summary(const json& summary, const fs::path& dir)
{
    auto out = open_output(dir / "summary.json");
    out << summary.dump(2) << "\n";
}

double first_power_step(const Scenario& s)
{
    for (const auto& e : s.events) {
        if (const auto* p = std::get_if<PowerStep>(&e.action)) {
            return p->delta_p;
        }
    }
    return 0.0;
}

int simulate(const Scenario& scenario, const fs::path& dir, std::ostream& out)
{
    const SimulationRecord record = run_scenario(scenario);
    write_record_csv(record, dir / "record.csv");
    write_relay_events_csv(record.relay_events, dir / "relay_events.csv");

    json summary{{"command", "simulate"},
                 {"name", scenario.name},
                 {"strategy", std::string(to_string(scenario.limiter.strategy))},
                 {"samples", record.size()},
                 {"boundary_angles", boundary_angles(scenario.system)},
                 {"relay_events", events_json(decision_events(record.relay_events))}};
    try {
        const auto verdict = classify_stability(record);
        summary["verdict"] = verdict_json(verdict);
        out << scenario.name << " (" << to_string(scenario.limiter.strategy)
            << "): " << to_string(verdict.classification) << ", pole slips " << verdict.pole_slips << "\n";
    } catch (const InsufficientHorizon& e) {
        summary["verdict"] = {{"error", e.what()}};
        out << scenario.name << ": no verdict (" << e.what() << ")\n";
    }
    write_summary(summary, dir);
    return 0;
}

int trajectory(const Scenario& scenario, int samples, const fs::path& dir, std::ostream& out)
{
    const auto points = full_cycle(scenario.limiter.strategy, scenario.system, samples);
    write_trajectory_csv(points, dir / "trajectory.csv");
    write_summary({{"command", "trajectory"},
                   {"name", scenario.name},
                   {"strategy", std::string(to_string(scenario.limiter.strategy))},
                   {"samples", points.size()},
                   {"boundary_angles", boundary_angles(scenario.system)}},
                  dir);
    out << "wrote " << points.size() << " trajectory samples to " << (dir / "trajectory.csv").string() << "\n";
    return 0;
}

int pdelta(const Scenario& scenario, int samples, const fs::path& dir, std::ostream& out)
{
    std::vector<PDeltaCurve> curves;
    json peaks = json::object();
    for (Strategy s : {Strategy::None, Strategy::VariableVI, Strategy::AdaptiveVI}) {
        curves.push_back(p_delta_curve(s, scenario.system, samples));
        peaks[std::string(to_string(s))] = curves.back().peak();
    }
    write_pdelta_csv(curves, dir / "pdelta.csv");
    write_summary({{"command", "pdelta"},
                   {"name", scenario.name},
                   {"samples", samples},
                   {"peak_power", peaks},
                   {"boundary_angles", boundary_angles(scenario.system)}},
                  dir);
    out << "wrote P-delta curves to " << (dir / "pdelta.csv").string() << "\n";
    return 0;
}

int sweep(const Scenario& scenario, const CommandOptions& options, const fs::path& dir, std::ostream& out)
{
    auto or_default = [](const std::vector<double>& v, double fallback) {
        return v.empty() ? std::vector<double>{fallback} : v;
    };
    const auto rows = run_sweep(scenario, or_default(options.sweep_h, scenario.apcl.h),
                                or_default(options.sweep_d_p, scenario.apcl.d_p),
                                or_default(options.sweep_delta_p0, first_power_step(scenario)));
    write_sweep_csv(rows, dir / "sweep.csv");

    json table = json::array();
    for (const auto& r : rows) {
        json row{{"h", r.h}, {"d_p", r.d_p}, {"delta_p0", r.delta_p0}};
        if (r.verdict) {
            row["verdict"] = verdict_json(*r.verdict);
        } else {
            row["error"] = r.error;
        }
        if (r.first_swing_period) {
            row["first_swing_period"] = *r.first_swing_period;
        }
        table.push_back(row);
    }
    write_summary({{"command", "sweep"},
                   {"name", scenario.name},
                   {"strategy", std::string(to_string(scenario.limiter.strategy))},
                   {"runs", table},
                   {"boundary_angles", boundary_angles(scenario.system)}},
                  dir);
    out << "wrote " << rows.size() << " sweep rows to " << (dir / "sweep.csv").string() << "\n";
    return 0;
}

} // namespace

Scenario resolve_scenario(const CommandOptions& options)
{
    Scenario s;
    if (options.scenario_path && options.case_id) {
        throw std::invalid_argument("--scenario and --case are mutually exclusive");
    }
    if (options.scenario_path) {
        s = load_scenario(*options.scenario_path);
    } else if (options.case_id) {
        s = builtin_case(*options.case_id);
    } else {
        s.name = "reference";
        s.outputs = "out/reference";
    }
    if (options.strategy) {
        s = with_strategy(std::move(s), *options.strategy);
    }
    if (options.dt) {
        s.dt = *options.dt;
    }
    if (options.out_dir) {
        s.outputs = *options.out_dir;
    }
    s.validate();
    return s;
}

int run_command(const CommandOptions& options, std::ostream& out, std::ostream& err)
{
    try {
        const Scenario scenario = resolve_scenario(options);
        const fs::path dir = scenario.outputs;
        if (options.samples < 3) {
            throw std::invalid_argument("--samples must be at least 3");
        }
        if (options.command == "simulate") {
            return simulate(scenario, dir, out);
        }
        if (options.command == "trajectory") {
            return trajectory(scenario, options.samples, dir, out);
        }
        if (options.command == "pdelta") {
            return pdelta(scenario, options.samples, dir, out);
        }
        if (options.command == "sweep") {
            return sweep(scenario, options, dir, out);
        }
        if (options.command == "scenario") {
            save_scenario(scenario, dir / "scenario.json");
            out << "wrote " << (dir / "scenario.json").string() << "\n";
            return 0;
        }
        err << "error: unknown command '" << options.command << "'\n";
        return 2;
    } catch (const ParseError& e) {
        err << "parse error";
        if (e.line() > 0) {
            err << " (line " << e.line() << ")";
        }
        err << ": " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        err << "invalid scenario:\n";
        for (const auto& v : e.violations()) {
            err << "  - " << v << "\n";
        }
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

void write_record_csv(const SimulationRecord& record, const fs::path& path)
{
    auto out = open_output(path);
    out << "t,delta,omega_dev,i_mag,zapp_re,zapp_im,p_e,vi_r,vi_x,psb,ost\n";
    for (const auto& s : record.samples) {
        out << num(s.t) << ',' << num(s.delta) << ',' << num(s.omega_dev) << ',' << num(s.i_mag) << ','
            << num(s.z_app.real()) << ',' << num(s.z_app.imag()) << ',' << num(s.p_e) << ',' << num(s.vi.r_vi)
            << ',' << num(s.vi.x_vi) << ',' << (s.psb ? 1 : 0) << ',' << (s.ost ? 1 : 0) << '\n';
    }
}

void write_relay_events_csv(const std::vector<RelayEvent>& events, const fs::path& path)
{
    auto out = open_output(path);
    out << "t,event,id\n";
    for (const auto& e : events) {
        out << num(e.t) << ',' << to_string(e.kind) << ',' << e.id << '\n';
    }
}

void write_trajectory_csv(const std::vector<TrajectorySample>& samples, const fs::path& path)
{
    auto out = open_output(path);
    out << "delta,re,im,segment\n";
    for (const auto& s : samples) {
        out << num(s.delta) << ',' << num(s.z_app.real()) << ',' << num(s.z_app.imag()) << ','
            << to_string(s.segment) << '\n';
    }
}

void write_pdelta_csv(const std::vector<PDeltaCurve>& curves, const fs::path& path)
{
    auto out = open_output(path);
    out << "delta";
    for (const auto& c : curves) {
        out << ",p_" << to_string(c.strategy) << ",active_" << to_string(c.strategy);
    }
    out << '\n';
    const std::size_t n = curves.empty() ? 0 : curves.front().size();
    for (std::size_t i = 0; i < n; ++i) {
        out << num(curves.front().delta[i]);
        for (const auto& c : curves) {
            out << ',' << num(c.p[i]) << ',' << (c.vi_active[i] ? 1 : 0);
        }
        out << '\n';
    }
}

std::vector<SweepRow> run_sweep(const Scenario& base, const std::vector<double>& h_values,
                                const std::vector<double>& d_p_values, const std::vector<double>& delta_p0_values)
{
    std::vector<SweepRow> rows;
    for (double h : h_values) {
        for (double d_p : d_p_values) {
            for (double dp0 : delta_p0_values) {
                rows.push_back({h, d_p, dp0, base.limiter.strategy, std::nullopt, std::nullopt, {}});
            }
        }
    }

    auto run_one = [&base](SweepRow row) {
        Scenario s = base;
        s.apcl.h = row.h;
        s.apcl.d_p = row.d_p;
        for (auto& e : s.events) {
            if (auto* p = std::get_if<PowerStep>(&e.action)) {
                p->delta_p = row.delta_p0;
            }
        }
        try {
            const SimulationRecord record = run_scenario(s);
            row.first_swing_period = first_swing_period(record);
            row.verdict = classify_stability(record);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        return row;
    };

    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t begin = 0; begin < rows.size(); begin += workers) {
        const std::size_t end = std::min(rows.size(), begin + workers);
        std::vector<std::future<SweepRow>> batch;
        for (std::size_t i = begin; i < end; ++i) {
            batch.push_back(std::async(std::launch::async, run_one, rows[i]));
        }
        for (std::size_t i = begin; i < end; ++i) {
            rows[i] = batch[i - begin].get();
        }
    }
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const fs::path& path)
{
    auto out = open_output(path);
    out << "h,d_p,delta_p0,strategy,classification,max_delta_excursion,pole_slips,first_swing_period\n";
    for (const auto& r : rows) {
        out << num(r.h) << ',' << num(r.d_p) << ',' << num(r.delta_p0) << ',' << to_string(r.strategy) << ',';
        if (r.verdict) {
            out << to_string(r.verdict->classification) << ',' << num(r.verdict->max_delta_excursion) << ','
                << r.verdict->pole_slips;
        } else {
            out << "error,,";
        }
        out << ',' << (r.first_swing_period ? num(*r.first_swing_period) : std::string()) << '\n';
    }
}

} // namespace gfmswing
