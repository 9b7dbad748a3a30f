#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gfmswing/analysis.hpp"
#include "gfmswing/dynamics.hpp"
#include "gfmswing/scenario.hpp"
#include "gfmswing/trajectory.hpp"

namespace gfmswing {

/// Options shared by the command-line subcommands.
struct CommandOptions
{
    std::string command;                     ///< simulate | trajectory | pdelta | sweep | scenario
    std::optional<std::string> scenario_path;
    std::optional<std::string> case_id;
    std::optional<Strategy> strategy;
    std::optional<std::string> out_dir;
    std::optional<double> dt;
    int samples = 2001;
    std::vector<double> sweep_h;
    std::vector<double> sweep_d_p;
    std::vector<double> sweep_delta_p0;
};

/// Scenario selected by --scenario / --case (reference defaults when neither is given),
/// with --strategy, --dt and --out applied.
Scenario resolve_scenario(const CommandOptions& options);

/// Runs one subcommand, writing its files. Returns the process exit status; errors are
/// reported on `err` with a nonzero status.
int run_command(const CommandOptions& options, std::ostream& out, std::ostream& err);

// File writers. Every CSV starts with a header row.

void write_record_csv(const SimulationRecord& record, const std::filesystem::path& path);
void write_relay_events_csv(const std::vector<RelayEvent>& events, const std::filesystem::path& path);
void write_trajectory_csv(const std::vector<TrajectorySample>& samples, const std::filesystem::path& path);
void write_pdelta_csv(const std::vector<PDeltaCurve>& curves, const std::filesystem::path& path);

struct SweepRow
{
    double h = 0.0;
    double d_p = 0.0;
    double delta_p0 = 0.0;
    Strategy strategy = Strategy::None;
    std::optional<StabilityVerdict> verdict; ///< empty if the run failed or was too short
    std::optional<double> first_swing_period;
    std::string error;
};

/// Runs the H x D_p x dP0 grid, concurrently across runs. Rows come back in grid order.
std::vector<SweepRow> run_sweep(const Scenario& base, const std::vector<double>& h_values,
                                const std::vector<double>& d_p_values, const std::vector<double>& delta_p0_values);

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

} // namespace gfmswing
