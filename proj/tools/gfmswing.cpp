#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "gfmswing/commands.hpp"

int main(int argc, char** argv)
{
    using gfmswing::CommandOptions;

    CLI::App app{"Swing dynamics and distance-relay response of a current-limited grid-forming inverter"};
    app.require_subcommand(1);

    CommandOptions options;
    std::string strategy;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--scenario", options.scenario_path, "scenario JSON file")->check(CLI::ExistingFile);
        sub->add_option("--case", options.case_id, "built-in case id (A1..E2)");
        sub->add_option("--strategy", strategy, "current limiting strategy")
            ->check(CLI::IsMember({"none", "variable", "adaptive"}));
        sub->add_option("--out", options.out_dir, "output directory");
        sub->add_option("--dt", options.dt, "integration step [s]")->check(CLI::PositiveNumber);
    };

    auto* simulate = app.add_subcommand("simulate", "time-domain simulation with relay monitoring");
    add_common(simulate);

    auto* trajectory = app.add_subcommand("trajectory", "quasi-static apparent impedance over one pole slip");
    add_common(trajectory);
    trajectory->add_option("--samples", options.samples, "number of angle samples")->check(CLI::Range(3, 10000000));

    auto* pdelta = app.add_subcommand("pdelta", "power-angle curves for all strategies");
    add_common(pdelta);
    pdelta->add_option("--samples", options.samples, "number of angle samples")->check(CLI::Range(3, 10000000));

    auto* sweep = app.add_subcommand("sweep", "parameter sweep over H, D_p and the power step");
    add_common(sweep);
    sweep->add_option("--inertia", options.sweep_h, "inertia constants [s]")->delimiter(',');
    sweep->add_option("--droop", options.sweep_d_p, "droop coefficients [pu]")->delimiter(',');
    sweep->add_option("--power-step", options.sweep_delta_p0, "power reference steps [pu]")->delimiter(',');

    auto* scenario = app.add_subcommand("scenario", "write the resolved scenario as JSON");
    add_common(scenario);

    CLI11_PARSE(app, argc, argv);

    options.command = app.get_subcommands().front()->get_name();
    if (!strategy.empty()) {
        options.strategy = gfmswing::parse_strategy(strategy);
    }
    return gfmswing::run_command(options, std::cout, std::cerr);
}
