#include <iostream>

#include <CLI11.hpp>

#include "beamaudit/cli.hpp"

int main(int argc, char** argv)
{
    using beamaudit::CommandOptions;
    using beamaudit::ExitCode;

    CLI::App app{"Electron beam transport simulator and analytic auditor"};
    app.set_version_flag("--version", beamaudit::version_string);
    app.require_subcommand(1);

    CommandOptions opts;
    auto add_common = [&opts](CLI::App* sub) {
        sub->add_option("--config", opts.config_path, "Configuration file");
        sub->add_option("--seed", opts.seed, "Override the configured seed");
        sub->add_option("--workers", opts.workers, "Worker threads")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", opts.out_dir, "Output directory");
    };

    auto* analyze = app.add_subcommand("analyze", "Consistency report");
    add_common(analyze);

    auto* simulate = app.add_subcommand("simulate", "Run one shot");
    add_common(simulate);

    auto* sweep = app.add_subcommand("sweep", "Parameter sweep");
    add_common(sweep);
    sweep
        ->add_option("--param", opts.param,
                     "toroid_current | b0 | energy | leakage | offset")
        ->required();
    sweep->add_option("--from", opts.from, "First value (config units)")
        ->required();
    sweep->add_option("--to", opts.to, "Last value (config units)")
        ->required();
    sweep->add_option("--steps", opts.steps, "Number of values")->required();

    auto* focal = app.add_subcommand("focal-scan", "Beam envelope along z");
    add_common(focal);
    focal->add_option("--from", opts.from, "First plane [cm]");
    focal->add_option("--to", opts.to, "Last plane [cm]");
    focal->add_option("--steps", opts.steps, "Number of planes");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(ExitCode::usage);
    }

    opts.subcommand = app.get_subcommands().front()->get_name();
    return static_cast<int>(beamaudit::run_command(opts, std::cout, std::cerr));
}
