#include "acload/commands.hpp"
#include "acload/report.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <iostream>

int main(int argc, char** argv)
{
    // stdout carries machine-readable output only.
    spdlog::set_default_logger(spdlog::stderr_color_mt("acload"));
    spdlog::set_pattern("[%Y-%m-%d %H:%M:%S.%e] [%^%l%$] %v");

    CLI::App app{"Expected additional residential demand from mobile air conditioning"};
    app.set_version_flag("--version", std::string(acload::tool_version()));
    app.require_subcommand(1);

    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Debug logging");

    acload::InputPaths inputs;
    std::string config_path;

    auto* validate = app.add_subcommand("validate", "Check census, weather and config inputs");
    validate->add_option("--census", inputs.census, "Census grid CSV")->required();
    validate->add_option("--weather", inputs.weather, "Hourly station temperature CSV")->required();
    validate->add_option("--config", config_path, "TOML run configuration");

    acload::RunOptions run_options;
    double baseline_gw = 0.0;
    auto* run = app.add_subcommand("run", "Simulate and write result files");
    run->add_option("--census", inputs.census, "Census grid CSV")->required();
    run->add_option("--weather", inputs.weather, "Hourly station temperature CSV")->required();
    run->add_option("--config", config_path, "TOML run configuration");
    run->add_option("--out", run_options.out_dir, "Output directory")->required();
    run->add_option("--threads", run_options.threads, "Worker threads, 0 = all cores")
        ->capture_default_str();
    auto* baseline_opt =
        run->add_option("--baseline-gw", baseline_gw, "System load at the peak hour, in GW");

    std::filesystem::path results_dir;
    std::size_t hour = 0;
    std::size_t n = 10;
    auto* top = app.add_subcommand("top", "Highest-demand cells at one hour of a finished run");
    top->add_option("--results", results_dir, "Directory written by `run`")->required();
    top->add_option("--hour", hour, "Local hour 0-23")->required()->check(CLI::Range(0, 23));
    top->add_option("--n", n, "Number of cells")->capture_default_str()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (verbose)
        spdlog::set_level(spdlog::level::debug);
    if (!config_path.empty())
        inputs.config = config_path;

    if (*validate)
        return acload::cmd_validate(inputs, std::cout);
    if (*run) {
        run_options.inputs = inputs;
        if (*baseline_opt)
            run_options.baseline_gw = baseline_gw;
        return acload::cmd_run(run_options, std::cout);
    }
    return acload::cmd_top(results_dir, hour, n, std::cout);
}
