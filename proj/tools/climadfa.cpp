// Command-line front end: calibrate, simulate, report.

#include <chrono>
#include <fstream>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "climadfa/calibrate_jobs.hpp"
#include "climadfa/config.hpp"
#include "climadfa/engine.hpp"
#include "climadfa/errors.hpp"
#include "climadfa/report_io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

int run_calibrate(fs::path const& config, fs::path const& data, fs::path const& out)
{
    auto const rows = climadfa::run_calibration_jobs(config, data);
    fs::create_directories(out);
    auto const file = out / "calibration.csv";
    std::ofstream stream(file, std::ios::binary | std::ios::trunc);
    if (!stream)
        throw climadfa::Error(fmt::format("cannot write {}", file.string()));
    stream << climadfa::format_calibration(rows);
    fmt::print("wrote {} parameter rows to {}\n", rows.size(), file.string());
    return 0;
}

int run_simulate(fs::path const& config_path,
                 std::optional<std::uint64_t> seed,
                 std::optional<std::size_t> paths,
                 std::optional<std::string> const& scenario,
                 std::optional<std::size_t> workers,
                 bool write_paths,
                 fs::path const& out)
{
    auto config = climadfa::load_run_config(config_path, scenario);
    if (seed)
        config.master_seed = *seed;
    if (paths)
        config.n_paths = *paths;
    if (workers)
        config.workers = *workers;
    climadfa::validate(config);

    auto const started = std::chrono::steady_clock::now();
    auto const result = climadfa::run_simulation(config);
    auto const elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    climadfa::Manifest manifest;
    manifest.version = climadfa::library_version();
    manifest.config_hash = config.config_hash;
    manifest.seed = config.master_seed;
    manifest.n_paths = config.n_paths;
    manifest.start_year = config.start_year;
    manifest.end_year = config.end_year;
    manifest.cagr_horizons = config.cagr_horizons;
    std::vector<climadfa::NamedPaths> named;
    for (auto const& s : result.scenarios)
    {
        manifest.scenarios.push_back(s.scenario_id);
        if (write_paths)
            named.push_back({s.scenario_id, s.paths});
    }
    climadfa::emit_report(result.report, write_paths ? &named : nullptr, manifest, out);

    for (auto const& s : result.scenarios)
    {
        double k0 = 0.0;
        for (auto const& c : s.initial_capital)
            k0 += c.capital;
        fmt::print("{}: initial market capital {:.1f}", s.scenario_id, k0);
        if (s.wipeout_paths > 0)
            fmt::print(", {} paths with non-positive damaged consumption", s.wipeout_paths);
        fmt::print("\n");
    }
    fmt::print("simulated {} scenario(s) x {} paths x {} years in {:.1f} s; report in {}\n", result.scenarios.size(),
               config.n_paths, config.horizon(), elapsed, out.string());
    return 0;
}

int run_report(fs::path const& in, fs::path const& out)
{
    auto const manifest = climadfa::read_manifest(in / "manifest.txt");
    auto const paths = climadfa::read_paths(in);
    climadfa::RiskReport report;
    for (auto const& named : paths)
        report.scenarios.push_back(climadfa::compute_risk_report(named.scenario, named.paths, manifest.cagr_horizons));
    climadfa::emit_report(report, nullptr, manifest, out);
    fmt::print("rebuilt report for {} scenario(s) in {}\n", report.scenarios.size(), out.string());
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Climate-dependent dynamic financial analysis"};
    app.require_subcommand(1);

    auto* calibrate = app.add_subcommand("calibrate", "Fit model parameters from historical CSVs");
    fs::path calib_config, calib_data, calib_out;
    calibrate->add_option("--config", calib_config, "Calibration job file")->required();
    calibrate->add_option("--data", calib_data, "Directory with input CSVs")->required();
    calibrate->add_option("--out", calib_out, "Output directory")->required();

    auto* simulate = app.add_subcommand("simulate", "Run the Monte Carlo projection");
    fs::path sim_config, sim_out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    std::optional<std::string> scenario;
    std::optional<std::size_t> workers;
    bool no_paths = false;
    simulate->add_option("--config", sim_config, "Run configuration")->required();
    simulate->add_option("--seed", seed, "Master seed");
    simulate->add_option("--paths", paths, "Paths per scenario");
    simulate->add_option("--scenario", scenario, "Run only this scenario");
    simulate->add_option("--workers", workers, "Worker threads");
    simulate->add_flag("--no-paths", no_paths, "Skip paths.csv and liabilities.csv");
    simulate->add_option("--out", sim_out, "Output directory")->required();

    auto* report = app.add_subcommand("report", "Recompute the risk report from saved paths");
    fs::path report_in, report_out;
    report->add_option("--in", report_in, "Directory of a simulate run")->required();
    report->add_option("--out", report_out, "Output directory")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try
    {
        if (calibrate->parsed())
            return run_calibrate(calib_config, calib_data, calib_out);
        if (simulate->parsed())
            return run_simulate(sim_config, seed, paths, scenario, workers, !no_paths, sim_out);
        return run_report(report_in, report_out);
    }
    catch (climadfa::ValidationError const& e)
    {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
