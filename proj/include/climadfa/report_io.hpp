#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "climadfa/surplus.hpp"

namespace climadfa {

//! Run metadata written next to the report. Carries no timestamps or
//! worker counts so identical runs produce identical files.
struct Manifest
{
    std::string version;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::size_t n_paths = 0;
    int start_year = 0;
    int end_year = 0;
    std::vector<int> cagr_horizons;
    std::vector<std::string> scenarios;
};

struct NamedPaths
{
    std::string scenario;
    SurplusPaths paths;
};

std::string library_version();

//! Write risk_report.csv, cagr.csv and manifest.txt, plus paths.csv and
//! liabilities.csv when paths are given. Throws Error on I/O failure.
void emit_report(RiskReport const& report,
                 std::vector<NamedPaths> const* paths,
                 Manifest const& manifest,
                 std::filesystem::path const& out_dir);

std::string format_risk_report(RiskReport const& report);
std::string format_cagr(RiskReport const& report);
std::string format_manifest(Manifest const& manifest);

Manifest read_manifest(std::filesystem::path const& file);
//! Rebuild per-scenario paths from paths.csv and liabilities.csv.
std::vector<NamedPaths> read_paths(std::filesystem::path const& dir);

}  // namespace climadfa
