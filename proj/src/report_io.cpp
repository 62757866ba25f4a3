#include "climadfa/report_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "climadfa/csv.hpp"
#include "climadfa/errors.hpp"

#ifndef CLIMADFA_VERSION
#define CLIMADFA_VERSION "0.0.0"
#endif

namespace climadfa {

namespace {

std::string number(double v)
{
    return fmt::format("{:.17g}", v);
}

std::string optional_number(std::optional<double> const& v)
{
    return v ? number(*v) : "NA";
}

void write_file(std::filesystem::path const& file, std::string const& text)
{
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(fmt::format("cannot write {}", file.string()));
    out << text;
    if (!out)
        throw Error(fmt::format("failed writing {}", file.string()));
}

std::string join_ints(std::vector<int> const& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out += (i ? "," : "") + std::to_string(values[i]);
    return out;
}

}  // namespace

std::string library_version()
{
    return CLIMADFA_VERSION;
}

std::string format_risk_report(RiskReport const& report)
{
    std::string out = "scenario,year,metric,value,n_paths\n";
    for (auto const& s : report.scenarios)
    {
        for (auto const& y : s.years)
        {
            out += fmt::format("{},{},expected_surplus,{},{}\n", s.scenario, y.year, number(y.expected_surplus), y.n_paths);
            out += fmt::format("{},{},median_surplus,{},{}\n", s.scenario, y.year, number(y.median_surplus), y.n_paths);
            out += fmt::format("{},{},insolvency_probability,{},{}\n", s.scenario, y.year,
                               number(y.insolvency_probability), y.n_paths);
            out += fmt::format("{},{},deficit_given_insolvency,{},{}\n", s.scenario, y.year,
                               optional_number(y.deficit_given_insolvency), y.n_paths);
        }
    }
    return out;
}

std::string format_cagr(RiskReport const& report)
{
    std::string out = "scenario,horizon,cagr,n_paths\n";
    for (auto const& s : report.scenarios)
    {
        for (auto const& c : s.cagr)
            out += fmt::format("{},{},{},{}\n", s.scenario, c.horizon, optional_number(c.cagr), c.n_paths);
    }
    return out;
}

std::string format_manifest(Manifest const& m)
{
    std::string out;
    out += fmt::format("version={}\n", m.version);
    out += fmt::format("config_hash={:016x}\n", m.config_hash);
    out += fmt::format("seed={}\n", m.seed);
    out += fmt::format("paths={}\n", m.n_paths);
    out += fmt::format("start_year={}\n", m.start_year);
    out += fmt::format("end_year={}\n", m.end_year);
    out += fmt::format("cagr_horizons={}\n", join_ints(m.cagr_horizons));
    std::string scenarios;
    for (std::size_t i = 0; i < m.scenarios.size(); ++i)
        scenarios += (i ? "," : "") + m.scenarios[i];
    out += fmt::format("scenarios={}\n", scenarios);
    return out;
}

void emit_report(RiskReport const& report,
                 std::vector<NamedPaths> const* paths,
                 Manifest const& manifest,
                 std::filesystem::path const& out_dir)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw Error(fmt::format("cannot create {}: {}", out_dir.string(), ec.message()));
    write_file(out_dir / "risk_report.csv", format_risk_report(report));
    write_file(out_dir / "cagr.csv", format_cagr(report));
    write_file(out_dir / "manifest.txt", format_manifest(manifest));
    if (paths == nullptr)
        return;

    std::string capital = "scenario,path,year,market_capital\n";
    std::string claims = "scenario,path,year,total_claims\n";
    for (auto const& named : *paths)
    {
        auto const& p = named.paths;
        for (std::size_t path = 0; path < p.n_paths; ++path)
        {
            for (std::size_t t = 0; t <= p.horizon; ++t)
            {
                int const year = p.start_year + static_cast<int>(t);
                capital += fmt::format("{},{},{},{}\n", named.scenario, path, year, number(p.capital_at(path, t)));
                if (t > 0)
                    claims += fmt::format("{},{},{},{}\n", named.scenario, path, year, number(p.claims_at(path, t)));
            }
        }
    }
    write_file(out_dir / "paths.csv", capital);
    write_file(out_dir / "liabilities.csv", claims);
}

Manifest read_manifest(std::filesystem::path const& file)
{
    std::ifstream in(file);
    if (!in)
        throw ValidationError(fmt::format("cannot open manifest {}", file.string()));
    std::map<std::string, std::string> fields;
    std::string line;
    while (std::getline(in, line))
    {
        auto const eq = line.find('=');
        if (eq == std::string::npos)
            continue;
        fields[line.substr(0, eq)] = line.substr(eq + 1);
    }
    auto get = [&](std::string const& key) -> std::string const& {
        auto it = fields.find(key);
        if (it == fields.end())
            throw ValidationError(fmt::format("manifest {} lacks '{}'", file.string(), key));
        return it->second;
    };
    auto split = [](std::string const& text) {
        std::vector<std::string> out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ','))
        {
            if (!item.empty())
                out.push_back(item);
        }
        return out;
    };

    Manifest m;
    m.version = get("version");
    m.config_hash = std::stoull(get("config_hash"), nullptr, 16);
    m.seed = std::stoull(get("seed"));
    m.n_paths = std::stoull(get("paths"));
    m.start_year = std::stoi(get("start_year"));
    m.end_year = std::stoi(get("end_year"));
    for (auto const& h : split(get("cagr_horizons")))
        m.cagr_horizons.push_back(std::stoi(h));
    m.scenarios = split(get("scenarios"));
    return m;
}

std::vector<NamedPaths> read_paths(std::filesystem::path const& dir)
{
    auto const capital = read_csv(dir / "paths.csv");
    auto const claims = read_csv(dir / "liabilities.csv");

    struct Rows
    {
        std::map<std::pair<std::size_t, int>, double> capital;
        std::map<std::pair<std::size_t, int>, double> claims;
    };
    std::vector<std::string> order;
    std::map<std::string, Rows> by_scenario;

    auto load = [&](CsvTable const& table, char const* value_column, bool is_capital) {
        auto const cs = table.column("scenario");
        auto const cp = table.column("path");
        auto const cy = table.column("year");
        auto const cv = table.column(value_column);
        for (std::size_t r = 0; r < table.rows.size(); ++r)
        {
            auto const& id = table.rows[r][cs];
            if (!by_scenario.contains(id))
                order.push_back(id);
            auto& rows = by_scenario[id];
            auto const key = std::make_pair(static_cast<std::size_t>(table.number(r, cp)),
                                            static_cast<int>(table.number(r, cy)));
            (is_capital ? rows.capital : rows.claims)[key] = table.number(r, cv);
        }
    };
    load(capital, "market_capital", true);
    load(claims, "total_claims", false);

    std::vector<NamedPaths> out;
    for (auto const& id : order)
    {
        auto const& rows = by_scenario[id];
        if (rows.capital.empty())
            throw ValidationError(fmt::format("scenario {} has no capital rows", id));
        std::size_t n_paths = 0;
        int first = rows.capital.begin()->first.second;
        int last = first;
        for (auto const& [key, value] : rows.capital)
        {
            n_paths = std::max(n_paths, key.first + 1);
            first = std::min(first, key.second);
            last = std::max(last, key.second);
        }
        auto const horizon = static_cast<std::size_t>(last - first);
        if (rows.capital.size() != n_paths * (horizon + 1) || rows.claims.size() != n_paths * horizon)
            throw ValidationError(fmt::format("scenario {}: path files are incomplete", id));
        NamedPaths named{id, SurplusPaths(first, horizon, n_paths)};
        for (auto const& [key, value] : rows.capital)
            named.paths.capital_at(key.first, static_cast<std::size_t>(key.second - first)) = value;
        for (auto const& [key, value] : rows.claims)
        {
            if (key.second <= first || key.second > last)
                throw ValidationError(fmt::format("scenario {}: claims year {} outside the projection", id, key.second));
            named.paths.claims_at(key.first, static_cast<std::size_t>(key.second - first)) = value;
        }
        out.push_back(std::move(named));
    }
    return out;
}

}  // namespace climadfa
