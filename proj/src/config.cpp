#include "climadfa/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "climadfa/csv.hpp"
#include "climadfa/errors.hpp"
#include "climadfa/random.hpp"
#include "climadfa/spline.hpp"

namespace climadfa {

namespace {

void check_keys(YAML::Node const& node, std::string const& where, std::initializer_list<char const*> allowed)
{
    if (!node.IsMap())
        throw ValidationError(fmt::format("config section '{}' must be a mapping", where));
    for (auto const& entry : node)
    {
        auto const key = entry.first.as<std::string>();
        bool const known = std::any_of(allowed.begin(), allowed.end(), [&](char const* a) { return key == a; });
        if (!known)
            throw ValidationError(fmt::format("unknown config key '{}.{}'", where, key));
    }
}

template <typename T>
T read(YAML::Node const& node, char const* key, std::string const& where)
{
    auto const child = node[key];
    if (!child)
        throw ValidationError(fmt::format("missing config key '{}.{}'", where, key));
    try
    {
        return child.as<T>();
    }
    catch (YAML::Exception const& e)
    {
        throw ValidationError(fmt::format("config key '{}.{}': {}", where, key, e.what()));
    }
}

template <typename T>
T read_or(YAML::Node const& node, char const* key, std::string const& where, T fallback)
{
    if (!node || !node[key])
        return fallback;
    return read<T>(node, key, where);
}

template <std::size_t N>
std::array<double, N> read_array(YAML::Node const& node, char const* key, std::string const& where)
{
    std::array<double, N> out{};
    if (!node[key])
        return out;
    auto const values = read<std::vector<double>>(node, key, where);
    if (values.size() != N)
        throw ValidationError(fmt::format("config key '{}.{}' needs {} values, got {}", where, key, N, values.size()));
    std::copy(values.begin(), values.end(), out.begin());
    return out;
}

std::vector<Coefficient> read_coefficients(YAML::Node const& node, std::string const& where)
{
    std::vector<Coefficient> out;
    if (!node)
        return out;
    if (!node.IsMap())
        throw ValidationError(fmt::format("config section '{}' must map covariates to coefficients", where));
    for (auto const& entry : node)
    {
        Coefficient c;
        c.covariate = entry.first.as<std::string>();
        try
        {
            c.value = entry.second.as<double>();
        }
        catch (YAML::Exception const& e)
        {
            throw ValidationError(fmt::format("config key '{}.{}': {}", where, c.covariate, e.what()));
        }
        out.push_back(c);
    }
    return out;
}

HazardModel read_hazard(YAML::Node const& node, std::size_t index)
{
    std::string const where = fmt::format("hazards[{}]", index);
    check_keys(node, where, {"id", "resolution", "frequency", "severity"});
    HazardModel m;
    m.id = parse_hazard_id(read<std::string>(node, "id", where));
    m.resolution = parse_resolution(read<std::string>(node, "resolution", where));

    auto const freq = node["frequency"];
    std::string const fw = where + ".frequency";
    if (!freq)
        throw ValidationError(fmt::format("missing config section '{}'", fw));
    check_keys(freq, fw, {"intercept", "coefficients"});
    m.freq_intercept = read<double>(freq, "intercept", fw);
    m.freq_coeffs = read_coefficients(freq["coefficients"], fw + ".coefficients");

    auto const sev = node["severity"];
    std::string const sw = where + ".severity";
    if (!sev)
        throw ValidationError(fmt::format("missing config section '{}'", sw));
    check_keys(sev, sw, {"intercept", "coefficients", "sigma"});
    m.sev_intercept = read<double>(sev, "intercept", sw);
    m.sev_coeffs = read_coefficients(sev["coefficients"], sw + ".coefficients");
    m.sev_sigma = read<double>(sev, "sigma", sw);
    return m;
}

Ensemble read_ensemble(YAML::Node const& node)
{
    check_keys(node, "ensemble", {"fallback_member", "members"});
    Ensemble ensemble;
    if (node["fallback_member"])
        ensemble.fallback_member = read<std::string>(node, "fallback_member", "ensemble");
    auto const members = node["members"];
    if (!members || !members.IsSequence() || members.size() == 0)
        throw ValidationError("config 'ensemble.members' must be a non-empty list");
    for (std::size_t i = 0; i < members.size(); ++i)
    {
        auto const m = members[i];
        std::string const where = fmt::format("ensemble.members[{}]", i);
        check_keys(m, where, {"id", "variables"});
        EnsembleMember member;
        member.model_id = read<std::string>(m, "id", where);
        auto const vars = m["variables"];
        if (!vars || !vars.IsMap())
            throw ValidationError(fmt::format("config '{}.variables' must be a mapping", where));
        for (auto const& entry : vars)
        {
            MemberVariable v;
            v.name = entry.first.as<std::string>();
            std::string const vw = fmt::format("{}.variables.{}", where, v.name);
            check_keys(entry.second, vw, {"intercept", "slope", "sigma"});
            v.correction.intercept = read<double>(entry.second, "intercept", vw);
            v.correction.slope = read<double>(entry.second, "slope", vw);
            v.correction.noise_sigma = read<double>(entry.second, "sigma", vw);
            member.variables.push_back(std::move(v));
        }
        ensemble.members.push_back(std::move(member));
    }
    return ensemble;
}

std::vector<InsurerSpec> read_market(YAML::Node const& node)
{
    check_keys(node, "market", {"insurers"});
    auto const list = node["insurers"];
    if (!list || !list.IsSequence() || list.size() == 0)
        throw ValidationError("config 'market.insurers' must be a non-empty list");
    std::vector<InsurerSpec> out;
    for (std::size_t i = 0; i < list.size(); ++i)
    {
        auto const n = list[i];
        std::string const where = fmt::format("market.insurers[{}]", i);
        check_keys(n, where, {"id", "count", "share", "excess", "limit", "initial_capital", "fixed_premium"});
        InsurerSpec spec;
        auto const id = read<std::string>(n, "id", where);
        auto const count = read_or<int>(n, "count", where, 1);
        if (count < 1)
            throw ValidationError(fmt::format("config '{}.count' must be at least 1", where));
        spec.market_share = read<double>(n, "share", where);
        spec.xol_excess = read<double>(n, "excess", where);
        spec.xol_limit = read<double>(n, "limit", where);
        if (n["initial_capital"])
            spec.initial_capital = read<double>(n, "initial_capital", where);
        if (n["fixed_premium"])
            spec.fixed_premium = read<double>(n, "fixed_premium", where);
        for (int k = 1; k <= count; ++k)
        {
            spec.insurer_id = count == 1 ? id : fmt::format("{}_{}", id, k);
            out.push_back(spec);
        }
    }
    return out;
}

std::uint64_t fnv1a(std::string const& text)
{
    return hash_tag(text);
}

}  // namespace

bool RunConfig::overlay_enabled() const
{
    auto nonzero = [](double v) { return v != 0.0; };
    return std::any_of(inflation.overlay_alpha.begin(), inflation.overlay_alpha.end(), nonzero)
           || std::any_of(inflation.overlay_beta.begin(), inflation.overlay_beta.end(), nonzero);
}

std::vector<std::string> RunConfig::required_variables() const
{
    std::vector<std::string> out;
    auto add = [&](std::string const& name) {
        if (std::find(out.begin(), out.end(), name) == out.end())
            out.push_back(name);
    };
    for (auto const& h : hazards)
    {
        for (auto const& c : h.covariates())
            add(c);
    }
    if (overlay_enabled())
        add(temperature_variable);
    return out;
}

void validate(RunConfig const& config)
{
    if (config.n_paths < 1)
        throw ValidationError("run.paths must be at least 1");
    if (config.end_year <= config.start_year)
        throw ValidationError("run.end_year must be after run.start_year");
    if (config.workers < 1)
        throw ValidationError("run.workers must be at least 1");
    for (int h : config.cagr_horizons)
    {
        if (h < 1)
            throw ValidationError(fmt::format("CAGR horizon {} must be at least 1", h));
    }
    if (config.scenarios.empty())
        throw ValidationError("no scenarios configured");
    if (config.hazards.empty())
        throw ValidationError("no hazards configured");
    std::set<HazardId> seen;
    for (auto const& h : config.hazards)
    {
        validate(h);
        if (!seen.insert(h.id).second)
            throw ValidationError(fmt::format("hazard {} configured twice", to_string(h.id)));
    }
    validate(config.inflation);
    validate(config.real_rate);
    validate(config.equity);
    validate(config.portfolio);
    if (!(config.uninsured_ratio >= 0.0))
        throw ValidationError("uninsured_ratio must be non-negative");

    if (config.market.empty())
        throw ValidationError("market has no insurers");
    double share_sum = 0.0;
    for (auto const& insurer : config.market)
    {
        validate(insurer);
        share_sum += insurer.market_share;
    }
    if (std::abs(share_sum - 1.0) > 1e-9)
        throw ValidationError(fmt::format("insurer market shares sum to {:.12g}, not 1", share_sum));
    validate(config.noncat);
    validate(config.reinsurance);
    if (config.premium.inner_samples < 1000)
        throw ValidationError("premium.inner_samples must be at least 1000");
    if (config.premium.layer_bank_depth < 1)
        throw ValidationError("premium.layer_bank_depth must be at least 1");
    if (!(config.capital.target_ratio >= 0.0))
        throw ValidationError("capital.target_ratio must be non-negative");
    bool const needs_calibration = std::any_of(config.market.begin(), config.market.end(),
                                               [](InsurerSpec const& i) { return !i.initial_capital; });
    if (needs_calibration && config.capital.calibration_draws < 10000)
        throw ValidationError("capital.calibration_draws must be at least 10000");

    auto const variables = config.required_variables();
    for (auto const& scenario : config.scenarios)
    {
        auto const& id = scenario.scenario_id;
        for (auto const* series : {&scenario.gdp, &scenario.potential_growth, &scenario.population,
                                   &scenario.brown_production})
        {
            if (!series->covers(config.start_year, config.end_year))
                throw ValidationError(fmt::format("scenario {}: socio-economic series do not cover {}-{}",
                                                  id, config.start_year, config.end_year));
        }
        for (int year = config.start_year; year <= config.end_year; ++year)
        {
            if (!(scenario.gdp.annual(year) > 0.0) || !(scenario.population.annual(year) > 0.0)
                || !(scenario.brown_production.annual(year) > 0.0))
                throw ValidationError(fmt::format("scenario {}: GDP, population and brown production must be positive ({})",
                                                  id, year));
        }
        auto const& ensemble = scenario.ensemble;
        if (ensemble.members.empty())
            throw ValidationError(fmt::format("scenario {}: ensemble is empty", id));
        EnsembleMember const* fallback = nullptr;
        if (ensemble.fallback_member)
        {
            fallback = ensemble.find(*ensemble.fallback_member);
            if (fallback == nullptr)
                throw ValidationError(fmt::format("fallback member '{}' is not in the ensemble", *ensemble.fallback_member));
        }
        for (auto const& member : ensemble.members)
        {
            for (auto const& v : member.variables)
            {
                if (!(v.correction.noise_sigma >= 0.0))
                    throw ValidationError(fmt::format("member {} variable {}: noise sigma must be non-negative",
                                                      member.model_id, v.name));
                if (!v.forecast.covers(config.start_year, config.end_year))
                    throw ValidationError(fmt::format("scenario {}: forecast {}/{} does not cover {}-{}",
                                                      id, member.model_id, v.name, config.start_year, config.end_year));
            }
            for (auto const& name : variables)
            {
                if (member.find(name) == nullptr && (fallback == nullptr || fallback->find(name) == nullptr))
                    throw ValidationError(fmt::format(
                        "scenario {}: member {} lacks variable '{}' and no fallback supplies it", id,
                        member.model_id, name));
            }
        }
        if (config.overlay_enabled())
        {
            auto const* member = ensemble.members.front().find(config.temperature_variable);
            if (member == nullptr && fallback != nullptr)
                member = fallback->find(config.temperature_variable);
            if (member != nullptr && member->forecast.resolution() != Resolution::monthly)
                throw ValidationError("inflation overlay temperature must be a monthly variable");
        }
    }
}

ScenarioSpec load_scenario(std::string scenario_id, std::filesystem::path const& data_dir, Ensemble ensemble_template)
{
    ScenarioSpec spec;
    spec.scenario_id = std::move(scenario_id);
    spec.gdp = interpolate_annual(read_knots(data_dir / "gdp.csv"));
    spec.potential_growth = interpolate_annual(read_knots(data_dir / "potential_growth.csv"));
    spec.population = interpolate_annual(read_knots(data_dir / "population.csv"));
    spec.brown_production = interpolate_annual(read_knots(data_dir / "brown_production.csv"));
    spec.ensemble = std::move(ensemble_template);
    for (auto& member : spec.ensemble.members)
    {
        for (auto& v : member.variables)
        {
            auto const file = data_dir / "climate" / member.model_id / (v.name + ".csv");
            if (!std::filesystem::exists(file))
                throw ValidationError(fmt::format("scenario {}: missing forecast file {}", spec.scenario_id,
                                                  file.string()));
            v.forecast = read_period_series(file);
        }
    }
    return spec;
}

RunConfig parse_run_config(std::string const& text,
                           std::filesystem::path const& base_dir,
                           std::optional<std::string> const& only_scenario)
{
    YAML::Node root;
    try
    {
        root = YAML::Load(text);
    }
    catch (YAML::Exception const& e)
    {
        throw ValidationError(fmt::format("config is not valid YAML: {}", e.what()));
    }
    if (!root.IsMap())
        throw ValidationError("config root must be a mapping");
    check_keys(root, "config", {"run", "scenarios", "ensemble", "hazards", "inflation", "real_rate", "equity",
                                "portfolio", "uninsured_ratio", "market", "noncat", "premium", "reinsurance",
                                "capital"});

    RunConfig config;
    config.config_hash = fnv1a(text);

    if (auto const run = root["run"])
    {
        check_keys(run, "run", {"seed", "paths", "start_year", "end_year", "workers", "cagr_horizons"});
        config.master_seed = read_or<std::uint64_t>(run, "seed", "run", config.master_seed);
        config.n_paths = read_or<std::size_t>(run, "paths", "run", config.n_paths);
        config.start_year = read_or<int>(run, "start_year", "run", config.start_year);
        config.end_year = read_or<int>(run, "end_year", "run", config.end_year);
        config.workers = read_or<std::size_t>(run, "workers", "run", config.workers);
        config.cagr_horizons = read_or<std::vector<int>>(run, "cagr_horizons", "run", config.cagr_horizons);
    }

    auto const ensemble_node = root["ensemble"];
    if (!ensemble_node)
        throw ValidationError("missing config section 'ensemble'");
    auto const ensemble = read_ensemble(ensemble_node);

    auto const scenarios = root["scenarios"];
    if (!scenarios || !scenarios.IsSequence() || scenarios.size() == 0)
        throw ValidationError("config 'scenarios' must be a non-empty list");
    for (std::size_t i = 0; i < scenarios.size(); ++i)
    {
        auto const s = scenarios[i];
        std::string const where = fmt::format("scenarios[{}]", i);
        check_keys(s, where, {"id", "data_dir"});
        auto const id = read<std::string>(s, "id", where);
        if (only_scenario && id != *only_scenario)
            continue;
        std::filesystem::path dir = read<std::string>(s, "data_dir", where);
        if (dir.is_relative())
            dir = base_dir / dir;
        config.scenarios.push_back(load_scenario(id, dir, ensemble));
    }
    if (only_scenario && config.scenarios.empty())
        throw ValidationError(fmt::format("scenario '{}' is not in the config", *only_scenario));

    auto const hazards = root["hazards"];
    if (!hazards || !hazards.IsSequence())
        throw ValidationError("config 'hazards' must be a list");
    for (std::size_t i = 0; i < hazards.size(); ++i)
        config.hazards.push_back(read_hazard(hazards[i], i));

    if (auto const n = root["inflation"])
    {
        check_keys(n, "inflation", {"long_run_mean", "ar_coeff", "sigma", "initial", "temperature_variable",
                                    "overlay_alpha", "overlay_beta", "baseline_monthly_temp"});
        auto& p = config.inflation;
        p.long_run_mean = read_or(n, "long_run_mean", "inflation", p.long_run_mean);
        p.ar_coeff = read_or(n, "ar_coeff", "inflation", p.ar_coeff);
        p.sigma = read_or(n, "sigma", "inflation", p.sigma);
        p.overlay_alpha = read_array<kOverlayLags>(n, "overlay_alpha", "inflation");
        p.overlay_beta = read_array<kOverlayLags>(n, "overlay_beta", "inflation");
        p.baseline_monthly_temp = read_array<12>(n, "baseline_monthly_temp", "inflation");
        config.initial_inflation = read_or(n, "initial", "inflation", p.long_run_mean);
        config.temperature_variable
            = read_or<std::string>(n, "temperature_variable", "inflation", config.temperature_variable);
    }

    if (auto const n = root["real_rate"])
    {
        check_keys(n, "real_rate", {"intercept", "growth_sensitivity", "resid_mean", "resid_ar", "resid_sigma",
                                    "initial_resid"});
        auto& p = config.real_rate;
        p.intercept = read<double>(n, "intercept", "real_rate");
        p.growth_sensitivity = read_or(n, "growth_sensitivity", "real_rate", p.growth_sensitivity);
        p.resid_mean = read_or(n, "resid_mean", "real_rate", p.resid_mean);
        p.resid_ar = read_or(n, "resid_ar", "real_rate", p.resid_ar);
        p.resid_sigma = read_or(n, "resid_sigma", "real_rate", p.resid_sigma);
        config.initial_real_resid = read_or(n, "initial_resid", "real_rate", p.resid_mean);
    }
    else
    {
        throw ValidationError("missing config section 'real_rate'");
    }

    if (auto const n = root["equity"])
    {
        check_keys(n, "equity", {"op_intercept", "op_sensitivity", "op_sigma", "x_intercept", "x_sensitivity",
                                 "x_sigma", "brown_sensitivity"});
        auto& p = config.equity;
        p.op_intercept = read<double>(n, "op_intercept", "equity");
        p.op_sensitivity = read_or(n, "op_sensitivity", "equity", p.op_sensitivity);
        p.op_sigma = read_or(n, "op_sigma", "equity", p.op_sigma);
        p.x_intercept = read<double>(n, "x_intercept", "equity");
        p.x_sensitivity = read_or(n, "x_sensitivity", "equity", p.x_sensitivity);
        p.x_sigma = read_or(n, "x_sigma", "equity", p.x_sigma);
        p.brown_sensitivity = read_or(n, "brown_sensitivity", "equity", p.brown_sensitivity);
    }
    else
    {
        throw ValidationError("missing config section 'equity'");
    }

    if (auto const n = root["portfolio"])
    {
        check_keys(n, "portfolio", {"risk_free_weight", "brown_weight"});
        config.portfolio.risk_free_weight = read_or(n, "risk_free_weight", "portfolio", config.portfolio.risk_free_weight);
        config.portfolio.brown_weight = read_or(n, "brown_weight", "portfolio", config.portfolio.brown_weight);
    }
    if (root["uninsured_ratio"])
        config.uninsured_ratio = root["uninsured_ratio"].as<double>();

    auto const market = root["market"];
    if (!market)
        throw ValidationError("missing config section 'market'");
    config.market = read_market(market);

    if (auto const n = root["noncat"])
    {
        check_keys(n, "noncat", {"enabled", "mu", "dispersion", "power", "exposure_intercept", "exposure_slope"});
        auto& p = config.noncat;
        p.enabled = read_or(n, "enabled", "noncat", p.enabled);
        if (p.enabled)
        {
            p.mu = read<double>(n, "mu", "noncat");
            p.dispersion = read<double>(n, "dispersion", "noncat");
            p.power = read_or(n, "power", "noncat", p.power);
            p.exposure_intercept = read_or(n, "exposure_intercept", "noncat", p.exposure_intercept);
            p.exposure_slope = read<double>(n, "exposure_slope", "noncat");
        }
    }
    else
    {
        config.noncat.enabled = false;
    }

    if (auto const n = root["premium"])
    {
        check_keys(n, "premium", {"risk_loading", "use_prior_year_covariates", "inner_samples", "layer_bank_depth"});
        auto& p = config.premium;
        p.risk_loading = read_or(n, "risk_loading", "premium", p.risk_loading);
        p.use_prior_year_covariates = read_or(n, "use_prior_year_covariates", "premium", p.use_prior_year_covariates);
        p.inner_samples = read_or(n, "inner_samples", "premium", p.inner_samples);
        p.layer_bank_depth = read_or(n, "layer_bank_depth", "premium", p.layer_bank_depth);
    }

    if (auto const n = root["reinsurance"])
    {
        check_keys(n, "reinsurance", {"sensitivity", "reference_solvency", "initial_capital"});
        auto& p = config.reinsurance;
        p.sensitivity = read<double>(n, "sensitivity", "reinsurance");
        p.reference_solvency = read<double>(n, "reference_solvency", "reinsurance");
        p.initial_reinsurer_capital = read<double>(n, "initial_capital", "reinsurance");
    }
    else
    {
        throw ValidationError("missing config section 'reinsurance'");
    }
    config.reinsurance.risk_loading = config.premium.risk_loading;

    if (auto const n = root["capital"])
    {
        check_keys(n, "capital", {"target_ratio", "calibration_draws"});
        config.capital.target_ratio = read_or(n, "target_ratio", "capital", config.capital.target_ratio);
        config.capital.calibration_draws = read_or(n, "calibration_draws", "capital", config.capital.calibration_draws);
    }

    validate(config);
    return config;
}

RunConfig load_run_config(std::filesystem::path const& path, std::optional<std::string> const& only_scenario)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError(fmt::format("cannot open config {}", path.string()));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str(), path.parent_path(), only_scenario);
}

}  // namespace climadfa
