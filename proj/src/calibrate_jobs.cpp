#include "climadfa/calibrate_jobs.hpp"

#include <map>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "climadfa/calibration.hpp"
#include "climadfa/csv.hpp"
#include "climadfa/errors.hpp"
#include "climadfa/hazard.hpp"
#include "climadfa/timeseries.hpp"

namespace climadfa {

namespace {

std::string text(YAML::Node const& job, char const* key, std::string const& name)
{
    if (!job[key])
        throw ValidationError(fmt::format("calibration job '{}' lacks '{}'", name, key));
    return job[key].as<std::string>();
}

std::vector<std::string> list(YAML::Node const& job, char const* key)
{
    if (!job[key])
        return {};
    return job[key].as<std::vector<std::string>>();
}

std::vector<double> column_values(CsvTable const& table, std::string const& name)
{
    auto const col = table.column(name);
    std::vector<double> out(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r)
        out[r] = table.number(r, col);
    return out;
}

Design design_from(CsvTable const& table, std::vector<std::string> const& covariates)
{
    Design d;
    d.x.resize(static_cast<Eigen::Index>(table.rows.size()), static_cast<Eigen::Index>(covariates.size()));
    for (std::size_t j = 0; j < covariates.size(); ++j)
    {
        auto const values = column_values(table, covariates[j]);
        for (std::size_t r = 0; r < values.size(); ++r)
            d.x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = values[r];
    }
    d.names = covariates;
    return d;
}

void append_fit(std::vector<CalibrationRow>& rows, std::string const& model, FitResult const& fit)
{
    for (std::size_t i = 0; i < fit.coefficients.size(); ++i)
    {
        rows.push_back({model, fit.coefficients[i].name, fit.coefficients[i].value, fit.standard_errors[i].value,
                        fit.aic, fit.bic, fit.n_obs});
    }
}

//! Values keyed by period, from a `period,...` table column.
std::map<Period, double> keyed_column(CsvTable const& table, std::string const& name)
{
    auto const pc = table.column("period");
    auto const vc = table.column(name);
    std::map<Period, double> out;
    for (std::size_t r = 0; r < table.rows.size(); ++r)
        out[parse_period(table.rows[r][pc])] = table.number(r, vc);
    return out;
}

void severity_job(std::vector<CalibrationRow>& rows,
                  std::string const& name,
                  YAML::Node const& job,
                  std::filesystem::path const& dir)
{
    auto const losses = read_csv(dir / text(job, "file", name));
    auto const hazard = job["hazard"] ? std::optional(job["hazard"].as<std::string>()) : std::nullopt;
    auto const covariates = list(job, "covariates");
    std::optional<CsvTable> cov_table;
    if (!covariates.empty())
        cov_table = read_csv(dir / text(job, "covariates_file", name));

    std::vector<std::map<Period, double>> cov_values;
    bool monthly = false;
    if (cov_table)
    {
        for (auto const& c : covariates)
            cov_values.push_back(keyed_column(*cov_table, c));
        if (!cov_values.front().empty())
            monthly = cov_values.front().begin()->first.is_monthly();
    }

    auto const date_c = losses.column("event_date");
    auto const hazard_c = losses.column("hazard_id");
    auto const loss_c = losses.column("nominal_loss");
    auto const cpi_c = losses.column("cpi_index");
    auto const gdp_c = losses.column("real_gdp_index");

    std::vector<double> normalised;
    std::vector<std::vector<double>> x;
    for (std::size_t r = 0; r < losses.rows.size(); ++r)
    {
        if (hazard && losses.rows[r][hazard_c] != *hazard)
            continue;
        auto period = parse_period(losses.rows[r][date_c]);
        if (!monthly)
            period.month = 0;
        normalised.push_back(normalize_loss(losses.number(r, loss_c), losses.number(r, cpi_c), losses.number(r, gdp_c)));
        std::vector<double> row;
        for (std::size_t j = 0; j < covariates.size(); ++j)
        {
            auto it = cov_values[j].find(period);
            if (it == cov_values[j].end())
                throw ValidationError(fmt::format("calibration job '{}': no {} value for {}", name, covariates[j],
                                                  format_period(period)));
            row.push_back(it->second);
        }
        x.push_back(std::move(row));
    }
    if (normalised.empty())
        throw ValidationError(fmt::format("calibration job '{}': no loss events selected", name));
    Design d;
    d.names = covariates;
    d.x.resize(static_cast<Eigen::Index>(x.size()), static_cast<Eigen::Index>(covariates.size()));
    for (std::size_t r = 0; r < x.size(); ++r)
    {
        for (std::size_t j = 0; j < covariates.size(); ++j)
            d.x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = x[r][j];
    }
    append_fit(rows, name, fit_lognormal_location(normalised, d));
}

void quantile_map_job(std::vector<CalibrationRow>& rows,
                      std::string const& name,
                      YAML::Node const& job,
                      std::filesystem::path const& dir)
{
    auto const hist_table = read_csv(dir / text(job, "historical", name));
    auto const back_table = read_csv(dir / text(job, "backcast", name));
    auto const hist = keyed_column(hist_table, "value");
    auto const back = keyed_column(back_table, "value");

    std::vector<double> h, b;
    for (auto const& [period, value] : hist)
    {
        auto it = back.find(period);
        if (it == back.end())
            continue;
        h.push_back(value);
        b.push_back(it->second);
    }
    if (h.empty())
        throw ValidationError(fmt::format("calibration job '{}': series share no periods", name));
    auto const grid = job["quantile_grid"] ? job["quantile_grid"].as<std::vector<double>>() : default_quantile_grid();
    auto const map = fit_affine_quantile_map(h, b, grid);
    std::vector<double> corrected(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        corrected[i] = map.intercept + map.slope * b[i];
    double const sigma = fit_residual_sigma(h, corrected);
    rows.push_back({name, "intercept", map.intercept, std::nullopt, std::nullopt, std::nullopt, h.size()});
    rows.push_back({name, "slope", map.slope, std::nullopt, std::nullopt, std::nullopt, h.size()});
    rows.push_back({name, "sigma", sigma, std::nullopt, std::nullopt, std::nullopt, h.size()});
}

}  // namespace

std::vector<CalibrationRow> run_calibration_jobs(std::filesystem::path const& config,
                                                 std::filesystem::path const& data_dir)
{
    YAML::Node root;
    try
    {
        root = YAML::LoadFile(config.string());
    }
    catch (YAML::Exception const& e)
    {
        throw ValidationError(fmt::format("cannot read calibration config {}: {}", config.string(), e.what()));
    }
    auto const jobs = root["jobs"];
    if (!jobs || !jobs.IsSequence() || jobs.size() == 0)
        throw ValidationError("calibration config needs a non-empty 'jobs' list");

    std::vector<CalibrationRow> rows;
    for (std::size_t i = 0; i < jobs.size(); ++i)
    {
        auto const job = jobs[i];
        auto const name = job["name"] ? job["name"].as<std::string>() : fmt::format("job{}", i + 1);
        auto const type = text(job, "type", name);
        try
        {
            if (type == "poisson_glm")
            {
                auto const table = read_csv(data_dir / text(job, "file", name));
                auto const counts = column_values(table, text(job, "response", name));
                auto const design = design_from(table, list(job, "covariates"));
                if (job["offset"])
                {
                    auto const offset = column_values(table, job["offset"].as<std::string>());
                    append_fit(rows, name, fit_poisson_glm(counts, design, std::span<double const>(offset)));
                }
                else
                {
                    append_fit(rows, name, fit_poisson_glm(counts, design));
                }
            }
            else if (type == "lognormal_severity")
            {
                severity_job(rows, name, job, data_dir);
            }
            else if (type == "ar1")
            {
                auto const table = read_csv(data_dir / text(job, "file", name));
                auto const column = job["column"] ? job["column"].as<std::string>() : std::string("value");
                append_fit(rows, name, fit_ar1(column_values(table, column)));
            }
            else if (type == "ols")
            {
                auto const table = read_csv(data_dir / text(job, "file", name));
                auto const y = column_values(table, text(job, "response", name));
                append_fit(rows, name, fit_ols(y, design_from(table, list(job, "covariates"))));
            }
            else if (type == "quantile_map")
            {
                quantile_map_job(rows, name, job, data_dir);
            }
            else if (type == "tweedie_dispersion")
            {
                auto const table = read_csv(data_dir / text(job, "file", name));
                auto const column = job["column"] ? job["column"].as<std::string>() : std::string("value");
                auto const losses = column_values(table, column);
                double const power = job["power"] ? job["power"].as<double>() : 1.5;
                double mu = 0.0;
                if (job["mu"])
                {
                    mu = job["mu"].as<double>();
                }
                else
                {
                    for (double v : losses)
                        mu += v;
                    mu /= static_cast<double>(losses.size());
                }
                double const phi = fit_tweedie_dispersion(losses, mu, power);
                rows.push_back({name, "mu", mu, std::nullopt, std::nullopt, std::nullopt, losses.size()});
                rows.push_back({name, "dispersion", phi, std::nullopt, std::nullopt, std::nullopt, losses.size()});
            }
            else
            {
                throw ValidationError(fmt::format("unknown calibration job type '{}'", type));
            }
        }
        catch (YAML::Exception const& e)
        {
            throw ValidationError(fmt::format("calibration job '{}': {}", name, e.what()));
        }
    }
    return rows;
}

std::string format_calibration(std::vector<CalibrationRow> const& rows)
{
    auto num = [](std::optional<double> const& v) { return v ? fmt::format("{:.10g}", *v) : std::string("NA"); };
    std::string out = "model,parameter,estimate,std_err,aic,bic,n\n";
    for (auto const& r : rows)
    {
        out += fmt::format("{},{},{:.10g},{},{},{},{}\n", r.model, r.parameter, r.estimate, num(r.std_err), num(r.aic),
                           num(r.bic), r.n);
    }
    return out;
}

}  // namespace climadfa
