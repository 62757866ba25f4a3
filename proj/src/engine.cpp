#include "climadfa/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include <fmt/format.h>

#include "climadfa/assets.hpp"
#include "climadfa/errors.hpp"
#include "climadfa/loss_bank.hpp"
#include "climadfa/random.hpp"

namespace climadfa {

std::string_view to_string(Stage stage)
{
    switch (stage)
    {
    case Stage::climate: return "climate";
    case Stage::hazards: return "hazards";
    case Stage::macro: return "macro";
    case Stage::assets: return "assets";
    case Stage::liabilities: return "liabilities";
    case Stage::reinsurer: return "reinsurer";
    case Stage::surplus: return "surplus";
    }
    return "unknown";
}

namespace {

constexpr std::uint64_t kBankDomain = hash_tag("layer-bank");
constexpr std::uint64_t kCalibrationDomain = hash_tag("capital-calibration");

//! Run `task(i)` for i in [0, n) on `workers` threads. The failure of the
//! lowest index is rethrown after all threads stop.
void parallel_for(std::size_t n, std::size_t workers, std::function<void(std::size_t)> const& task)
{
    workers = std::max<std::size_t>(1, std::min(workers, n));
    if (workers == 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex mutex;
    std::size_t failed_index = n;
    std::exception_ptr failure;
    auto body = [&] {
        for (;;)
        {
            std::size_t const i = next.fetch_add(1);
            if (i >= n || failed.load())
                return;
            try
            {
                task(i);
            }
            catch (...)
            {
                std::lock_guard lock(mutex);
                if (i < failed_index)
                {
                    failed_index = i;
                    failure = std::current_exception();
                }
                failed.store(true);
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        threads.emplace_back(body);
    for (auto& t : threads)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

//! Distinct layer terms shared by insurers with identical contracts.
struct LayerClasses
{
    std::vector<Layer> layers;
    std::vector<std::size_t> of_insurer;
};

LayerClasses layer_classes(std::vector<InsurerSpec> const& market)
{
    LayerClasses out;
    for (auto const& insurer : market)
    {
        Layer const layer{insurer.market_share, insurer.xol_excess, insurer.xol_limit};
        auto it = std::find_if(out.layers.begin(), out.layers.end(), [&](Layer const& l) {
            return l.share == layer.share && l.excess == layer.excess && l.limit == layer.limit;
        });
        if (it == out.layers.end())
        {
            out.layers.push_back(layer);
            out.of_insurer.push_back(out.layers.size() - 1);
        }
        else
        {
            out.of_insurer.push_back(static_cast<std::size_t>(it - out.layers.begin()));
        }
    }
    return out;
}

//! Read-only state shared by every unit of a run.
struct RunContext
{
    RunConfig const& config;
    std::vector<std::string> variables;
    BankLayout layout;
    LayerMomentBank bank;
    LayerClasses classes;
    StageObserver observer;

    RunContext(RunConfig const& cfg, StageObserver obs)
        : config(cfg),
          variables(cfg.required_variables()),
          layout(bank_layout(std::span<HazardModel const>(cfg.hazards))),
          bank(layout.sigmas(), cfg.premium.inner_samples, cfg.premium.layer_bank_depth,
               splitmix64(cfg.master_seed ^ kBankDomain)),
          classes(layer_classes(cfg.market)),
          observer(std::move(obs))
    {
    }
};

//! Per-thread scratch buffers.
struct Workspace
{
    std::vector<double> totals;
    std::vector<HazardYear> hazard_years;
    std::vector<SampleMoments> layer_moments;
};

struct PathState
{
    double inflation = 0.0;
    double real_resid = 0.0;
    double cpi = 1.0;
    double consumption = 0.0;
    double reinsurer_capital = 0.0;
    double prev_solvency = 0.0;
    bool wipeout = false;
    std::vector<double> capital;
};

//! What one projected year produced, per insurer where applicable.
struct YearOutcome
{
    double investment_return = 0.0;
    double market_claims = 0.0;
    std::vector<double> premium_net;
    std::vector<double> losses;
};

class PathSimulator
{
  public:
    PathSimulator(RunContext const& ctx,
                  ScenarioSpec const& scenario,
                  std::size_t scenario_index,
                  std::size_t path_index,
                  std::uint64_t seed,
                  int last_year,
                  bool observe)
        : ctx_(ctx),
          observe_(observe),
          scenario_(scenario),
          scenario_index_(scenario_index),
          path_index_(path_index),
          root_(seed),
          inflation_rng_(root_.substream("inflation")),
          rate_rng_(root_.substream("real_rate")),
          equity_rng_(root_.substream("equity")),
          noncat_rng_(root_.substream("noncat"))
    {
        auto const& cfg = ctx_.config;
        trajectory_ = simulate_climate_path(scenario.ensemble, ctx_.variables, cfg.start_year, last_year,
                                            root_.substream("climate"));
        notify(Stage::climate, cfg.start_year);
        hazard_rngs_.reserve(cfg.hazards.size());
        for (auto const& h : cfg.hazards)
            hazard_rngs_.push_back(root_.substream(fmt::format("hazard/{}", to_string(h.id))));
    }

    PathState initial_state(std::vector<double> const& capital) const
    {
        auto const& cfg = ctx_.config;
        PathState s;
        s.inflation = cfg.initial_inflation;
        s.real_resid = cfg.initial_real_resid;
        s.cpi = 1.0;
        s.consumption = scenario_.gdp.annual(cfg.start_year);
        s.reinsurer_capital = cfg.reinsurance.initial_reinsurer_capital;
        s.prev_solvency = cfg.reinsurance.reference_solvency;
        s.capital = capital;
        return s;
    }

    //! Advance one year (t >= 1) and update insurer capital.
    void step(std::size_t t, PathState& s, YearOutcome& out, Workspace& ws)
    {
        int const year = ctx_.config.start_year + static_cast<int>(t);
        try
        {
            step_impl(year, s, out, ws);
        }
        catch (SimulationError const&)
        {
            throw;
        }
        catch (std::exception const& e)
        {
            throw SimulationError(fmt::format("scenario {}, path {}, year {}: {}", scenario_.scenario_id,
                                              path_index_, year, e.what()));
        }
    }

  private:
    void notify(Stage stage, int year) const
    {
        if (observe_ && ctx_.observer)
            ctx_.observer(stage, scenario_index_, path_index_, year);
    }

    void fail(int year, std::string const& what) const
    {
        throw SimulationError(fmt::format("scenario {}, path {}, year {}: {}", scenario_.scenario_id, path_index_,
                                          year, what));
    }

    void step_impl(int year, PathState& s, YearOutcome& out, Workspace& ws)
    {
        auto const& cfg = ctx_.config;
        auto const n_insurers = cfg.market.size();

        // Hazards: normalised market catastrophe loss.
        double market_normalised = 0.0;
        for (std::size_t h = 0; h < cfg.hazards.size(); ++h)
        {
            auto const losses = simulate_annual_hazard_losses(cfg.hazards[h], trajectory_, year, hazard_rngs_[h]);
            for (double x : losses)
                market_normalised += x;
        }
        notify(Stage::hazards, year);

        // Macro: inflation, CPI, real and nominal rates.
        double const overlay = cfg.overlay_enabled()
                                   ? annual_inflation_overlay(trajectory_.series(cfg.temperature_variable), year,
                                                              cfg.inflation)
                                   : 0.0;
        auto const infl = step_inflation(s.inflation, cfg.inflation, inflation_rng_.normal(), overlay);
        if (!(1.0 + infl.adjusted > 0.0))
            fail(year, fmt::format("inflation {} drives the price index non-positive", infl.adjusted));
        s.inflation = infl.base;
        s.cpi *= 1.0 + infl.adjusted;
        double const growth = scenario_.potential_growth.annual(year);
        auto const rate = step_real_rate(growth, s.real_resid, cfg.real_rate, rate_rng_.normal());
        s.real_resid = rate.resid;
        double const nominal = nominal_rate(rate.real_rate, infl.adjusted);
        notify(Stage::macro, year);

        // Assets: damaged consumption drives equity returns.
        double const gdp_ratio = scenario_.gdp.annual(year) / scenario_.gdp.annual(cfg.start_year);
        double const index = s.cpi * gdp_ratio;
        double const market_nominal = denormalize_loss(market_normalised, s.cpi, gdp_ratio);
        auto const consumption = consumption_after_damage(scenario_.gdp.annual(year), cfg.uninsured_ratio,
                                                          market_normalised * gdp_ratio);
        double consumption_growth = 0.0;
        if (consumption.wipeout)
        {
            s.wipeout = true;
            consumption_growth = -1.0;
        }
        else if (s.consumption > 0.0)
        {
            consumption_growth = consumption.value / s.consumption - 1.0;
        }
        s.consumption = consumption.value;
        double const brown_growth
            = scenario_.brown_production.annual(year) / scenario_.brown_production.annual(year - 1) - 1.0;
        auto const sectors = simulate_sector_returns(nominal, consumption_growth, brown_growth, cfg.equity, equity_rng_);
        double const r = portfolio_return(nominal, sectors.general, sectors.brown, cfg.portfolio);
        if (!std::isfinite(r) || !(1.0 + r > 0.0))
            fail(year, fmt::format("investment return {} is not usable", r));
        out.investment_return = r;
        notify(Stage::assets, year);

        // Liabilities and premiums.
        int const covariate_year = cfg.premium.use_prior_year_covariates ? year - 1 : year;
        ws.hazard_years.resize(cfg.hazards.size());
        for (std::size_t h = 0; h < cfg.hazards.size(); ++h)
        {
            ws.hazard_years[h].periods = hazard_year_params(cfg.hazards[h], trajectory_, covariate_year);
            ws.hazard_years[h].sev_sigma = cfg.hazards[h].sev_sigma;
        }
        auto const cells = ctx_.layout.cell_params(ws.hazard_years);
        ws.totals.resize(ctx_.bank.samples());
        ctx_.bank.aggregate(cells, ws.totals);
        ws.layer_moments.resize(ctx_.classes.layers.size());
        layer_sample_moments(ws.totals, ctx_.classes.layers, ws.layer_moments);
        auto const market_cat = analytic_cat_moments(ws.hazard_years, 1.0);

        double const population = scenario_.population.annual(year);
        double const uplift_solvency = s.prev_solvency;
        double ri_premiums = 0.0;
        double recoveries = 0.0;
        double claims = market_nominal;
        out.premium_net.resize(n_insurers);
        out.losses.resize(n_insurers);
        for (std::size_t j = 0; j < n_insurers; ++j)
        {
            auto const& insurer = cfg.market[j];
            auto const& layer_sample = ws.layer_moments[ctx_.classes.of_insurer[j]];
            double const layer_mean = layer_sample.layer_mean * index;
            double const layer_var = layer_sample.layer_var * index * index;

            double gross;
            if (insurer.fixed_premium)
            {
                gross = *insurer.fixed_premium * s.cpi;
            }
            else
            {
                double const share = insurer.market_share;
                auto const noncat = noncat_premium_moments(population, cfg.noncat, share, s.cpi);
                gross = gross_premium(share * market_cat.mean * index, share * share * market_cat.var * index * index,
                                      noncat.mean, noncat.var, cfg.premium.risk_loading);
            }
            double const ri = reinsurance_premium(layer_mean, layer_var, cfg.premium.risk_loading, uplift_solvency,
                                                  cfg.reinsurance);
            auto const split = net_cat_loss(market_nominal, insurer, insurer.xol_excess * index,
                                            insurer.xol_limit * index);
            double noncat_loss = 0.0;
            if (cfg.noncat.enabled)
            {
                double const unit = simulate_noncat_loss(cfg.noncat, noncat_rng_);
                noncat_loss = scaled_noncat_loss(unit, population, cfg.noncat, insurer.market_share, s.cpi);
            }
            claims += noncat_loss;
            ri_premiums += ri;
            recoveries += split.recovery;
            out.premium_net[j] = gross - ri;
            out.losses[j] = split.net + noncat_loss;
        }
        out.market_claims = claims;
        notify(Stage::liabilities, year);

        // Reinsurer: capital recursion and next year's solvency ratio.
        s.reinsurer_capital = reinsurer_capital(s.reinsurer_capital, ri_premiums, recoveries, r);
        s.prev_solvency = ri_premiums > 0.0 ? s.reinsurer_capital / ri_premiums : cfg.reinsurance.reference_solvency;
        notify(Stage::reinsurer, year);

        // Surplus.
        for (std::size_t j = 0; j < n_insurers && !s.capital.empty(); ++j)
        {
            s.capital[j] = step_insurer_surplus(s.capital[j], out.premium_net[j], r, out.losses[j]);
            if (!std::isfinite(s.capital[j]))
                fail(year, fmt::format("capital of insurer {} is not finite", cfg.market[j].insurer_id));
        }
        if (!std::isfinite(s.reinsurer_capital))
            fail(year, "reinsurer capital is not finite");
        notify(Stage::surplus, year);
    }

    RunContext const& ctx_;
    bool observe_;
    ScenarioSpec const& scenario_;
    std::size_t scenario_index_;
    std::size_t path_index_;
    RandomStream root_;
    RandomStream inflation_rng_;
    RandomStream rate_rng_;
    RandomStream equity_rng_;
    RandomStream noncat_rng_;
    std::vector<RandomStream> hazard_rngs_;
    ClimateTrajectory trajectory_;
};

std::vector<CapitalCalibration> calibrate_scenario_capital(RunContext const& ctx,
                                                           ScenarioSpec const& scenario,
                                                           std::size_t scenario_index,
                                                           std::size_t workers)
{
    auto const& cfg = ctx.config;
    auto const n_insurers = cfg.market.size();
    std::vector<CapitalCalibration> out(n_insurers);
    bool const any = std::any_of(cfg.market.begin(), cfg.market.end(),
                                 [](InsurerSpec const& i) { return !i.initial_capital; });
    if (any)
    {
        auto const n = cfg.capital.calibration_draws;
        std::vector<OneYearDraw> draws(n * n_insurers);
        std::uint64_t const domain = splitmix64(cfg.master_seed ^ kCalibrationDomain);
        parallel_for(n, workers, [&](std::size_t i) {
            thread_local Workspace ws;
            PathSimulator sim(ctx, scenario, scenario_index, i, derive_path_seed(domain, scenario_index, i),
                              cfg.start_year + 1, false);
            auto state = sim.initial_state({});
            YearOutcome year;
            sim.step(1, state, year, ws);
            for (std::size_t j = 0; j < n_insurers; ++j)
                draws[j * n + i] = {year.losses[j], year.premium_net[j], year.investment_return};
        });
        for (std::size_t j = 0; j < n_insurers; ++j)
        {
            if (cfg.market[j].initial_capital)
                continue;
            out[j] = calibrate_initial_capital(std::span<OneYearDraw const>(draws.data() + j * n, n),
                                               cfg.capital.target_ratio);
        }
    }
    for (std::size_t j = 0; j < n_insurers; ++j)
    {
        if (auto const k0 = cfg.market[j].initial_capital)
            out[j] = {*k0, *k0};
    }
    return out;
}

}  // namespace

SimulationResult run_simulation(RunConfig const& config, SimulationOptions const& options)
{
    validate(config);
    std::size_t const workers = options.workers > 0 ? options.workers : config.workers;
    RunContext const ctx(config, options.observer);
    auto const horizon = config.horizon();

    SimulationResult result;
    for (std::size_t s = 0; s < config.scenarios.size(); ++s)
    {
        auto const& scenario = config.scenarios[s];
        ScenarioResult sr;
        sr.scenario_id = scenario.scenario_id;
        sr.initial_capital = calibrate_scenario_capital(ctx, scenario, s, workers);
        std::vector<double> k0;
        for (auto const& c : sr.initial_capital)
            k0.push_back(c.capital);

        sr.paths = SurplusPaths(config.start_year, horizon, config.n_paths);
        std::vector<unsigned char> wipeouts(config.n_paths, 0);
        parallel_for(config.n_paths, workers, [&](std::size_t p) {
            thread_local Workspace ws;
            PathSimulator sim(ctx, scenario, s, p, derive_path_seed(config.master_seed, s, p), config.end_year,
                              true);
            auto state = sim.initial_state(k0);
            double market = 0.0;
            for (double k : state.capital)
                market += k;
            sr.paths.capital_at(p, 0) = market;
            YearOutcome year;
            for (std::size_t t = 1; t <= horizon; ++t)
            {
                sim.step(t, state, year, ws);
                market = 0.0;
                for (double k : state.capital)
                    market += k;
                sr.paths.capital_at(p, t) = market;
                sr.paths.claims_at(p, t) = year.market_claims;
            }
            wipeouts[p] = state.wipeout ? 1 : 0;
        });
        sr.wipeout_paths = static_cast<std::size_t>(std::count(wipeouts.begin(), wipeouts.end(), 1));
        result.report.scenarios.push_back(compute_risk_report(sr.scenario_id, sr.paths, config.cagr_horizons));
        result.scenarios.push_back(std::move(sr));
    }
    return result;
}

}  // namespace climadfa
