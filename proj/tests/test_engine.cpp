#include <doctest.h>

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "climadfa/engine.hpp"
#include "climadfa/errors.hpp"
#include "climadfa/report_io.hpp"
#include "support.hpp"

using namespace climadfa;

TEST_CASE("deterministic run follows the annuity closed form")
{
    double const r = 0.04;
    double const premium = 25.0;
    double const k0 = 1000.0;
    int const years = 40;
    auto const cfg = testing::deterministic_config(r, premium, k0, years);
    auto const result = run_simulation(cfg);
    REQUIRE(result.scenarios.size() == 1);
    auto const& paths = result.scenarios[0].paths;
    auto const n = static_cast<double>(cfg.market.size());
    for (int t = 0; t <= years; ++t)
    {
        double expected = std::pow(1.0 + r, t) * n * k0;
        for (int s = 1; s <= t; ++s)
            expected += n * premium * std::pow(1.0 + r, t - s + 1);
        CHECK(testing::close_rel(paths.capital_at(0, static_cast<std::size_t>(t)), expected, 1e-9));
    }
    CHECK(paths.claims_at(0, 1) == 0.0);
}

TEST_CASE("output does not depend on the worker count")
{
    auto cfg = testing::small_config(24);
    auto const one = run_simulation(cfg, {1, {}});
    auto const many = run_simulation(cfg, {4, {}});
    REQUIRE(one.scenarios.size() == many.scenarios.size());
    CHECK(one.scenarios[0].paths.capital == many.scenarios[0].paths.capital);
    CHECK(one.scenarios[0].paths.claims == many.scenarios[0].paths.claims);
    CHECK(format_risk_report(one.report) == format_risk_report(many.report));
    CHECK(format_cagr(one.report) == format_cagr(many.report));

    cfg.master_seed += 1;
    auto const other = run_simulation(cfg, {1, {}});
    CHECK(other.scenarios[0].paths.capital != one.scenarios[0].paths.capital);
}

TEST_CASE("initial capital calibration is deterministic across workers")
{
    auto cfg = testing::small_config(4);
    cfg.end_year = cfg.start_year + 2;
    for (auto& i : cfg.market)
        i.initial_capital.reset();
    auto const one = run_simulation(cfg, {1, {}});
    auto const two = run_simulation(cfg, {3, {}});
    REQUIRE(one.scenarios[0].initial_capital.size() == 3);
    for (std::size_t j = 0; j < 3; ++j)
    {
        CHECK(one.scenarios[0].initial_capital[j].capital == two.scenarios[0].initial_capital[j].capital);
        CHECK(one.scenarios[0].initial_capital[j].capital > 0.0);
        CHECK(one.scenarios[0].initial_capital[j].capital
              == doctest::Approx(1.75 * one.scenarios[0].initial_capital[j].base));
    }
    double market = 0.0;
    for (auto const& c : one.scenarios[0].initial_capital)
        market += c.capital;
    CHECK(one.scenarios[0].paths.capital_at(0, 0) == doctest::Approx(market));
}

TEST_CASE("stages run in dependency order within every year")
{
    auto cfg = testing::small_config(3);
    cfg.end_year = cfg.start_year + 4;
    std::mutex mutex;
    std::map<std::size_t, std::vector<std::pair<Stage, int>>> seen;
    SimulationOptions options;
    options.workers = 2;
    options.observer = [&](Stage stage, std::size_t, std::size_t path, int year) {
        std::lock_guard lock(mutex);
        seen[path].push_back({stage, year});
    };
    run_simulation(cfg, options);
    REQUIRE(seen.size() == 3);
    std::vector<Stage> const order{Stage::hazards, Stage::macro, Stage::assets, Stage::liabilities,
                                   Stage::reinsurer, Stage::surplus};
    for (auto const& [path, events] : seen)
    {
        REQUIRE(events.size() == 1 + 4 * order.size());
        CHECK(events[0].first == Stage::climate);
        CHECK(events[0].second == cfg.start_year);
        for (std::size_t t = 0; t < 4; ++t)
        {
            for (std::size_t k = 0; k < order.size(); ++k)
            {
                auto const& e = events[1 + t * order.size() + k];
                CHECK(e.first == order[k]);
                CHECK(e.second == cfg.start_year + 1 + static_cast<int>(t));
            }
        }
    }
}

TEST_CASE("numeric failures name the scenario, path and year")
{
    auto cfg = testing::small_config(2);
    cfg.initial_inflation = -2.0;
    cfg.inflation.sigma = 0.0;
    try
    {
        run_simulation(cfg, {2, {}});
        FAIL("expected a simulation error");
    }
    catch (SimulationError const& e)
    {
        std::string const what = e.what();
        CHECK(what.find("scenario flat, path 0, year 2021") != std::string::npos);
    }
}

TEST_CASE("invalid configs fail before simulating")
{
    auto cfg = testing::small_config(2);
    cfg.market[1].market_share = 0.1;
    bool observed = false;
    SimulationOptions options;
    options.observer = [&](Stage, std::size_t, std::size_t, int) { observed = true; };
    CHECK_THROWS_AS(run_simulation(cfg, options), ValidationError);
    CHECK_FALSE(observed);
}

TEST_CASE("claims and capital stay finite in a stochastic run")
{
    auto const result = run_simulation(testing::small_config(40));
    auto const& paths = result.scenarios[0].paths;
    for (double k : paths.capital)
        CHECK(std::isfinite(k));
    double total_claims = 0.0;
    for (double c : paths.claims)
    {
        CHECK(c >= 0.0);
        total_claims += c;
    }
    CHECK(total_claims > 0.0);
    REQUIRE(result.report.scenarios.size() == 1);
    CHECK(result.report.scenarios[0].years.size() == 10);
}
