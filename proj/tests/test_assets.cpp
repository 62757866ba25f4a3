#include <doctest.h>

#include "climadfa/assets.hpp"
#include "climadfa/errors.hpp"

using namespace climadfa;

TEST_CASE("consumption after damage")
{
    CHECK(consumption_after_damage(1000, 1.22, 10).value == doctest::Approx(987.8).epsilon(1e-14));
    CHECK(consumption_after_damage(1000, 0, 500).value == 1000);
    CHECK(consumption_after_damage(1000, 1.22, 0).value == 1000);
    CHECK_FALSE(consumption_after_damage(1000, 1.22, 10).wipeout);
    CHECK(consumption_after_damage(1000, 1.22, 1000).wipeout);
}

TEST_CASE("sector return chain")
{
    EquityParams p;
    p.op_sigma = 0.0;
    p.x_sigma = 0.0;
    auto r = sector_returns(0.04, 0.03, 0.0, p, {});
    CHECK(r.operating_growth == doctest::Approx(0.11472).epsilon(1e-12));
    CHECK(r.general - 0.04 == doctest::Approx(0.047 * 0.11472).epsilon(1e-10));
    CHECK(r.general - 0.04 == doctest::Approx(0.005392).epsilon(1e-4));

    // Consumption growth giving an operating growth of exactly 0.05.
    auto b = sector_returns(0.0, 0.05 / 3.824, -0.10, p, {});
    CHECK(b.brown_operating_growth == doctest::Approx(-0.1268).epsilon(1e-12));
    CHECK(b.brown == doctest::Approx(0.047 * -0.1268).epsilon(1e-10));

    EquityParams zero{0, 3.824, 0, 0, 0.047, 0, 1.768};
    auto z = sector_returns(0.03, 0.0, 0.0, zero, {});
    CHECK(z.general == 0.03);
    CHECK(z.brown == 0.03);
}

TEST_CASE("sector shocks enter with their sigmas")
{
    EquityParams p;
    auto r = sector_returns(0.0, 0.0, 0.0, p, {1.0, 0.0});
    CHECK(r.operating_growth == doctest::Approx(p.op_sigma));
    auto s = sector_returns(0.0, 0.0, 0.0, p, {0.0, 1.0});
    CHECK(s.general == doctest::Approx(p.x_sigma));
    CHECK(s.brown == doctest::Approx(p.x_sigma));
}

TEST_CASE("portfolio return")
{
    PortfolioParams all_rf{1.0, 0.0};
    CHECK(portfolio_return(0.04, 0.5, -0.3, all_rf) == 0.04);
    CHECK(portfolio_return(0.04, 0.08, 0.02, {0.6, 0.03}) == doctest::Approx(0.0542).epsilon(1e-12));
    CHECK(portfolio_return(0.05, 0.05, 0.05, {0.6, 0.03}) == doctest::Approx(0.05).epsilon(1e-14));
}

TEST_CASE("asset parameter validation")
{
    CHECK_THROWS_AS(validate(PortfolioParams{0.9, 0.2}), ValidationError);
    CHECK_THROWS_AS(validate(PortfolioParams{-0.1, 0.0}), ValidationError);
    EquityParams p;
    p.x_sigma = -1.0;
    CHECK_THROWS_AS(validate(p), ValidationError);
}
