#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "climadfa/climate.hpp"
#include "climadfa/errors.hpp"

using namespace climadfa;

namespace {

EnsembleMember flat_member(std::string id, std::string var, double raw, BiasCorrection c, int first, int last)
{
    EnsembleMember m;
    m.model_id = std::move(id);
    auto const n = static_cast<std::size_t>(last - first + 1) * 12;
    m.variables.push_back({std::move(var), c, TimeSeries(Resolution::monthly, first, std::vector<double>(n, raw))});
    return m;
}

}  // namespace

TEST_CASE("bias correction examples")
{
    CHECK(apply_bias_correction(20.0, {0.0, 1.0, 0.0}) == 20.0);
    CHECK(apply_bias_correction(20.0, {2.257, 0.883, 0.0}) == doctest::Approx(19.917).epsilon(1e-12));
    CHECK(apply_bias_correction(0.0, {-3.5, 1.2, 0.0}) == -3.5);
}

TEST_CASE("zero noise reproduces the corrected forecast exactly")
{
    Ensemble e;
    EnsembleMember m;
    m.model_id = "m";
    std::vector<double> raw;
    for (int i = 0; i < 36; ++i)
        raw.push_back(15.0 + 0.1 * i);
    m.variables.push_back({"t_surface", {2.257, 0.883, 0.0}, TimeSeries(Resolution::monthly, 2020, raw)});
    e.members.push_back(m);
    std::vector<std::string> vars{"t_surface"};
    auto traj = simulate_climate_path(e, vars, 2020, 2022, RandomStream(1));
    CHECK(traj.member_id() == "m");
    for (int i = 0; i < 36; ++i)
        CHECK(traj.monthly("t_surface", 2020 + i / 12, i % 12 + 1) == 2.257 + 0.883 * raw[i]);
}

TEST_CASE("residual noise has the configured scale")
{
    int const years = 8334;  // 100008 monthly periods
    Ensemble e;
    e.members.push_back(flat_member("m", "t_surface", 20.0, {2.257, 0.883, 1.271}, 1, years));
    std::vector<std::string> vars{"t_surface"};
    auto traj = simulate_climate_path(e, vars, 1, years, RandomStream(11));
    double const target = 2.257 + 0.883 * 20.0;
    auto const& v = traj.series("t_surface").values();
    double sum = 0.0;
    double ss = 0.0;
    for (double x : v)
    {
        sum += x - target;
        ss += (x - target) * (x - target);
    }
    auto const n = static_cast<double>(v.size());
    double const m = sum / n;
    double const sd = std::sqrt((ss - n * m * m) / (n - 1.0));
    CHECK(std::abs(sd / 1.271 - 1.0) < 0.01);
    CHECK(std::abs(m) < 3.0 * 1.271 / std::sqrt(n));
}

TEST_CASE("members are selected uniformly")
{
    Ensemble e;
    e.members.push_back(flat_member("a", "sst", 20.0, {}, 2020, 2020));
    e.members.push_back(flat_member("b", "sst", 20.0, {}, 2020, 2020));
    std::vector<std::string> vars{"sst"};
    int a = 0;
    int const paths = 10000;
    for (int p = 0; p < paths; ++p)
        if (simulate_climate_path(e, vars, 2020, 2020, RandomStream(derive_path_seed(3, 0, p))).member_id() == "a")
            ++a;
    CHECK(std::abs(a / double(paths) - 0.5) < 0.02);
}

TEST_CASE("missing variables use the fallback member or fail")
{
    Ensemble e;
    e.members.push_back(flat_member("a", "sst", 20.0, {}, 2020, 2020));
    e.members.push_back(flat_member("b", "t_surface", 10.0, {}, 2020, 2020));
    std::vector<std::string> vars{"sst"};
    bool saw_error = false;
    for (std::uint64_t seed = 0; seed < 20 && !saw_error; ++seed)
    {
        try
        {
            simulate_climate_path(e, vars, 2020, 2020, RandomStream(seed));
        }
        catch (MissingVariableError const&)
        {
            saw_error = true;
        }
    }
    CHECK(saw_error);

    e.fallback_member = "a";
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        auto traj = simulate_climate_path(e, vars, 2020, 2020, RandomStream(seed));
        CHECK(traj.monthly("sst", 2020, 5) == 20.0);
    }
}

TEST_CASE("trajectory lookups")
{
    ClimateTrajectory t("m", 2020, 2021);
    t.set("rx5day", TimeSeries(Resolution::annual, 2020, {50.0, 60.0}));
    CHECK(t.has("rx5day"));
    CHECK_FALSE(t.has("sst"));
    CHECK(t.at("rx5day", 2021, 0) == 60.0);
    CHECK(t.at("rx5day", 2021, 4) == 60.0);
    CHECK_THROWS_AS(t.series("sst"), MissingVariableError);
}
