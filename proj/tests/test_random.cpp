#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "climadfa/random.hpp"

using namespace climadfa;

TEST_CASE("splitmix64 matches the reference generator output")
{
    // First outputs of the reference SplitMix64 generator started at state 0.
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
    CHECK(splitmix64(0x9e3779b97f4a7c15ULL) == 0x6e789e6aa1b965f4ULL);
}

TEST_CASE("hash_tag is 64-bit FNV-1a")
{
    CHECK(hash_tag("") == 0xcbf29ce484222325ULL);
    CHECK(hash_tag("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(hash_tag("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("derive_path_seed is deterministic")
{
    CHECK(derive_path_seed(42, 3, 7) == derive_path_seed(42, 3, 7));
    CHECK(derive_path_seed(42, 3, 7) != derive_path_seed(43, 3, 7));
}

TEST_CASE("derive_path_seed separates neighbouring paths for many master seeds")
{
    RandomStream rng(99);
    for (int i = 0; i < 1000000; ++i)
    {
        auto const s = rng.engine()();
        if (derive_path_seed(s, 0, 0) == derive_path_seed(s, 0, 1))
            FAIL("collision for master seed " << s);
    }
}

TEST_CASE("derive_path_seed gives distinct seeds across scenarios and paths")
{
    std::vector<std::uint64_t> seeds;
    seeds.reserve(2000000);
    for (std::uint64_t s = 0; s < 1000000; ++s)
        seeds.push_back(derive_path_seed(20240601, s, 0));
    for (std::uint64_t p = 0; p < 1000000; ++p)
        seeds.push_back(derive_path_seed(20240601, 1, p + 1));
    std::sort(seeds.begin(), seeds.end());
    CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
}

TEST_CASE("sub-streams do not depend on how much the parent has drawn")
{
    RandomStream a(5);
    RandomStream b(5);
    for (int i = 0; i < 100; ++i)
        b.normal();
    auto sa = a.substream("hazard/flood");
    auto sb = b.substream("hazard/flood");
    for (int i = 0; i < 10; ++i)
        CHECK(sa.normal() == sb.normal());
    CHECK(a.substream("x").seed() != a.substream("y").seed());
    CHECK(a.substream(1).seed() != a.substream(2).seed());
}

TEST_CASE("poisson of a non-positive mean is zero")
{
    RandomStream rng(1);
    CHECK(rng.poisson(0.0) == 0);
    CHECK(rng.poisson(-1.0) == 0);
}

TEST_CASE("uniform draws lie in [0, 1)")
{
    RandomStream rng(3);
    for (int i = 0; i < 10000; ++i)
    {
        double const u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}
