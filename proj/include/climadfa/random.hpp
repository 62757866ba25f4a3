#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace climadfa {

//! SplitMix64 finaliser: a bijective 64-bit avalanche mix.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

//! FNV-1a hash of a tag string, used to name sub-streams.
constexpr std::uint64_t hash_tag(std::string_view tag) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : tag)
    {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/*!
 * Seed for one (scenario, path) simulation unit.
 *
 * seed = mix(mix(master ^ mix(scenario)) + path). Each stage is a bijection
 * of the varying argument, so for a fixed master seed distinct scenario
 * indices give distinct prefixes and distinct path indices give distinct
 * seeds; no two units of the same run can share a stream.
 */
std::uint64_t derive_path_seed(std::uint64_t master_seed,
                               std::uint64_t scenario_index,
                               std::uint64_t path_index) noexcept;

/*!
 * A reproducible random stream.
 *
 * Wraps a 64-bit Mersenne twister. Sub-streams are derived from the seed and
 * a tag only, never from the current engine state, so the order in which
 * consumers draw does not change what any other consumer sees.
 */
class RandomStream
{
  public:
    explicit RandomStream(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }

    RandomStream substream(std::uint64_t tag) const;
    RandomStream substream(std::string_view tag) const;

    double uniform();
    double normal();
    double normal(double mean, double sigma);
    double lognormal(double log_location, double log_sigma);
    //! Poisson count; a zero or non-positive mean always yields zero.
    std::uint64_t poisson(double mean);
    double gamma(double shape, double scale);
    //! Uniform integer in [0, n).
    std::size_t index(std::size_t n);

    std::mt19937_64& engine() noexcept { return engine_; }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace climadfa
