#include "climadfa/random.hpp"

#include <cmath>

namespace climadfa {

std::uint64_t derive_path_seed(std::uint64_t master_seed,
                               std::uint64_t scenario_index,
                               std::uint64_t path_index) noexcept
{
    std::uint64_t const prefix
        = splitmix64(master_seed ^ splitmix64(scenario_index));
    return splitmix64(prefix + path_index);
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

RandomStream RandomStream::substream(std::uint64_t tag) const
{
    return RandomStream(splitmix64(seed_ ^ splitmix64(tag ^ 0x5bd1e995ULL)));
}

RandomStream RandomStream::substream(std::string_view tag) const
{
    return substream(hash_tag(tag));
}

double RandomStream::uniform()
{
    return std::generate_canonical<double, 53>(engine_);
}

double RandomStream::normal()
{
    return normal_(engine_);
}

double RandomStream::normal(double mean, double sigma)
{
    return mean + sigma * normal_(engine_);
}

double RandomStream::lognormal(double log_location, double log_sigma)
{
    return std::exp(log_location + log_sigma * normal_(engine_));
}

std::uint64_t RandomStream::poisson(double mean)
{
    if (!(mean > 0.0))
        return 0;
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(engine_);
}

double RandomStream::gamma(double shape, double scale)
{
    std::gamma_distribution<double> dist(shape, scale);
    return dist(engine_);
}

std::size_t RandomStream::index(std::size_t n)
{
    std::uniform_int_distribution<std::size_t> dist(0, n - 1);
    return dist(engine_);
}

}  // namespace climadfa
