#include "climadfa/stats.hpp"

#include <algorithm>
#include <cmath>

#include "climadfa/errors.hpp"

namespace climadfa {

double quantile_sorted(std::span<double const> sorted, double q)
{
    if (sorted.empty())
        throw DomainError("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0))
        throw DomainError("quantile level outside [0, 1]");
    double const h = (static_cast<double>(sorted.size()) - 1.0) * q;
    auto const lo = static_cast<std::size_t>(std::floor(h));
    auto const hi = std::min(lo + 1, sorted.size() - 1);
    double const frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double quantile(std::span<double const> sample, double q)
{
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    return quantile_sorted(sorted, q);
}

double ordered_sum(std::span<double const> values)
{
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    double sum = 0;
    for (double v : sorted)
        sum += v;
    return sum;
}

double mean(std::span<double const> values)
{
    if (values.empty())
        throw DomainError("mean of an empty sample");
    double sum = 0;
    for (double v : values)
        sum += v;
    return sum / static_cast<double>(values.size());
}

double sample_variance(std::span<double const> values)
{
    if (values.size() < 2)
        return 0.0;
    double const m = mean(values);
    double ss = 0;
    for (double v : values)
        ss += (v - m) * (v - m);
    return ss / static_cast<double>(values.size() - 1);
}

}  // namespace climadfa
