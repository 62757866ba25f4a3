#pragma once

#include <span>
#include <vector>

namespace climadfa {

//! Empirical quantile by linear interpolation between order statistics
//! (position h = (n - 1) q on the sorted sample). Sorts a copy.
double quantile(std::span<double const> sample, double q);
//! Same convention on an already sorted sample.
double quantile_sorted(std::span<double const> sorted, double q);

//! Sum independent of input order: sorts a copy before accumulating.
double ordered_sum(std::span<double const> values);

double mean(std::span<double const> values);
//! Sample variance with divisor n - 1 (0 for fewer than two values).
double sample_variance(std::span<double const> values);

}  // namespace climadfa
