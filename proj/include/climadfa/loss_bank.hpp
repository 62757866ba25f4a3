#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "climadfa/hazard.hpp"

namespace climadfa {

//! Aggregate excess-of-loss layer applied to a share of the market loss.
struct Layer
{
    double share = 1.0;
    double excess = 0.0;
    double limit = std::numeric_limits<double>::infinity();
};

//! Recovery of a layer on a market loss: min((share * loss - excess)+, limit).
double layer_recovery(double market_loss, Layer const& layer);

//! Monte Carlo moments of the share of the market loss and of the layer.
struct SampleMoments
{
    double gross_mean = 0.0;
    double gross_var = 0.0;
    double layer_mean = 0.0;
    double layer_var = 0.0;
};

SampleMoments layer_sample_moments(std::span<double const> totals, Layer const& layer);

//! Moments for several layers over the same totals; `out` has one entry per layer.
void layer_sample_moments(std::span<double const> totals, std::span<Layer const> layers, std::span<SampleMoments> out);

/*!
 * Fixed inner sample for compound Poisson-LogNormal aggregate losses.
 *
 * The bank holds, per cell (a group of hazard periods sharing one severity
 * location), a uniform per sample for the Poisson count and the running sums
 * of exp(sigma z) over that sample's first `depth` severities. A query with
 * per-cell (rate, log location) then costs one pass over the samples that
 * have at least one event: counts come from the inverse Poisson CDF applied
 * to the stored uniforms and each cell contributes exp(location) times the
 * stored partial sum. Counts beyond `depth` draw the extra severities from a
 * per-sample stream, so no count is ever truncated.
 *
 * The same uniforms and severities are reused for every query (common random
 * numbers), which keeps premiums smooth in the covariates.
 */
class LayerMomentBank
{
  public:
    LayerMomentBank(std::vector<double> cell_sigmas,
                    std::size_t samples,
                    std::size_t depth,
                    std::uint64_t seed);

    std::size_t cells() const { return cells_.size(); }
    std::size_t samples() const { return samples_; }

    //! Normalised aggregate loss per sample. `params` holds one entry per cell.
    void aggregate(std::span<EventParams const> params, std::span<double> totals) const;
    std::vector<double> aggregate(std::span<EventParams const> params) const;

  private:
    struct Cell
    {
        double sigma = 1.0;
        std::uint64_t seed = 0;
        std::vector<double> uniform;         //!< sorted descending
        std::vector<std::uint32_t> sample;   //!< original sample index per sorted slot
        std::vector<double> prefix;          //!< depth-major: entry k of every slot, then k + 1
    };

    double overflow_sum(Cell const& cell, std::uint32_t sample, std::uint64_t count) const;

    std::size_t samples_;
    std::size_t depth_;
    std::vector<Cell> cells_;
};

}  // namespace climadfa
