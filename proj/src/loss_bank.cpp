#include "climadfa/loss_bank.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <fmt/format.h>

#include "climadfa/errors.hpp"
#include "climadfa/random.hpp"

namespace climadfa {

double layer_recovery(double market_loss, Layer const& layer)
{
    double const gross = layer.share * market_loss;
    return std::min(std::max(gross - layer.excess, 0.0), layer.limit);
}

SampleMoments layer_sample_moments(std::span<double const> totals, Layer const& layer)
{
    SampleMoments out;
    layer_sample_moments(totals, std::span<Layer const>(&layer, 1), std::span<SampleMoments>(&out, 1));
    return out;
}

void layer_sample_moments(std::span<double const> totals, std::span<Layer const> layers, std::span<SampleMoments> out)
{
    if (out.size() != layers.size())
        throw ValidationError("one output slot per layer is required");
    std::fill(out.begin(), out.end(), SampleMoments{});
    if (totals.empty())
        return;
    auto const n = static_cast<double>(totals.size());

    // Only totals above the lowest attachment point can reach a layer; the
    // rest recover exactly zero and are accounted for by count.
    double attach = std::numeric_limits<double>::infinity();
    for (auto const& layer : layers)
    {
        if (layer.share > 0.0)
            attach = std::min(attach, layer.excess / layer.share);
    }
    double sum = 0.0;
    std::vector<double> tail;
    for (double x : totals)
    {
        sum += x;
        if (x > attach)
            tail.push_back(x);
    }
    double const mean = sum / n;
    double ss = 0.0;
    for (double x : totals)
        ss += (x - mean) * (x - mean);
    double const var = totals.size() > 1 ? ss / (n - 1.0) : 0.0;

    for (std::size_t i = 0; i < layers.size(); ++i)
    {
        auto const& layer = layers[i];
        out[i].gross_mean = layer.share * mean;
        out[i].gross_var = layer.share * layer.share * var;
        double const floor_recovery = layer_recovery(0.0, layer);
        double layer_sum = 0.0;
        for (double x : tail)
            layer_sum += layer_recovery(x, layer);
        auto const untouched = n - static_cast<double>(tail.size());
        layer_sum += untouched * floor_recovery;
        double const layer_mean = layer_sum / n;
        double layer_ss = untouched * (floor_recovery - layer_mean) * (floor_recovery - layer_mean);
        for (double x : tail)
        {
            double const d = layer_recovery(x, layer) - layer_mean;
            layer_ss += d * d;
        }
        out[i].layer_mean = layer_mean;
        out[i].layer_var = totals.size() > 1 ? layer_ss / (n - 1.0) : 0.0;
    }
}

LayerMomentBank::LayerMomentBank(std::vector<double> cell_sigmas,
                                 std::size_t samples,
                                 std::size_t depth,
                                 std::uint64_t seed)
    : samples_(samples), depth_(depth)
{
    if (samples == 0 || samples > std::numeric_limits<std::uint32_t>::max())
        throw ValidationError(fmt::format("inner sample count {} out of range", samples));
    if (depth == 0)
        throw ValidationError("layer bank depth must be at least 1");

    RandomStream const root(seed);
    cells_.resize(cell_sigmas.size());
    for (std::size_t c = 0; c < cell_sigmas.size(); ++c)
    {
        auto& cell = cells_[c];
        cell.sigma = cell_sigmas[c];
        if (!(cell.sigma > 0.0))
            throw ValidationError("layer bank cell sigma must be positive");
        auto stream = root.substream(static_cast<std::uint64_t>(c));
        cell.seed = stream.seed();

        std::vector<double> u(samples);
        for (auto& value : u)
            value = stream.uniform();
        std::vector<double> row_sums(samples * depth);
        for (std::size_t i = 0; i < samples; ++i)
        {
            double sum = 0.0;
            for (std::size_t k = 0; k < depth; ++k)
            {
                sum += std::exp(cell.sigma * stream.normal());
                row_sums[i * depth + k] = sum;
            }
        }

        std::vector<std::uint32_t> order(samples);
        std::iota(order.begin(), order.end(), 0U);
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            return u[a] != u[b] ? u[a] > u[b] : a < b;
        });
        cell.uniform.resize(samples);
        cell.sample = order;
        cell.prefix.resize(samples * depth);
        for (std::size_t slot = 0; slot < samples; ++slot)
        {
            cell.uniform[slot] = u[order[slot]];
            for (std::size_t k = 0; k < depth; ++k)
                cell.prefix[k * samples + slot] = row_sums[order[slot] * depth + k];
        }
    }
}

double LayerMomentBank::overflow_sum(Cell const& cell, std::uint32_t sample, std::uint64_t count) const
{
    RandomStream extra(splitmix64(cell.seed ^ splitmix64(sample)));
    double sum = 0.0;
    for (std::uint64_t k = depth_; k < count; ++k)
        sum += std::exp(cell.sigma * extra.normal());
    return sum;
}

std::vector<double> LayerMomentBank::aggregate(std::span<EventParams const> params) const
{
    std::vector<double> totals(samples_);
    aggregate(params, totals);
    return totals;
}

void LayerMomentBank::aggregate(std::span<EventParams const> params, std::span<double> totals) const
{
    if (params.size() != cells_.size())
        throw ValidationError(fmt::format("layer bank has {} cells, got {} parameter sets",
                                          cells_.size(), params.size()));
    if (totals.size() != samples_)
        throw ValidationError("layer bank output size mismatch");
    std::fill(totals.begin(), totals.end(), 0.0);

    std::vector<double> cdf;
    for (std::size_t c = 0; c < cells_.size(); ++c)
    {
        auto const& cell = cells_[c];
        double const rate = params[c].rate;
        if (!(rate > 0.0))
            continue;
        double const scale = std::exp(params[c].log_location);
        double const top = cell.uniform.front();

        // Poisson CDF up to the count of the largest uniform.
        cdf.clear();
        double pmf = std::exp(-rate);
        double acc = pmf;
        cdf.push_back(acc);
        while (acc < top)
        {
            auto const k = static_cast<double>(cdf.size());
            pmf *= rate / k;
            double const next = acc + pmf;
            if (next == acc && k > rate)
                break;
            acc = next;
            cdf.push_back(acc);
        }

        // Uniforms are sorted descending, so the slots drawing at least k
        // events form a prefix; walk the counts from the top down.
        std::size_t const max_count = cdf.size() - 1;
        std::size_t end = 0;
        for (std::size_t count = max_count; count >= 1; --count)
        {
            double const threshold = cdf[count - 1];
            std::size_t const begin = end;
            end = static_cast<std::size_t>(
                std::partition_point(cell.uniform.begin() + static_cast<std::ptrdiff_t>(begin), cell.uniform.end(),
                                     [threshold](double u) { return u > threshold; })
                - cell.uniform.begin());
            if (count <= depth_)
            {
                double const* row = cell.prefix.data() + (count - 1) * samples_;
                for (std::size_t slot = begin; slot < end; ++slot)
                    totals[cell.sample[slot]] += scale * row[slot];
            }
            else
            {
                double const* row = cell.prefix.data() + (depth_ - 1) * samples_;
                for (std::size_t slot = begin; slot < end; ++slot)
                    totals[cell.sample[slot]] += scale * (row[slot] + overflow_sum(cell, cell.sample[slot], count));
            }
        }
    }
}

}  // namespace climadfa
