#include "climadfa/spline.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "climadfa/errors.hpp"

namespace climadfa {

NaturalCubicSpline::NaturalCubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y))
{
    auto const n = x_.size();
    if (n < 2 || y_.size() != n)
        throw ValidationError("spline needs at least two knots");
    for (std::size_t i = 1; i < n; ++i)
    {
        if (!(x_[i] > x_[i - 1]))
            throw ValidationError("spline knots must be strictly increasing");
    }

    // Tridiagonal system for interior second derivatives (Thomas algorithm).
    m_.assign(n, 0.0);
    if (n == 2)
        return;
    std::size_t const k = n - 2;
    std::vector<double> diag(k), upper(k), rhs(k);
    for (std::size_t i = 1; i + 1 < n; ++i)
    {
        double const h0 = x_[i] - x_[i - 1];
        double const h1 = x_[i + 1] - x_[i];
        diag[i - 1] = 2.0 * (h0 + h1);
        upper[i - 1] = h1;
        rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    // Sub-diagonal entry of row r is h_r = x_r - x_{r-1} (r >= 1 in interior
    // numbering), equal to upper[r - 1].
    for (std::size_t r = 1; r < k; ++r)
    {
        double const w = upper[r - 1] / diag[r - 1];
        diag[r] -= w * upper[r - 1];
        rhs[r] -= w * rhs[r - 1];
    }
    m_[k] = rhs[k - 1] / diag[k - 1];
    for (std::size_t r = k - 1; r-- > 0;)
        m_[r + 1] = (rhs[r] - upper[r] * m_[r + 2]) / diag[r];
}

double NaturalCubicSpline::operator()(double at) const
{
    auto const n = x_.size();
    if (at <= x_.front() || at >= x_.back())
    {
        // Linear extension using the end slope.
        bool const left = at <= x_.front();
        std::size_t const i = left ? 0 : n - 2;
        double const h = x_[i + 1] - x_[i];
        double const secant = (y_[i + 1] - y_[i]) / h;
        double const slope = left ? secant - h * (2.0 * m_[i] + m_[i + 1]) / 6.0
                                  : secant + h * (m_[i] + 2.0 * m_[i + 1]) / 6.0;
        double const anchor_x = left ? x_.front() : x_.back();
        double const anchor_y = left ? y_.front() : y_.back();
        return anchor_y + slope * (at - anchor_x);
    }
    auto const upper = std::upper_bound(x_.begin(), x_.end(), at);
    std::size_t const i = static_cast<std::size_t>(upper - x_.begin()) - 1;
    double const h = x_[i + 1] - x_[i];
    double const a = (x_[i + 1] - at) / h;
    double const b = (at - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1]
           + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

TimeSeries interpolate_annual(std::vector<std::pair<int, double>> knots)
{
    std::sort(knots.begin(), knots.end());
    for (std::size_t i = 1; i < knots.size(); ++i)
    {
        if (knots[i].first == knots[i - 1].first)
            throw ValidationError(fmt::format("duplicate knot year {}", knots[i].first));
    }
    if (knots.size() < 2)
        throw ValidationError("interpolation needs at least two knots");
    std::vector<double> x, y;
    for (auto const& [year, value] : knots)
    {
        x.push_back(year);
        y.push_back(value);
    }
    NaturalCubicSpline const spline(x, y);
    std::vector<double> values;
    for (int year = knots.front().first; year <= knots.back().first; ++year)
        values.push_back(spline(year));
    // Knots are reproduced exactly rather than through rounding of the cubic.
    for (auto const& [year, value] : knots)
        values[static_cast<std::size_t>(year - knots.front().first)] = value;
    return TimeSeries(Resolution::annual, knots.front().first, std::move(values));
}

}  // namespace climadfa
