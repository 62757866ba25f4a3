#pragma once

#include <utility>
#include <vector>

#include "climadfa/timeseries.hpp"

namespace climadfa {

//! Natural cubic spline (zero second derivative at both ends).
class NaturalCubicSpline
{
  public:
    //! Knots must number at least two with strictly increasing abscissae.
    NaturalCubicSpline(std::vector<double> x, std::vector<double> y);

    //! Evaluate inside [x_front, x_back]; outside, extends the end cubic
    //! linearly (the natural boundary makes that C2 continuous).
    double operator()(double at) const;

  private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> m_;  //!< second derivatives at the knots
};

//! Annual series from sparse (year, value) knots, evaluated at every
//! integer year between the first and last knot. Throws ValidationError on
//! fewer than two knots or duplicate years.
TimeSeries interpolate_annual(std::vector<std::pair<int, double>> knots);

}  // namespace climadfa
