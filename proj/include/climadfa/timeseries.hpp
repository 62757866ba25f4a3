#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace climadfa {

enum class Resolution
{
    annual,
    monthly
};

std::string_view to_string(Resolution r);
Resolution parse_resolution(std::string_view text);

//! A calendar period: a year, or a year-month when month is in [1, 12].
struct Period
{
    int year = 0;
    int month = 0;  //!< 0 for annual periods

    bool is_monthly() const { return month != 0; }
    friend auto operator<=>(Period const&, Period const&) = default;
};

//! Parse "YYYY" or "YYYY-MM" (a trailing "-DD" day is accepted and ignored).
Period parse_period(std::string_view text);
std::string format_period(Period p);

/*!
 * Gap-free annual or monthly series starting at a given year.
 *
 * Monthly series always hold whole years (12 values per year).
 */
class TimeSeries
{
  public:
    TimeSeries() = default;
    TimeSeries(Resolution resolution, int first_year, std::vector<double> values);

    //! Build from (period, value) pairs; throws ValidationError on gaps,
    //! duplicates, mixed resolutions or partial years.
    static TimeSeries from_periods(std::vector<std::pair<Period, double>> rows,
                                   std::string const& label);

    Resolution resolution() const { return resolution_; }
    int first_year() const { return first_year_; }
    int last_year() const;
    bool empty() const { return values_.empty(); }
    bool covers(int first, int last) const;

    //! Annual value, or the mean of the 12 months for monthly series.
    double annual(int year) const;
    //! Monthly value; annual series return the year's value for every month.
    double monthly(int year, int month) const;

    std::vector<double> const& values() const { return values_; }

  private:
    Resolution resolution_ = Resolution::annual;
    int first_year_ = 0;
    std::vector<double> values_;
};

}  // namespace climadfa
