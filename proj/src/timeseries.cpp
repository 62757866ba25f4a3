#include "climadfa/timeseries.hpp"

#include <algorithm>
#include <charconv>

#include <fmt/format.h>

#include "climadfa/errors.hpp"

namespace climadfa {

std::string_view to_string(Resolution r)
{
    return r == Resolution::annual ? "annual" : "monthly";
}

Resolution parse_resolution(std::string_view text)
{
    if (text == "annual")
        return Resolution::annual;
    if (text == "monthly")
        return Resolution::monthly;
    throw ValidationError(fmt::format("unknown resolution '{}'", text));
}

namespace {

int parse_int(std::string_view text, std::string_view whole)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ValidationError(fmt::format("malformed period '{}'", whole));
    return value;
}

}  // namespace

Period parse_period(std::string_view text)
{
    auto const first_dash = text.find('-');
    Period p;
    p.year = parse_int(text.substr(0, first_dash), text);
    if (first_dash == std::string_view::npos)
        return p;
    auto rest = text.substr(first_dash + 1);
    auto const second_dash = rest.find('-');
    p.month = parse_int(rest.substr(0, second_dash), text);
    if (second_dash != std::string_view::npos)
        parse_int(rest.substr(second_dash + 1), text);
    if (p.month < 1 || p.month > 12)
        throw ValidationError(fmt::format("month out of range in '{}'", text));
    return p;
}

std::string format_period(Period p)
{
    if (p.is_monthly())
        return fmt::format("{}-{:02d}", p.year, p.month);
    return fmt::format("{}", p.year);
}

TimeSeries::TimeSeries(Resolution resolution, int first_year, std::vector<double> values)
    : resolution_(resolution), first_year_(first_year), values_(std::move(values))
{
    if (resolution_ == Resolution::monthly && values_.size() % 12 != 0)
        throw ValidationError("monthly series must hold whole years");
}

TimeSeries TimeSeries::from_periods(std::vector<std::pair<Period, double>> rows,
                                    std::string const& label)
{
    if (rows.empty())
        throw ValidationError(fmt::format("{}: series is empty", label));
    std::sort(rows.begin(), rows.end(),
              [](auto const& a, auto const& b) { return a.first < b.first; });
    bool const monthly = rows.front().first.is_monthly();
    std::vector<double> values;
    values.reserve(rows.size());
    Period expected = rows.front().first;
    if (monthly && expected.month != 1)
        throw ValidationError(fmt::format("{}: monthly series must start in January", label));
    for (auto const& [period, value] : rows)
    {
        if (period.is_monthly() != monthly)
            throw ValidationError(fmt::format("{}: mixed annual and monthly periods", label));
        if (period != expected)
            throw ValidationError(fmt::format("{}: gap or duplicate at {} (expected {})", label,
                                              format_period(period), format_period(expected)));
        values.push_back(value);
        if (monthly)
        {
            expected.month = expected.month == 12 ? 1 : expected.month + 1;
            if (expected.month == 1)
                ++expected.year;
        }
        else
        {
            ++expected.year;
        }
    }
    if (monthly && values.size() % 12 != 0)
        throw ValidationError(fmt::format("{}: monthly series ends mid-year", label));
    return TimeSeries(monthly ? Resolution::monthly : Resolution::annual,
                      rows.front().first.year, std::move(values));
}

int TimeSeries::last_year() const
{
    auto const per_year = resolution_ == Resolution::monthly ? 12 : 1;
    return first_year_ + static_cast<int>(values_.size() / per_year) - 1;
}

bool TimeSeries::covers(int first, int last) const
{
    return !values_.empty() && first_year_ <= first && last <= last_year();
}

double TimeSeries::annual(int year) const
{
    auto const offset = static_cast<std::size_t>(year - first_year_);
    if (resolution_ == Resolution::annual)
        return values_.at(offset);
    double sum = 0;
    for (int m = 0; m < 12; ++m)
        sum += values_.at(offset * 12 + m);
    return sum / 12.0;
}

double TimeSeries::monthly(int year, int month) const
{
    auto const offset = static_cast<std::size_t>(year - first_year_);
    if (resolution_ == Resolution::annual)
        return values_.at(offset);
    return values_.at(offset * 12 + static_cast<std::size_t>(month - 1));
}

}  // namespace climadfa
