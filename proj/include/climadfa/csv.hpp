#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "climadfa/timeseries.hpp"

namespace climadfa {

//! A header plus string rows. Fields are comma separated without quoting.
struct CsvTable
{
    std::string source;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    //! Column index by name; throws ValidationError when absent.
    std::size_t column(std::string const& name) const;
    bool has_column(std::string const& name) const;
    double number(std::size_t row, std::size_t col) const;
};

CsvTable read_csv(std::filesystem::path const& path);
CsvTable parse_csv(std::string const& text, std::string const& source);
double parse_number(std::string const& text, std::string const& context);

//! `period,value` file as a time series.
TimeSeries read_period_series(std::filesystem::path const& path);

//! `year,value` knots (e.g. five-yearly scenario projections).
std::vector<std::pair<int, double>> read_knots(std::filesystem::path const& path);

}  // namespace climadfa
