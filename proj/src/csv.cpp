#include "climadfa/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "climadfa/errors.hpp"

namespace climadfa {

namespace {

std::string trim(std::string const& s)
{
    auto const first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    auto const last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string const& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

}  // namespace

std::size_t CsvTable::column(std::string const& name) const
{
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
        throw ValidationError(fmt::format("{}: missing column '{}'", source, name));
    return static_cast<std::size_t>(it - header.begin());
}

bool CsvTable::has_column(std::string const& name) const
{
    return std::find(header.begin(), header.end(), name) != header.end();
}

double CsvTable::number(std::size_t row, std::size_t col) const
{
    return parse_number(rows.at(row).at(col),
                        fmt::format("{} row {} column '{}'", source, row + 2, header.at(col)));
}

double parse_number(std::string const& text, std::string const& context)
{
    double value = 0;
    auto const* begin = text.data();
    auto const* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw ValidationError(fmt::format("{}: not a number: '{}'", context, text));
    return value;
}

CsvTable parse_csv(std::string const& text, std::string const& source)
{
    CsvTable table;
    table.source = source;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    while (std::getline(in, line))
    {
        if (trim(line).empty() || line.front() == '#')
            continue;
        auto fields = split(line);
        if (!have_header)
        {
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size())
            throw ValidationError(fmt::format("{}: row has {} fields, header has {}", source,
                                              fields.size(), table.header.size()));
        table.rows.push_back(std::move(fields));
    }
    if (!have_header)
        throw ValidationError(fmt::format("{}: no header row", source));
    return table;
}

CsvTable read_csv(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError(fmt::format("cannot open '{}'", path.string()));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str(), path.string());
}

TimeSeries read_period_series(std::filesystem::path const& path)
{
    auto table = read_csv(path);
    auto const period_col = table.column("period");
    auto const value_col = table.column("value");
    std::vector<std::pair<Period, double>> rows;
    rows.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        rows.emplace_back(parse_period(table.rows[i][period_col]), table.number(i, value_col));
    return TimeSeries::from_periods(std::move(rows), path.string());
}

std::vector<std::pair<int, double>> read_knots(std::filesystem::path const& path)
{
    auto table = read_csv(path);
    auto const year_col = table.column("year");
    auto const value_col = table.column("value");
    std::vector<std::pair<int, double>> knots;
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        knots.emplace_back(static_cast<int>(table.number(i, year_col)), table.number(i, value_col));
    return knots;
}

}  // namespace climadfa
