#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hrix/timeseries.hpp"

namespace hrix {

// Loads a monthly panel from a CSV file with a header row. Rows are sorted by
// date before validation; any missing or unparsable cell is an error, never
// imputed. An empty `value_columns` selects every non-date column in file order.
Panel load_panel(const std::filesystem::path& path, const std::string& date_column,
                 const std::vector<std::string>& value_columns = {});

TimeSeries load_series(const std::filesystem::path& path, const std::string& date_column,
                       const std::string& value_column);

// Writes dates as YYYY-MM and values with 12 significant digits, which
// round-trips bit-identically through load_panel.
void write_panel(const Panel& p, const std::filesystem::path& path,
                 const std::string& date_column = "date");

void write_series(const TimeSeries& s, const std::filesystem::path& path,
                  const std::string& date_column = "date");

std::string format_value(double v);  // the canonical 12-significant-digit form

}  // namespace hrix
