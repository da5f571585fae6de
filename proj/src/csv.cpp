#include "hrix/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace hrix {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& column) {
  std::string t = trim(cell);
  if (t.empty()) {
    fail(Errc::missing_value,
         "empty cell at row " + std::to_string(row) + ", column '" + column + "'");
  }
  char* endp = nullptr;
  double v = std::strtod(t.c_str(), &endp);
  if (endp != t.c_str() + t.size() || !std::isfinite(v)) {
    fail(Errc::parse_error, "cell '" + t + "' at row " + std::to_string(row) + ", column '" +
                                column + "' is not a finite number");
  }
  return v;
}

struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // raw cells
};

RawTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::file_not_found, "cannot open '" + path.string() + "'");
  RawTable t;
  std::string line;
  if (!std::getline(in, line)) fail(Errc::parse_error, "'" + path.string() + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  for (auto& h : split_line(line)) t.header.push_back(trim(h));
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cells = split_line(line);
    if (cells.size() != t.header.size()) {
      fail(Errc::parse_error, "row " + std::to_string(t.rows.size() + 1) + " of '" +
                                  path.string() + "' has " + std::to_string(cells.size()) +
                                  " cells, header has " + std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  if (t.rows.empty()) fail(Errc::parse_error, "'" + path.string() + "' has no data rows");
  return t;
}

std::size_t column_index(const RawTable& t, const std::string& name,
                         const std::filesystem::path& path) {
  auto it = std::find(t.header.begin(), t.header.end(), name);
  if (it == t.header.end()) {
    fail(Errc::schema_mismatch, "no column '" + name + "' in '" + path.string() + "'");
  }
  return static_cast<std::size_t>(it - t.header.begin());
}

}  // namespace

Panel load_panel(const std::filesystem::path& path, const std::string& date_column,
                 const std::vector<std::string>& value_columns) {
  RawTable t = read_csv(path);
  std::size_t date_idx = column_index(t, date_column, path);

  std::vector<std::string> wanted = value_columns;
  if (wanted.empty()) {
    for (const auto& h : t.header) {
      if (h != date_column) wanted.push_back(h);
    }
  }
  std::vector<std::size_t> col_idx;
  col_idx.reserve(wanted.size());
  for (const auto& name : wanted) col_idx.push_back(column_index(t, name, path));

  // Parse dates, sort rows chronologically, then enforce the monthly axis.
  std::vector<std::pair<Month, std::size_t>> order;
  order.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    order.emplace_back(Month::parse(trim(t.rows[r][date_idx])), r);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    int gap = order[k].first.index() - order[k - 1].first.index();
    if (gap == 0) {
      fail(Errc::duplicate_date, "date " + order[k].first.str() + " appears twice");
    }
    if (gap > 1) {
      fail(Errc::gap_in_dates, "month " + order[k - 1].first.plus(1).str() + " is missing");
    }
  }

  Month start = order.front().first;
  std::vector<TimeSeries> cols;
  cols.reserve(wanted.size());
  for (std::size_t j = 0; j < wanted.size(); ++j) {
    std::vector<double> vals(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      vals[k] = parse_cell(t.rows[order[k].second][col_idx[j]], order[k].second + 1, wanted[j]);
    }
    cols.emplace_back(wanted[j], start, std::move(vals));
  }
  return Panel(std::move(cols));
}

TimeSeries load_series(const std::filesystem::path& path, const std::string& date_column,
                       const std::string& value_column) {
  return load_panel(path, date_column, {value_column}).col(0);
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_panel(const Panel& p, const std::filesystem::path& path,
                 const std::string& date_column) {
  std::ofstream out(path);
  if (!out) fail(Errc::file_not_found, "cannot write '" + path.string() + "'");
  out << date_column;
  for (const auto& c : p.columns()) out << ',' << c.id();
  out << '\n';
  for (std::size_t r = 0; r < p.n_rows(); ++r) {
    out << p.date(r).str();
    for (const auto& c : p.columns()) out << ',' << format_value(c[r]);
    out << '\n';
  }
}

void write_series(const TimeSeries& s, const std::filesystem::path& path,
                  const std::string& date_column) {
  write_panel(Panel({s}), path, date_column);
}

}  // namespace hrix
