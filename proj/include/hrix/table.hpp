#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace hrix {

// Plain cell table emitted as CSV (machine) and Markdown (human).
struct Table {
  std::string title;
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }
};

std::string to_markdown(const Table& t);
std::string to_csv(const Table& t);

// Writes base.csv and base.md next to each other.
void write_table(const Table& t, const std::filesystem::path& base);

// Regression-table stars: * p<0.1, ** p<0.05, *** p<0.01.
std::string reg_stars(double p);

// "0.076* (0.04)" cells used by the regression tables.
std::string coef_cell(double coef, double se, double p);

std::string fmt_num(double v, int digits = 3);

}  // namespace hrix
