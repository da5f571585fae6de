#include "hrix/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "hrix/error.hpp"

namespace hrix {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string fmt_num(double v, int digits) {
  char buf[48];
  if (v != 0.0 && std::fabs(v) < 0.5 * std::pow(10.0, -digits)) {
    std::snprintf(buf, sizeof(buf), "%.2e", v);  // too small for fixed digits
  } else {
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  }
  return buf;
}

std::string reg_stars(double p) {
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.1) return "*";
  return "";
}

std::string coef_cell(double coef, double se, double p) {
  return fmt_num(coef) + reg_stars(p) + " (" + fmt_num(se, 2) + ")";
}

std::string to_markdown(const Table& t) {
  std::string out;
  if (!t.title.empty()) out += "### " + t.title + "\n\n";
  out += "|";
  for (const auto& h : t.headers) out += " " + h + " |";
  out += "\n|";
  for (std::size_t i = 0; i < t.headers.size(); ++i) out += " --- |";
  out += "\n";
  for (const auto& row : t.rows) {
    out += "|";
    for (const auto& c : row) out += " " + c + " |";
    out += "\n";
  }
  return out;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.headers.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(t.headers[i]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_table(const Table& t, const std::filesystem::path& base) {
  {
    std::ofstream md(base.string() + ".md");
    if (!md) fail(Errc::file_not_found, "cannot write '" + base.string() + ".md'");
    md << to_markdown(t);
  }
  {
    std::ofstream csv(base.string() + ".csv");
    if (!csv) fail(Errc::file_not_found, "cannot write '" + base.string() + ".csv'");
    csv << to_csv(t);
  }
}

}  // namespace hrix
