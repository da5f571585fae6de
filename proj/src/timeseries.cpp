#include "hrix/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <set>

namespace hrix {

namespace {

int parse_int(std::string_view s, const char* what) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(Errc::parse_error, std::string("invalid ") + what + " '" + std::string(s) + "'");
  }
  return out;
}

}  // namespace

Month Month::parse(std::string_view s) {
  // "YYYY-MM" or "YYYY-MM-DD"
  if (s.size() < 7 || s[4] != '-') {
    fail(Errc::parse_error, "date '" + std::string(s) + "' is not YYYY-MM or YYYY-MM-DD");
  }
  int year = parse_int(s.substr(0, 4), "year");
  int mon = parse_int(s.substr(5, 2), "month");
  if (mon < 1 || mon > 12) {
    fail(Errc::parse_error, "month out of range in '" + std::string(s) + "'");
  }
  if (s.size() > 7) {
    if (s.size() != 10 || s[7] != '-') {
      fail(Errc::parse_error, "date '" + std::string(s) + "' is not YYYY-MM or YYYY-MM-DD");
    }
    int day = parse_int(s.substr(8, 2), "day");
    if (day < 1 || day > 31) {
      fail(Errc::parse_error, "day out of range in '" + std::string(s) + "'");
    }
  }
  return Month{year, mon};
}

std::string Month::str() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year, mon);
  return buf;
}

std::string Month::break_label() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d:M%d", year, mon);
  return buf;
}

Transform parse_transform(std::string_view name) {
  if (name == "log") return Transform::log;
  if (name == "diff") return Transform::diff;
  if (name == "pct_change") return Transform::pct_change;
  if (name == "standardize") return Transform::standardize;
  fail(Errc::config_error, "unknown transform '" + std::string(name) + "'");
}

TimeSeries::TimeSeries(std::string id, Month start, std::vector<double> values)
    : id_(std::move(id)), start_(start), values_(std::move(values)) {
  if (values_.empty()) fail(Errc::too_short, "series '" + id_ + "' is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      fail(Errc::missing_value,
           "series '" + id_ + "' has a non-finite value at " + date(i).str());
    }
  }
}

TimeSeries TimeSeries::slice(Month from, Month to) const {
  if (from > to || to < start_ || from > end()) {
    fail(Errc::alignment_empty,
         "slice [" + from.str() + ", " + to.str() + "] misses series '" + id_ + "'");
  }
  from = std::max(from, start_);
  to = std::min(to, end());
  auto first = static_cast<std::size_t>(from.index() - start_.index());
  auto count = static_cast<std::size_t>(to.index() - from.index() + 1);
  return TimeSeries(id_, from,
                    std::vector<double>(values_.begin() + first, values_.begin() + first + count));
}

TimeSeries transform(const TimeSeries& s, Transform kind) {
  const auto& v = s.values();
  switch (kind) {
    case Transform::log: {
      std::vector<double> out(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] <= 0.0) {
          fail(Errc::non_positive_value,
               "log transform of '" + s.id() + "' at " + s.date(i).str());
        }
        out[i] = std::log(v[i]);
      }
      return TimeSeries(s.id(), s.start(), std::move(out));
    }
    case Transform::diff: {
      if (v.size() < 2) fail(Errc::too_short, "diff needs at least 2 observations");
      std::vector<double> out(v.size() - 1);
      for (std::size_t i = 1; i < v.size(); ++i) out[i - 1] = v[i] - v[i - 1];
      return TimeSeries(s.id(), s.start().plus(1), std::move(out));
    }
    case Transform::pct_change: {
      if (v.size() < 2) fail(Errc::too_short, "pct_change needs at least 2 observations");
      std::vector<double> out(v.size() - 1);
      for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i - 1] == 0.0) {
          fail(Errc::zero_denominator,
               "pct_change of '" + s.id() + "' at " + s.date(i).str() + " divides by zero");
        }
        out[i - 1] = (v[i] - v[i - 1]) / v[i - 1];
      }
      return TimeSeries(s.id(), s.start().plus(1), std::move(out));
    }
    case Transform::standardize: {
      if (v.size() < 2) fail(Errc::too_short, "standardize needs at least 2 observations");
      double m = mean(v);
      double sd = sample_std(v);
      if (sd <= 0.0) fail(Errc::zero_variance, "standardize of constant series '" + s.id() + "'");
      std::vector<double> out(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - m) / sd;
      return TimeSeries(s.id(), s.start(), std::move(out));
    }
  }
  fail(Errc::config_error, "unreachable transform kind");
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) fail(Errc::too_short, "std of fewer than 2 observations");
  double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) {
    fail(Errc::too_short, "pearson needs two equal-length series with n >= 2");
  }
  double ma = mean(a), mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa <= 0.0 || sbb <= 0.0) fail(Errc::zero_variance, "pearson of a constant series");
  return sab / std::sqrt(saa * sbb);
}

Panel::Panel(std::vector<TimeSeries> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) fail(Errc::schema_mismatch, "panel needs at least one column");
  std::set<std::string> seen;
  for (const auto& c : columns_) {
    if (!seen.insert(c.id()).second) {
      fail(Errc::schema_mismatch, "duplicate column id '" + c.id() + "'");
    }
    if (c.start() != columns_.front().start() || c.size() != columns_.front().size()) {
      fail(Errc::date_misalignment,
           "column '" + c.id() + "' does not share the panel date axis");
    }
  }
}

const TimeSeries& Panel::col(const std::string& id) const {
  for (const auto& c : columns_) {
    if (c.id() == id) return c;
  }
  fail(Errc::schema_mismatch, "no column '" + id + "' in panel");
}

bool Panel::contains(const std::string& id) const {
  return std::any_of(columns_.begin(), columns_.end(),
                     [&](const TimeSeries& c) { return c.id() == id; });
}

std::vector<std::string> Panel::ids() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back(c.id());
  return out;
}

Panel Panel::select(const std::vector<std::string>& ids) const {
  std::vector<TimeSeries> cols;
  cols.reserve(ids.size());
  for (const auto& id : ids) cols.push_back(col(id));
  return Panel(std::move(cols));
}

Panel Panel::slice(Month from, Month to) const {
  std::vector<TimeSeries> cols;
  cols.reserve(columns_.size());
  for (const auto& c : columns_) cols.push_back(c.slice(from, to));
  return Panel(std::move(cols));
}

DateRange common_range(const std::vector<std::pair<Month, Month>>& spans) {
  if (spans.empty()) fail(Errc::alignment_empty, "no spans to align");
  Month from = spans.front().first;
  Month to = spans.front().second;
  for (const auto& [s, e] : spans) {
    from = std::max(from, s);
    to = std::min(to, e);
  }
  if (from > to) fail(Errc::alignment_empty, "series do not overlap in time");
  return DateRange{from, to};
}

}  // namespace hrix
