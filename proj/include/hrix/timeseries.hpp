#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hrix/error.hpp"

namespace hrix {

// Calendar month. The toolkit works at monthly frequency only; any
// day-of-month present in input text is validated and then discarded.
struct Month {
  int year = 1970;
  int mon = 1;  // 1..12

  // Accepts "YYYY-MM" or "YYYY-MM-DD".
  static Month parse(std::string_view s);

  static Month from_index(int idx) { return Month{idx / 12, idx % 12 + 1}; }
  int index() const { return year * 12 + (mon - 1); }

  Month plus(int months) const { return from_index(index() + months); }

  std::string str() const;          // "1971-01"
  std::string break_label() const;  // "2009:M4"

  friend auto operator<=>(const Month&, const Month&) = default;
};

enum class Transform { log, diff, pct_change, standardize };

Transform parse_transform(std::string_view name);

// A date-indexed monthly series. Dates are contiguous by construction
// (start month plus offset), every value finite.
class TimeSeries {
 public:
  TimeSeries(std::string id, Month start, std::vector<double> values);

  const std::string& id() const { return id_; }
  Month start() const { return start_; }
  Month end() const { return start_.plus(static_cast<int>(size()) - 1); }
  Month date(std::size_t i) const { return start_.plus(static_cast<int>(i)); }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  // Inclusive date range; throws AlignmentEmpty when the range misses the series.
  TimeSeries slice(Month from, Month to) const;

  TimeSeries renamed(std::string id) const { return TimeSeries(std::move(id), start_, values_); }

 private:
  std::string id_;
  Month start_;
  std::vector<double> values_;
};

TimeSeries transform(const TimeSeries& s, Transform kind);

double mean(const std::vector<double>& v);
double sample_std(const std::vector<double>& v);  // n-1 denominator
double pearson(const std::vector<double>& a, const std::vector<double>& b);

// Columns sharing one date axis, unique ids.
class Panel {
 public:
  explicit Panel(std::vector<TimeSeries> columns);

  std::size_t n_rows() const { return columns_.front().size(); }
  std::size_t n_cols() const { return columns_.size(); }
  Month start() const { return columns_.front().start(); }
  Month end() const { return columns_.front().end(); }
  Month date(std::size_t i) const { return columns_.front().date(i); }

  const TimeSeries& col(std::size_t j) const { return columns_[j]; }
  const TimeSeries& col(const std::string& id) const;
  bool contains(const std::string& id) const;
  std::vector<std::string> ids() const;

  double at(std::size_t row, std::size_t colidx) const { return columns_[colidx][row]; }

  Panel select(const std::vector<std::string>& ids) const;
  Panel slice(Month from, Month to) const;

  const std::vector<TimeSeries>& columns() const { return columns_; }

 private:
  std::vector<TimeSeries> columns_;
};

// Largest common inclusive date range of the given spans.
struct DateRange {
  Month from;
  Month to;
  std::size_t size() const { return static_cast<std::size_t>(to.index() - from.index() + 1); }
};

DateRange common_range(const std::vector<std::pair<Month, Month>>& spans);

}  // namespace hrix
