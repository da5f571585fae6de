#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hrix/regression.hpp"
#include "hrix/timeseries.hpp"

namespace hrix {

struct BreakpointSet {
  std::vector<Month> break_dates;        // last month of each segment but the final one
  std::vector<std::string> break_labels; // "2009:M4" style
  std::vector<double> segment_ssr;
  std::size_t chosen_m = 0;
  std::vector<double> criterion_values;  // BIC for m = 0..max_breaks
  double total_ssr = 0.0;
};

// Globally optimal break placement by dynamic programming over the segment
// SSR table; the break count minimizes BIC over m = 0..max_breaks. Each
// segment keeps at least max(ceil(trim * n), p + 1) observations.
BreakpointSet find_breaks(const TimeSeries& y, const std::optional<Panel>& X,
                          std::size_t max_breaks, double trim = 0.15);

struct SubsampleFit {
  Month break_date;
  PredictiveResult pre;
  PredictiveResult post;
};

// Re-runs the predictive regression on [start, break] and (break, end].
SubsampleFit subsample_fit(const TimeSeries& returns, const TimeSeries& index,
                           const std::optional<Panel>& controls, Month break_date,
                           const PredictiveSpec& spec);

}  // namespace hrix
