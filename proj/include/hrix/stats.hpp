#pragma once

#include <string>
#include <vector>

#include "hrix/linalg.hpp"
#include "hrix/timeseries.hpp"

namespace hrix {

struct TestStat {
  double stat = 0.0;
  double p_value = 1.0;
  bool available = false;
};

// Moments use the 1/n central-moment estimators for skewness and kurtosis
// (the Jarque-Bera convention); std_dev uses the n-1 denominator. Kurtosis
// is reported in excess form, so a normal series scores 0.
struct SummaryStats {
  std::size_t n = 0;
  double mean = 0.0;
  double std_dev = 0.0;
  double min = 0.0;
  double max = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  TestStat jarque_bera;   // n/6 * (S^2 + K^2/4) against chi2(2)
  TestStat ljung_box_q1;  // lag-1 Ljung-Box against chi2(1)
};

SummaryStats describe(const TimeSeries& s);

// Pearson correlations with two-sided t-test p-values. Stars follow the
// p < .001 '***', p < .01 '**', p < .05 '*' convention.
struct CorrMatrix {
  std::vector<std::string> ids;
  Matrix rho;
  Matrix pvals;
  std::vector<std::vector<std::string>> stars;
};

CorrMatrix corr_matrix(const Panel& p);

std::string corr_stars(double p);

}  // namespace hrix
