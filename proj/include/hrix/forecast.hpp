#pragma once

#include <string>
#include <vector>

#include "hrix/timeseries.hpp"

namespace hrix {

struct TrainTestSplit {
  TimeSeries y_train;
  TimeSeries y_test;
  Panel x_train;
  Panel x_test;
};

// Chronological split: the first floor(ratio * n) observations train, the
// rest validate. No shuffling.
TrainTestSplit split_train_test(const TimeSeries& y, const Panel& X, double ratio);

struct ForecastReport {
  std::string model_id;
  double in_correlation_accuracy = 0.0;   // 100 * corr(fitted, actual), train
  double in_residual_std_error = 0.0;     // sqrt(SSR / (n - p)), train
  double out_correlation_accuracy = 0.0;  // 100 * corr(predicted, actual), test
  double out_msfe = 0.0;                  // mean squared forecast error, test
  double sign_agreement = 0.0;            // 100 * share of matching signs, test
  std::size_t n_train = 0;
  std::size_t n_test = 0;
};

// Fits OLS once on the training window and scores the fixed coefficients on
// the validation window.
ForecastReport evaluate(const std::string& model_id, const TrainTestSplit& split);

ForecastReport evaluate(const std::string& model_id, const TimeSeries& y, const Panel& X,
                        double ratio);

// Metric helpers shared with the report emission.
double msfe(const std::vector<double>& actual, const std::vector<double>& predicted);
double correlation_accuracy(const std::vector<double>& actual,
                            const std::vector<double>& predicted);
double sign_agreement(const std::vector<double>& actual, const std::vector<double>& predicted);

}  // namespace hrix
