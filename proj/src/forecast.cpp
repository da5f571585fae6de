#include "hrix/forecast.hpp"

#include <cmath>

#include "hrix/regression.hpp"

namespace hrix {

TrainTestSplit split_train_test(const TimeSeries& y, const Panel& X, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    fail(Errc::config_error, "split ratio must lie strictly inside (0, 1)");
  }
  if (y.start() != X.start() || y.size() != X.n_rows()) {
    fail(Errc::date_misalignment, "split_train_test: y and X are not aligned");
  }
  std::size_t n = y.size();
  auto n_train = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n)));
  if (n_train < 1 || n_train >= n) {
    fail(Errc::too_short, "split leaves an empty train or test segment");
  }
  Month cut = y.date(n_train - 1);
  return TrainTestSplit{
      y.slice(y.start(), cut),
      y.slice(cut.plus(1), y.end()),
      X.slice(X.start(), cut),
      X.slice(cut.plus(1), X.end()),
  };
}

double msfe(const std::vector<double>& actual, const std::vector<double>& predicted) {
  if (actual.size() != predicted.size() || actual.empty()) {
    fail(Errc::too_short, "msfe needs equal-length nonempty vectors");
  }
  double s = 0.0;
  for (std::size_t t = 0; t < actual.size(); ++t) {
    double d = actual[t] - predicted[t];
    s += d * d;
  }
  return s / static_cast<double>(actual.size());
}

double correlation_accuracy(const std::vector<double>& actual,
                            const std::vector<double>& predicted) {
  try {
    return 100.0 * pearson(actual, predicted);
  } catch (const Error& e) {
    if (e.code() == Errc::zero_variance) return 0.0;  // constant forecast
    throw;
  }
}

double sign_agreement(const std::vector<double>& actual, const std::vector<double>& predicted) {
  if (actual.size() != predicted.size() || actual.empty()) {
    fail(Errc::too_short, "sign_agreement needs equal-length nonempty vectors");
  }
  std::size_t hits = 0;
  for (std::size_t t = 0; t < actual.size(); ++t) {
    bool a = actual[t] >= 0.0, p = predicted[t] >= 0.0;
    if (a == p) ++hits;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(actual.size());
}

ForecastReport evaluate(const std::string& model_id, const TrainTestSplit& split) {
  RegressionFit fit = ols_nw(split.y_train, split.x_train, 0);

  ForecastReport rep;
  rep.model_id = model_id;
  rep.n_train = split.y_train.size();
  rep.n_test = split.y_test.size();

  rep.in_correlation_accuracy = correlation_accuracy(split.y_train.values(), fit.fitted);
  double ssr = 0.0;
  for (double r : fit.residuals) ssr += r * r;
  double df = static_cast<double>(rep.n_train) - static_cast<double>(fit.coef.size());
  rep.in_residual_std_error = std::sqrt(ssr / df);

  std::vector<double> pred(rep.n_test);
  for (std::size_t t = 0; t < rep.n_test; ++t) {
    double yh = fit.coef[0];
    for (std::size_t j = 0; j < split.x_test.n_cols(); ++j) {
      yh += fit.coef[j + 1] * split.x_test.at(t, j);
    }
    pred[t] = yh;
  }
  rep.out_msfe = msfe(split.y_test.values(), pred);
  rep.out_correlation_accuracy = correlation_accuracy(split.y_test.values(), pred);
  rep.sign_agreement = sign_agreement(split.y_test.values(), pred);
  return rep;
}

ForecastReport evaluate(const std::string& model_id, const TimeSeries& y, const Panel& X,
                        double ratio) {
  return evaluate(model_id, split_train_test(y, X, ratio));
}

}  // namespace hrix
