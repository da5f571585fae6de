#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hrix/timeseries.hpp"

namespace hrix {

inline constexpr int kAutoNwLag = -1;

struct RegressionSpec {
  std::string dependent;
  std::vector<std::string> regressors;
  int index_lag = 0;       // months the index is lagged
  int dependent_lead = 0;  // months the dependent is led
};

struct RegressionFit {
  RegressionSpec spec;
  std::vector<std::string> names;  // "const" first
  std::vector<double> coef;
  std::vector<double> hac_se;
  std::vector<double> t_stats;
  std::vector<double> p_values;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  std::size_t n = 0;
  int nw_lag = 0;
  std::vector<double> fitted;
  std::vector<double> residuals;
};

// OLS with an intercept and Newey-West HAC standard errors using Bartlett
// weights up to `nw_lag`; kAutoNwLag applies floor(4 * (n/100)^(2/9)).
// Lag 0 reduces to the HC0 sandwich.
RegressionFit ols_nw(const TimeSeries& y, const Panel& X, int nw_lag = kAutoNwLag);

struct QuantileOptions {
  int bootstrap = 499;  // pairs-bootstrap replicates for standard errors; 0 disables
  std::uint64_t seed = 7;
};

struct QuantileFit {
  double tau = 0.5;
  std::vector<std::string> names;
  std::vector<double> coef;
  std::vector<double> se;
  double objective = 0.0;  // attained pinball loss (sum over observations)
  std::size_t n = 0;
};

// Minimizes the pinball loss sum_t rho_tau(y_t - x_t'b) with an intercept.
// IRLS on a smoothed loss provides the start, a basic-solution exchange step
// reaches an LP-optimal vertex, and a coordinate polish settles interior flat
// stretches (so the tau = 0.5 intercept-only fit is the textbook median).
QuantileFit quantile_fit(const TimeSeries& y, const Panel& X, double tau,
                         const QuantileOptions& opt = {});

double pinball_loss(const std::vector<double>& residuals, double tau);

struct PredictiveSpec {
  int lag_index = 1;        // Eq-14 style: dependent at t, index at t - lag
  int lead_dependent = 0;   // Eq-15 style: dependent at t + lead, index at t
  std::vector<double> quantiles;
  int nw_lag = kAutoNwLag;
  QuantileOptions quantile_opt;
};

struct PredictiveResult {
  RegressionFit ols;
  std::vector<QuantileFit> quantile_fits;
};

// Builds the lagged/led design (controls enter at the dependent's date) and
// dispatches to ols_nw plus one quantile fit per requested tau.
PredictiveResult predictive_regression(const TimeSeries& returns, const TimeSeries& index,
                                       const std::optional<Panel>& controls,
                                       const PredictiveSpec& spec);

// Shared design assembly for the predictive family: column 0 is the (lagged)
// index, then the controls, all aligned to the dependent variable's dates.
struct AlignedDesign {
  TimeSeries y;
  Panel X;
};
AlignedDesign build_predictive_design(const TimeSeries& returns, const TimeSeries& index,
                                      const std::optional<Panel>& controls, int lag_index,
                                      int lead_dependent);

}  // namespace hrix
