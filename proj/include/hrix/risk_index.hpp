#pragma once

#include <string>
#include <vector>

#include "hrix/pca.hpp"
#include "hrix/tgarch.hpp"
#include "hrix/timeseries.hpp"

namespace hrix {

// Conditional volatility columns sqrt(sigma2_x) from a set of fits sharing
// one date axis, named after the fitted variables.
Panel build_volatility_panel(const std::vector<TGarchFit>& fits);

// First principal component of the volatility panel: the loadings weight the
// named volatility series, `raw` is the PC1 score series and `standardized`
// its z-scored version.
struct RiskIndex {
  std::vector<std::string> ids;
  std::vector<double> loadings;
  std::vector<double> centers;
  std::vector<double> scales;
  double raw_mean = 0.0;
  double raw_std = 1.0;
  TimeSeries raw;
  TimeSeries standardized;
  double explained_share = 0.0;
  std::vector<double> proportions;
  PcaMode mode = PcaMode::covariance;
};

RiskIndex build_risk_index(const Panel& vol_panel, PcaMode mode = PcaMode::covariance);

// Recomputes the standardized index from persisted loadings and
// standardization constants; equal to the stored series by construction.
TimeSeries regenerate_index(const RiskIndex& idx, const Panel& vol_panel);

}  // namespace hrix
