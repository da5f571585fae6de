#include "hrix/risk_index.hpp"

#include <cmath>

namespace hrix {

Panel build_volatility_panel(const std::vector<TGarchFit>& fits) {
  if (fits.empty()) fail(Errc::schema_mismatch, "no fits to assemble");
  std::vector<TimeSeries> cols;
  cols.reserve(fits.size());
  for (const auto& fit : fits) {
    if (fit.path.sigma2_x.start() != fits.front().path.sigma2_x.start() ||
        fit.path.sigma2_x.size() != fits.front().path.sigma2_x.size()) {
      fail(Errc::date_misalignment, "fit '" + fit.id + "' is not on the shared date axis");
    }
    cols.push_back(fit.volatility());
  }
  return Panel(std::move(cols));
}

RiskIndex build_risk_index(const Panel& vol_panel, PcaMode mode) {
  if (vol_panel.n_rows() < 24) {
    fail(Errc::not_enough_rows, "risk index needs at least 24 months");
  }
  PcaModel model = fit_pca(vol_panel, mode);
  std::vector<ScoreSeries> pc = scores(model, vol_panel, 1);

  RiskIndex idx;
  idx.ids = model.ids;
  idx.loadings = model.loadings.col(0);
  idx.centers = model.centers;
  idx.scales = model.scales;
  idx.explained_share = model.proportions.front();
  idx.proportions = model.proportions;
  idx.mode = mode;

  TimeSeries raw = pc.front().series.renamed("risk_index_raw");
  idx.raw_mean = mean(raw.values());
  idx.raw_std = sample_std(raw.values());
  if (idx.raw_std <= 0.0) fail(Errc::zero_variance, "risk index has zero variance");

  std::vector<double> z(raw.size());
  for (std::size_t t = 0; t < raw.size(); ++t) z[t] = (raw[t] - idx.raw_mean) / idx.raw_std;
  idx.raw = std::move(raw);
  idx.standardized = TimeSeries("risk_index", idx.raw.start(), std::move(z));
  return idx;
}

TimeSeries regenerate_index(const RiskIndex& idx, const Panel& vol_panel) {
  if (vol_panel.ids() != idx.ids) {
    fail(Errc::schema_mismatch, "panel columns do not match the stored loadings");
  }
  std::size_t n = vol_panel.n_rows();
  std::vector<double> z(n, 0.0);
  for (std::size_t j = 0; j < idx.ids.size(); ++j) {
    const auto& col = vol_panel.col(j).values();
    double w = idx.loadings[j], c = idx.centers[j], s = idx.scales[j];
    for (std::size_t t = 0; t < n; ++t) z[t] += w * (col[t] - c) / s;
  }
  for (std::size_t t = 0; t < n; ++t) z[t] = (z[t] - idx.raw_mean) / idx.raw_std;
  return TimeSeries("risk_index", vol_panel.start(), std::move(z));
}

}  // namespace hrix
