#include "hrix/pca.hpp"

#include <cmath>

namespace hrix {

PcaMode parse_pca_mode(std::string_view name) {
  if (name == "covariance") return PcaMode::covariance;
  if (name == "correlation") return PcaMode::correlation;
  fail(Errc::config_error, "unknown pca mode '" + std::string(name) + "'");
}

PcaModel fit_pca(const Panel& p, PcaMode mode) {
  std::size_t n = p.n_rows();
  std::size_t k = p.n_cols();
  if (n < 2) fail(Errc::not_enough_rows, "pca needs at least 2 rows");

  PcaModel model;
  model.ids = p.ids();
  model.mode = mode;
  model.centers.resize(k);
  model.scales.assign(k, 1.0);

  for (std::size_t j = 0; j < k; ++j) model.centers[j] = mean(p.col(j).values());
  if (mode == PcaMode::correlation) {
    for (std::size_t j = 0; j < k; ++j) {
      double sd = sample_std(p.col(j).values());
      if (sd <= 0.0) {
        fail(Errc::zero_variance, "column '" + p.col(j).id() + "' is constant");
      }
      model.scales[j] = sd;
    }
  }

  Matrix a(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& xi = p.col(i).values();
    for (std::size_t j = i; j < k; ++j) {
      const auto& xj = p.col(j).values();
      double s = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        s += (xi[t] - model.centers[i]) * (xj[t] - model.centers[j]);
      }
      s /= static_cast<double>(n - 1) * model.scales[i] * model.scales[j];
      a(i, j) = a(j, i) = s;
    }
  }
  model.analyzed = a;

  EigenSym eig = jacobi_eigen(a);
  model.loadings = eig.vectors;
  model.eigenvalues = eig.values;
  double total = 0.0;
  for (auto& e : model.eigenvalues) {
    if (e < 0.0) e = 0.0;  // roundoff on a PSD input
    total += e;
  }
  if (total <= 0.0) fail(Errc::zero_variance, "panel has no variance");
  model.proportions.resize(k);
  for (std::size_t c = 0; c < k; ++c) model.proportions[c] = model.eigenvalues[c] / total;

  // Sign convention: each component's loading sum is nonnegative.
  for (std::size_t c = 0; c < k; ++c) {
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += model.loadings(i, c);
    if (sum < 0.0) {
      for (std::size_t i = 0; i < k; ++i) model.loadings(i, c) = -model.loadings(i, c);
    }
  }
  return model;
}

std::vector<ScoreSeries> scores(const PcaModel& model, const Panel& p, std::size_t k) {
  if (p.ids() != model.ids) {
    fail(Errc::schema_mismatch, "panel columns do not match the fitted model");
  }
  if (k == 0 || k > model.ids.size()) {
    fail(Errc::schema_mismatch, "component count out of range");
  }
  std::size_t n = p.n_rows();
  std::size_t m = model.ids.size();
  std::vector<ScoreSeries> out;
  out.reserve(k);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<double> s(n, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      double w = model.loadings(j, c);
      const auto& xj = p.col(j).values();
      double center = model.centers[j], scale = model.scales[j];
      for (std::size_t t = 0; t < n; ++t) s[t] += w * (xj[t] - center) / scale;
    }
    out.push_back(ScoreSeries{static_cast<int>(c) + 1,
                              TimeSeries("PC" + std::to_string(c + 1), p.start(), std::move(s))});
  }
  return out;
}

}  // namespace hrix
