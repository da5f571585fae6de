#pragma once

#include <string>
#include <vector>

#include "hrix/linalg.hpp"
#include "hrix/timeseries.hpp"

namespace hrix {

enum class PcaMode { covariance, correlation };

PcaMode parse_pca_mode(std::string_view name);

// Principal components from an exact Jacobi eigendecomposition of the
// covariance or correlation matrix. Loading columns are unit-norm
// eigenvectors, ordered by descending eigenvalue, each flipped so its
// coefficient sum is nonnegative.
struct PcaModel {
  std::vector<std::string> ids;
  Matrix loadings;                  // rows = variables, columns = components
  std::vector<double> eigenvalues;  // nonincreasing, clamped at 0
  std::vector<double> proportions;  // eigenvalue shares, sum 1
  std::vector<double> centers;
  std::vector<double> scales;       // all 1 in covariance mode
  PcaMode mode = PcaMode::covariance;
  Matrix analyzed;                  // the matrix that was decomposed
};

PcaModel fit_pca(const Panel& p, PcaMode mode);

struct ScoreSeries {
  int component = 1;  // 1-based
  TimeSeries series;
};

// score_t = sum_j loading_j * (x_jt - center_j) / scale_j for components 1..k.
std::vector<ScoreSeries> scores(const PcaModel& model, const Panel& p, std::size_t k);

}  // namespace hrix
