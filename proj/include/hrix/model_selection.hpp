#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hrix/timeseries.hpp"

namespace hrix {

struct ModelEntry {
  std::uint32_t bitmask = 0;  // over the free candidates, ordered as given
  std::vector<std::string> included;
  double log_marginal = 0.0;   // BIC approximation: loglik_hat - (p/2) ln n
  double posterior_prob = 0.0;  // normalized over the full enumeration
  std::size_t size = 0;         // number of regressors excluding the intercept
};

struct ModelRanking {
  std::vector<ModelEntry> entries;  // descending log_marginal, top_k of them
  ModelEntry best;
  std::size_t total_models = 0;
};

// Exhaustive Bayesian subset ranking over the candidate columns by the BIC
// approximation to the log marginal likelihood under a uniform model prior.
// always_include columns are pinned into every subset. Ties rank the smaller
// subset first, then the lower bitmask.
ModelRanking enumerate_models(const TimeSeries& y, const Panel& candidates,
                              const std::vector<std::string>& always_include,
                              std::size_t top_k);

}  // namespace hrix
