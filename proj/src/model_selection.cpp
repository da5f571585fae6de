#include "hrix/model_selection.hpp"

#include <algorithm>
#include <cmath>

#include "hrix/linalg.hpp"

namespace hrix {

namespace {

// SSR of y on the selected Gram columns. Dependent columns are pivoted out
// (coefficient 0), so a subset carrying a duplicate column attains exactly
// the fit of the smaller subset.
double subset_ssr(const Matrix& gram, const std::vector<double>& xty, double yty,
                  const std::vector<std::size_t>& idx) {
  std::size_t p = idx.size();
  Matrix l(p, p);
  std::vector<bool> live(p, true);
  double max_diag = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    max_diag = std::max(max_diag, gram(idx[i], idx[i]));
  }
  const double tol = 1e-10 * std::max(1.0, max_diag);
  for (std::size_t i = 0; i < p; ++i) {
    double s = gram(idx[i], idx[i]);
    for (std::size_t k = 0; k < i; ++k) {
      if (live[k]) s -= l(i, k) * l(i, k);
    }
    if (s <= tol) {
      live[i] = false;
      continue;
    }
    l(i, i) = std::sqrt(s);
    for (std::size_t r = i + 1; r < p; ++r) {
      double v = gram(idx[r], idx[i]);
      for (std::size_t k = 0; k < i; ++k) {
        if (live[k]) v -= l(r, k) * l(i, k);
      }
      l(r, i) = v / l(i, i);
    }
  }
  double ssr = yty;
  std::vector<double> z(p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    if (!live[i]) continue;
    double s = xty[idx[i]];
    for (std::size_t k = 0; k < i; ++k) {
      if (live[k]) s -= l(i, k) * z[k];
    }
    z[i] = s / l(i, i);
    ssr -= z[i] * z[i];
  }
  return std::max(ssr, 0.0);
}

}  // namespace

ModelRanking enumerate_models(const TimeSeries& y, const Panel& candidates,
                              const std::vector<std::string>& always_include,
                              std::size_t top_k) {
  if (y.start() != candidates.start() || y.size() != candidates.n_rows()) {
    fail(Errc::date_misalignment, "enumerate_models: y and candidates are not aligned");
  }
  if (candidates.n_cols() > 20) {
    fail(Errc::too_many_candidates, "exhaustive enumeration caps at 20 candidates");
  }

  std::vector<std::string> pinned = always_include;
  std::vector<std::string> free_ids;
  for (const auto& id : candidates.ids()) {
    if (std::find(pinned.begin(), pinned.end(), id) == pinned.end()) free_ids.push_back(id);
  }
  for (const auto& id : pinned) {
    if (!candidates.contains(id)) {
      fail(Errc::schema_mismatch, "always_include column '" + id + "' is not a candidate");
    }
  }

  std::size_t n = y.size();
  std::size_t k_free = free_ids.size();
  std::size_t p_max = 1 + pinned.size() + k_free;
  if (n <= p_max + 2) fail(Errc::too_short, "enumerate_models needs n > max subset size + 2");

  // Gram over [intercept, pinned..., free...]; every subset reads the same
  // precomputed entries, so rankings are unchanged when candidates are added.
  std::size_t cols = 1 + pinned.size() + k_free;
  std::vector<const std::vector<double>*> colv;
  std::vector<double> ones(n, 1.0);
  colv.push_back(&ones);
  for (const auto& id : pinned) colv.push_back(&candidates.col(id).values());
  for (const auto& id : free_ids) colv.push_back(&candidates.col(id).values());

  Matrix gram_m(cols, cols);
  std::vector<double> xty(cols, 0.0);
  double yty = 0.0;
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = i; j < cols; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < n; ++t) s += (*colv[i])[t] * (*colv[j])[t];
      gram_m(i, j) = gram_m(j, i) = s;
    }
    for (std::size_t t = 0; t < n; ++t) xty[i] += (*colv[i])[t] * y[t];
  }
  for (std::size_t t = 0; t < n; ++t) yty += y[t] * y[t];

  const double dn = static_cast<double>(n);
  const double ln_n = std::log(dn);
  const double ln_2pi = std::log(2.0 * 3.14159265358979323846);

  std::size_t count = std::size_t{1} << k_free;
  std::vector<ModelEntry> all;
  all.reserve(count);
  std::vector<std::size_t> idx;
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    idx.clear();
    for (std::size_t c = 0; c <= pinned.size(); ++c) idx.push_back(c);
    for (std::size_t b = 0; b < k_free; ++b) {
      if (mask & (std::uint32_t{1} << b)) idx.push_back(1 + pinned.size() + b);
    }
    double ssr = subset_ssr(gram_m, xty, yty, idx);
    double loglik_hat = -0.5 * dn * (ln_2pi + std::log(std::max(ssr, 1e-300) / dn) + 1.0);
    double p_coef = static_cast<double>(idx.size());
    ModelEntry e;
    e.bitmask = mask;
    e.size = idx.size() - 1;
    e.log_marginal = loglik_hat - 0.5 * p_coef * ln_n;
    e.included = pinned;
    for (std::size_t b = 0; b < k_free; ++b) {
      if (mask & (std::uint32_t{1} << b)) e.included.push_back(free_ids[b]);
    }
    all.push_back(std::move(e));
  }

  // Posterior over the full enumeration under a uniform prior.
  double lmax = all.front().log_marginal;
  for (const auto& e : all) lmax = std::max(lmax, e.log_marginal);
  double lse = 0.0;
  for (const auto& e : all) lse += std::exp(e.log_marginal - lmax);
  lse = lmax + std::log(lse);
  for (auto& e : all) e.posterior_prob = std::exp(e.log_marginal - lse);

  std::stable_sort(all.begin(), all.end(), [](const ModelEntry& a, const ModelEntry& b) {
    if (a.log_marginal != b.log_marginal) return a.log_marginal > b.log_marginal;
    if (a.size != b.size) return a.size < b.size;
    std::vector<std::string> ia = a.included, ib = b.included;
    std::sort(ia.begin(), ia.end());
    std::sort(ib.begin(), ib.end());
    return ia < ib;
  });

  ModelRanking ranking;
  ranking.total_models = all.size();
  ranking.best = all.front();
  if (top_k < all.size()) all.resize(top_k);
  ranking.entries = std::move(all);
  return ranking;
}

}  // namespace hrix
