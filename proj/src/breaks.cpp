#include "hrix/breaks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hrix/linalg.hpp"

namespace hrix {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Row-major (start, end) inclusive SSR table, inadmissible cells +inf.
class SegmentSsr {
 public:
  SegmentSsr(const std::vector<std::vector<double>>& cols, const std::vector<double>& y,
             std::size_t min_len)
      : n_(y.size()), table_(n_ * n_, kInf) {
    std::size_t p = cols.size();
    Matrix g(p, p);
    std::vector<double> xty(p), z(p);
    std::vector<bool> live(p);
    Matrix l(p, p);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t a = 0; a < p; ++a) {
        xty[a] = 0.0;
        for (std::size_t b = 0; b < p; ++b) g(a, b) = 0.0;
      }
      double yty = 0.0;
      for (std::size_t j = i; j < n_; ++j) {
        for (std::size_t a = 0; a < p; ++a) {
          for (std::size_t b = a; b < p; ++b) g(a, b) += cols[a][j] * cols[b][j];
          xty[a] += cols[a][j] * y[j];
        }
        yty += y[j] * y[j];
        if (j - i + 1 < min_len) continue;
        // Cholesky with pivot skipping; dependent columns drop out.
        double max_diag = 1.0;
        for (std::size_t a = 0; a < p; ++a) max_diag = std::max(max_diag, g(a, a));
        const double tol = 1e-10 * max_diag;
        double ssr = yty;
        for (std::size_t a = 0; a < p; ++a) {
          double s = g(a, a);
          for (std::size_t k = 0; k < a; ++k) {
            if (live[k]) s -= l(a, k) * l(a, k);
          }
          live[a] = s > tol;
          if (!live[a]) continue;
          l(a, a) = std::sqrt(s);
          for (std::size_t r = a + 1; r < p; ++r) {
            double v = g(a, r);
            for (std::size_t k = 0; k < a; ++k) {
              if (live[k]) v -= l(r, k) * l(a, k);
            }
            l(r, a) = v / l(a, a);
          }
        }
        for (std::size_t a = 0; a < p; ++a) {
          if (!live[a]) continue;
          double s = xty[a];
          for (std::size_t k = 0; k < a; ++k) {
            if (live[k]) s -= l(a, k) * z[k];
          }
          z[a] = s / l(a, a);
          ssr -= z[a] * z[a];
        }
        table_[i * n_ + j] = std::max(ssr, 0.0);
      }
    }
  }

  double operator()(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> table_;
};

}  // namespace

BreakpointSet find_breaks(const TimeSeries& y, const std::optional<Panel>& X,
                          std::size_t max_breaks, double trim) {
  if (!(trim > 0.0 && trim < 0.5)) fail(Errc::config_error, "trim must lie in (0, 0.5)");
  std::size_t n = y.size();
  std::size_t p = 1 + (X ? X->n_cols() : 0);
  if (X && (X->start() != y.start() || X->n_rows() != n)) {
    fail(Errc::date_misalignment, "find_breaks: y and X are not aligned");
  }

  std::size_t min_len =
      std::max<std::size_t>(static_cast<std::size_t>(std::ceil(trim * static_cast<double>(n))),
                            p + 1);
  if ((max_breaks + 1) * min_len > n) {
    fail(Errc::infeasible_trim, "trim " + std::to_string(trim) + " leaves no room for " +
                                    std::to_string(max_breaks) + " breaks in n = " +
                                    std::to_string(n));
  }

  std::vector<std::vector<double>> cols;
  cols.emplace_back(n, 1.0);
  if (X) {
    for (const auto& c : X->columns()) cols.push_back(c.values());
  }

  // Full-sample design must be identified.
  {
    Matrix g(p, p);
    for (std::size_t a = 0; a < p; ++a) {
      for (std::size_t b = a; b < p; ++b) {
        double s = 0.0;
        for (std::size_t t = 0; t < n; ++t) s += cols[a][t] * cols[b][t];
        g(a, b) = g(b, a) = s;
      }
    }
    try {
      cholesky(g, 1e-10);
    } catch (const Error&) {
      fail(Errc::rank_deficient, "find_breaks: design matrix is rank deficient");
    }
  }

  SegmentSsr ssr(cols, y.values(), min_len);

  // dp[m][j]: best SSR splitting observations 0..j into m+1 admissible segments.
  std::size_t mmax = max_breaks;
  std::vector<std::vector<double>> dp(mmax + 1, std::vector<double>(n, kInf));
  std::vector<std::vector<std::size_t>> arg(mmax + 1, std::vector<std::size_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j) dp[0][j] = ssr(0, j);
  for (std::size_t m = 1; m <= mmax; ++m) {
    for (std::size_t j = 0; j < n; ++j) {
      double best = kInf;
      std::size_t best_s = 0;
      // last segment is [s+1, j]
      for (std::size_t s = m * min_len - 1; s + min_len <= j; ++s) {
        if (dp[m - 1][s] == kInf) continue;
        double v = dp[m - 1][s] + ssr(s + 1, j);
        if (v < best) {
          best = v;
          best_s = s;
        }
      }
      dp[m][j] = best;
      arg[m][j] = best_s;
    }
  }

  BreakpointSet out;
  const double dn = static_cast<double>(n);
  const double ln_n = std::log(dn);
  double best_bic = kInf;
  for (std::size_t m = 0; m <= mmax; ++m) {
    double total = dp[m][n - 1];
    double k_params = static_cast<double>((m + 1) * p + m);
    double bic = total == kInf
                     ? kInf
                     : dn * std::log(std::max(total, 1e-300) / dn) + k_params * ln_n;
    out.criterion_values.push_back(bic);
    if (bic < best_bic) {
      best_bic = bic;
      out.chosen_m = m;
    }
  }

  out.total_ssr = dp[out.chosen_m][n - 1];
  std::vector<std::size_t> ends;  // last index of each segment, reverse order
  std::size_t j = n - 1;
  for (std::size_t m = out.chosen_m; m > 0; --m) {
    std::size_t s = arg[m][j];
    ends.push_back(j);
    j = s;
  }
  ends.push_back(j);
  std::reverse(ends.begin(), ends.end());

  std::size_t seg_start = 0;
  for (std::size_t k = 0; k < ends.size(); ++k) {
    out.segment_ssr.push_back(ssr(seg_start, ends[k]));
    if (k + 1 < ends.size()) {
      out.break_dates.push_back(y.date(ends[k]));
      out.break_labels.push_back(y.date(ends[k]).break_label());
    }
    seg_start = ends[k] + 1;
  }
  return out;
}

SubsampleFit subsample_fit(const TimeSeries& returns, const TimeSeries& index,
                           const std::optional<Panel>& controls, Month break_date,
                           const PredictiveSpec& spec) {
  auto run_side = [&](Month from, Month to, const char* side) {
    try {
      TimeSeries r = returns.slice(from, to);
      TimeSeries ix = index.slice(from, to);
      std::optional<Panel> ctl;
      if (controls) ctl = controls->slice(from, to);
      return predictive_regression(r, ix, ctl, spec);
    } catch (const Error& e) {
      if (e.code() == Errc::too_short || e.code() == Errc::alignment_empty) {
        fail(Errc::segment_too_short,
             std::string(side) + "-break segment has fewer than 30 usable observations");
      }
      throw;
    }
  };
  Month lo = std::max(returns.start(), index.start());
  Month hi = std::min(returns.end(), index.end());
  if (break_date < lo || break_date >= hi) {
    fail(Errc::segment_too_short, "break date " + break_date.str() + " leaves an empty side");
  }
  SubsampleFit out{break_date, run_side(lo, break_date, "pre"),
                   run_side(break_date.plus(1), hi, "post")};
  return out;
}

}  // namespace hrix
