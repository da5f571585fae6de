#include "hrix/regression.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hrix/linalg.hpp"
#include "hrix/prob.hpp"
#include "hrix/rng.hpp"

namespace hrix {

namespace {

// Design with a leading intercept column.
Matrix design_matrix(const Panel& X) {
  std::size_t n = X.n_rows(), k = X.n_cols();
  Matrix d(n, k + 1);
  for (std::size_t t = 0; t < n; ++t) {
    d(t, 0) = 1.0;
    for (std::size_t j = 0; j < k; ++j) d(t, j + 1) = X.at(t, j);
  }
  return d;
}

std::vector<std::string> design_names(const Panel& X) {
  std::vector<std::string> names{"const"};
  for (const auto& id : X.ids()) names.push_back(id);
  return names;
}

Matrix gram(const Matrix& d) {
  std::size_t n = d.rows(), p = d.cols();
  Matrix g(p, p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < n; ++t) s += d(t, i) * d(t, j);
      g(i, j) = g(j, i) = s;
    }
  }
  return g;
}

std::vector<double> ols_solve(const Matrix& d, const std::vector<double>& y) {
  std::size_t n = d.rows(), p = d.cols();
  Matrix g = gram(d);
  std::vector<double> xty(p, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t j = 0; j < p; ++j) xty[j] += d(t, j) * y[t];
  }
  return solve_spd(g, xty, 1e-10);
}

int auto_nw_lag(std::size_t n) {
  return static_cast<int>(std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 2.0 / 9.0)));
}

// Minimizes sum_t rho_tau(r_t - c * x_t) over the scalar c. The subgradient is
// a step function that only jumps upward at the breakpoints r/x; flat optima
// return the interval midpoint.
double weighted_quantile_step(const std::vector<double>& r, const std::vector<double>& x,
                              double tau, double current) {
  std::vector<std::pair<double, double>> bp;  // (breakpoint, |x|)
  bp.reserve(r.size());
  double d = 0.0;  // derivative as c -> -inf
  for (std::size_t t = 0; t < r.size(); ++t) {
    if (x[t] == 0.0) continue;
    d += x[t] > 0.0 ? -x[t] * tau : -x[t] * (tau - 1.0);
    bp.emplace_back(r[t] / x[t], std::fabs(x[t]));
  }
  if (bp.empty() || d >= 0.0) return current;
  std::sort(bp.begin(), bp.end());
  for (std::size_t i = 0; i < bp.size(); ++i) {
    d += bp[i].second;
    if (d > 0.0) return bp[i].first;
    if (d == 0.0) {
      return i + 1 < bp.size() ? 0.5 * (bp[i].first + bp[i + 1].first) : bp[i].first;
    }
  }
  return bp.back().first;
}

struct QuantileWork {
  const Matrix& d;
  const std::vector<double>& y;
  double tau;

  double loss(const std::vector<double>& b) const {
    double s = 0.0;
    for (std::size_t t = 0; t < d.rows(); ++t) {
      double u = y[t];
      for (std::size_t j = 0; j < d.cols(); ++j) u -= d(t, j) * b[j];
      s += u * (tau - (u < 0.0 ? 1.0 : 0.0));
    }
    return s;
  }
};

// IRLS on the smoothed loss; the smoothing floor decays 1e-2 -> 1e-8.
std::vector<double> irls_start(const QuantileWork& w) {
  std::size_t n = w.d.rows(), p = w.d.cols();
  std::vector<double> b;
  try {
    b = ols_solve(w.d, w.y);
  } catch (const Error&) {
    b.assign(p, 0.0);
  }
  std::vector<double> u(n);
  for (double delta = 1e-2; delta >= 1e-8; delta *= 0.1) {
    for (int it = 0; it < 8; ++it) {
      for (std::size_t t = 0; t < n; ++t) {
        double r = w.y[t];
        for (std::size_t j = 0; j < p; ++j) r -= w.d(t, j) * b[j];
        u[t] = r;
      }
      Matrix g(p, p);
      std::vector<double> rhs(p, 0.0);
      for (std::size_t t = 0; t < n; ++t) {
        double psi = u[t] >= 0.0 ? w.tau : 1.0 - w.tau;
        double wt = psi / std::max(std::fabs(u[t]), delta);
        for (std::size_t i = 0; i < p; ++i) {
          double di = w.d(t, i) * wt;
          for (std::size_t j = i; j < p; ++j) g(i, j) += di * w.d(t, j);
          rhs[i] += di * w.y[t];
        }
      }
      for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
      }
      try {
        b = solve_spd(g, rhs, 1e-14);
      } catch (const Error&) {
        return b;  // keep the last stable iterate
      }
    }
  }
  return b;
}

// Solves the p-point interpolation system; false when the subset is singular.
bool interpolate(const Matrix& d, const std::vector<double>& y,
                 const std::vector<std::size_t>& idx, std::vector<double>& out) {
  std::size_t p = d.cols();
  Matrix a(p, p);
  std::vector<double> rhs(p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) a(i, j) = d(idx[i], j);
    rhs[i] = y[idx[i]];
  }
  // Gaussian elimination with partial pivoting.
  std::vector<std::size_t> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < p; ++r) {
      if (std::fabs(a(r, c)) > std::fabs(a(piv, c))) piv = r;
    }
    if (std::fabs(a(piv, c)) < 1e-12) return false;
    if (piv != c) {
      for (std::size_t j = 0; j < p; ++j) std::swap(a(c, j), a(piv, j));
      std::swap(rhs[c], rhs[piv]);
    }
    for (std::size_t r = c + 1; r < p; ++r) {
      double m = a(r, c) / a(c, c);
      if (m == 0.0) continue;
      for (std::size_t j = c; j < p; ++j) a(r, j) -= m * a(c, j);
      rhs[r] -= m * rhs[c];
    }
  }
  out.assign(p, 0.0);
  for (std::size_t ii = p; ii-- > 0;) {
    double s = rhs[ii];
    for (std::size_t j = ii + 1; j < p; ++j) s -= a(ii, j) * out[j];
    out[ii] = s / a(ii, ii);
  }
  return true;
}

// Moves between interpolating bases (vertices of the pinball LP) while a
// single swap strictly improves the loss; at a vertex with no improving
// neighbor the solution is globally optimal.
void exchange_polish(const QuantileWork& w, std::vector<double>& b, double& best) {
  std::size_t n = w.d.rows(), p = w.d.cols();
  // Initial basis: smallest |residual| rows that form a nonsingular system.
  std::vector<std::pair<double, std::size_t>> by_resid(n);
  for (std::size_t t = 0; t < n; ++t) {
    double r = w.y[t];
    for (std::size_t j = 0; j < p; ++j) r -= w.d(t, j) * b[j];
    by_resid[t] = {std::fabs(r), t};
  }
  std::sort(by_resid.begin(), by_resid.end());
  std::vector<std::size_t> basis;
  std::vector<double> cand;
  for (const auto& [r, t] : by_resid) {
    basis.push_back(t);
    if (basis.size() == p) {
      if (interpolate(w.d, w.y, basis, cand)) break;
      basis.pop_back();
    }
  }
  if (basis.size() < p) return;
  double cl = w.loss(cand);
  if (cl < best) {
    best = cl;
    b = cand;
  }

  for (int pass = 0; pass < 200; ++pass) {
    bool improved = false;
    for (std::size_t i = 0; i < p && !improved; ++i) {
      std::size_t saved = basis[i];
      for (std::size_t t = 0; t < n; ++t) {
        if (std::find(basis.begin(), basis.end(), t) != basis.end()) continue;
        basis[i] = t;
        if (interpolate(w.d, w.y, basis, cand)) {
          double l = w.loss(cand);
          if (l < best - 1e-13 * (1.0 + std::fabs(best))) {
            best = l;
            b = cand;
            improved = true;
            break;
          }
        }
        basis[i] = saved;
      }
    }
    if (!improved) break;
  }
}

// Exact one-dimensional descent per coordinate; recenters flat optima, which
// settles the even-n median convention.
void coordinate_polish(const QuantileWork& w, std::vector<double>& b, double& best) {
  std::size_t n = w.d.rows(), p = w.d.cols();
  std::vector<double> r(n), xj(n);
  for (int cycle = 0; cycle < 200; ++cycle) {
    double before = best;
    for (std::size_t j = 0; j < p; ++j) {
      for (std::size_t t = 0; t < n; ++t) {
        double u = w.y[t];
        for (std::size_t c = 0; c < p; ++c) {
          if (c != j) u -= w.d(t, c) * b[c];
        }
        r[t] = u;
        xj[t] = w.d(t, j);
      }
      double c = weighted_quantile_step(r, xj, w.tau, b[j]);
      std::vector<double> nb = b;
      nb[j] = c;
      double l = w.loss(nb);
      if (l <= best) {
        best = l;
        b = std::move(nb);
      }
    }
    if (before - best <= 1e-15 * (1.0 + std::fabs(best))) break;
  }
}

std::vector<double> solve_quantile(const Matrix& d, const std::vector<double>& y, double tau,
                                   bool full_polish) {
  QuantileWork w{d, y, tau};
  std::vector<double> b = irls_start(w);
  double best = w.loss(b);
  if (full_polish) exchange_polish(w, b, best);
  coordinate_polish(w, b, best);
  return b;
}

}  // namespace

double pinball_loss(const std::vector<double>& residuals, double tau) {
  double s = 0.0;
  for (double u : residuals) s += u * (tau - (u < 0.0 ? 1.0 : 0.0));
  return s;
}

RegressionFit ols_nw(const TimeSeries& y, const Panel& X, int nw_lag) {
  if (y.start() != X.start() || y.size() != X.n_rows()) {
    fail(Errc::date_misalignment, "ols_nw: y and X are not on one date axis");
  }
  std::size_t n = y.size();
  std::size_t p = X.n_cols() + 1;
  if (n <= p + 1) fail(Errc::too_short, "ols_nw needs n > regressor count + 1");

  Matrix d = design_matrix(X);
  std::vector<double> b;
  try {
    b = ols_solve(d, y.values());
  } catch (const Error& err) {
    if (err.code() == Errc::rank_deficient) {
      fail(Errc::rank_deficient, "design matrix is rank deficient");
    }
    throw;
  }

  RegressionFit fit;
  fit.names = design_names(X);
  fit.coef = b;
  fit.n = n;
  fit.nw_lag = nw_lag == kAutoNwLag ? auto_nw_lag(n) : nw_lag;
  if (fit.nw_lag < 0) fail(Errc::config_error, "negative Newey-West lag");

  fit.fitted.resize(n);
  fit.residuals.resize(n);
  double ssr = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    double yh = 0.0;
    for (std::size_t j = 0; j < p; ++j) yh += d(t, j) * b[j];
    fit.fitted[t] = yh;
    fit.residuals[t] = y[t] - yh;
    ssr += fit.residuals[t] * fit.residuals[t];
  }
  double ym = mean(y.values());
  double tss = 0.0;
  for (std::size_t t = 0; t < n; ++t) tss += (y[t] - ym) * (y[t] - ym);
  fit.r2 = tss > 0.0 ? 1.0 - ssr / tss : 1.0;
  fit.adj_r2 = 1.0 - (1.0 - fit.r2) * (static_cast<double>(n) - 1.0) /
                         (static_cast<double>(n) - static_cast<double>(p));

  // Bartlett-weighted long-run covariance of the score contributions.
  Matrix s(p, p);
  Matrix g(n, p);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t j = 0; j < p; ++j) g(t, j) = d(t, j) * fit.residuals[t];
  }
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) s(i, j) += g(t, i) * g(t, j);
    }
  }
  for (int lag = 1; lag <= fit.nw_lag; ++lag) {
    double wgt = 1.0 - static_cast<double>(lag) / (static_cast<double>(fit.nw_lag) + 1.0);
    for (std::size_t t = static_cast<std::size_t>(lag); t < n; ++t) {
      for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
          double c = g(t, i) * g(t - lag, j);
          s(i, j) += wgt * c;
          s(j, i) += wgt * c;
        }
      }
    }
  }
  Matrix xtx_inv = inverse_spd(gram(d), 1e-10);
  Matrix cov = matmul(matmul(xtx_inv, s), xtx_inv);

  fit.hac_se.resize(p);
  fit.t_stats.resize(p);
  fit.p_values.resize(p);
  double df = static_cast<double>(n) - static_cast<double>(p);
  for (std::size_t j = 0; j < p; ++j) {
    fit.hac_se[j] = std::sqrt(std::max(cov(j, j), 0.0));
    fit.t_stats[j] = fit.hac_se[j] > 0.0 ? b[j] / fit.hac_se[j] : 0.0;
    fit.p_values[j] = student_t_two_sided_p(fit.t_stats[j], df);
  }
  return fit;
}

QuantileFit quantile_fit(const TimeSeries& y, const Panel& X, double tau,
                         const QuantileOptions& opt) {
  if (!(tau > 0.0 && tau < 1.0)) fail(Errc::tau_out_of_range, "tau must lie in (0, 1)");
  if (y.start() != X.start() || y.size() != X.n_rows()) {
    fail(Errc::date_misalignment, "quantile_fit: y and X are not on one date axis");
  }
  std::size_t n = y.size();
  std::size_t p = X.n_cols() + 1;
  if (n <= p + 1) fail(Errc::too_short, "quantile_fit needs n > regressor count + 1");

  Matrix d = design_matrix(X);
  try {
    cholesky(gram(d), 1e-10);
  } catch (const Error&) {
    fail(Errc::rank_deficient, "design matrix is rank deficient");
  }

  QuantileFit fit;
  fit.tau = tau;
  fit.names = design_names(X);
  fit.n = n;
  fit.coef = solve_quantile(d, y.values(), tau, /*full_polish=*/true);

  std::vector<double> resid(n);
  for (std::size_t t = 0; t < n; ++t) {
    double u = y[t];
    for (std::size_t j = 0; j < p; ++j) u -= d(t, j) * fit.coef[j];
    resid[t] = u;
  }
  fit.objective = pinball_loss(resid, tau);

  // Pairs bootstrap for the standard errors; replicates skip the exchange
  // step, which only sharpens the last few digits of the point estimate.
  fit.se.assign(p, 0.0);
  if (opt.bootstrap > 0) {
    std::vector<std::vector<double>> draws;
    draws.reserve(static_cast<std::size_t>(opt.bootstrap));
    Matrix db(n, p);
    std::vector<double> yb(n);
    for (int rep = 0; rep < opt.bootstrap; ++rep) {
      Rng rng(opt.seed, static_cast<std::uint64_t>(rep));
      for (std::size_t t = 0; t < n; ++t) {
        std::size_t k = rng.uniform_index(n);
        for (std::size_t j = 0; j < p; ++j) db(t, j) = d(k, j);
        yb[t] = y[k];
      }
      try {
        cholesky(gram(db), 1e-10);
      } catch (const Error&) {
        continue;  // degenerate resample
      }
      draws.push_back(solve_quantile(db, yb, tau, /*full_polish=*/false));
    }
    if (draws.size() >= 10) {
      for (std::size_t j = 0; j < p; ++j) {
        std::vector<double> col(draws.size());
        for (std::size_t r = 0; r < draws.size(); ++r) col[r] = draws[r][j];
        fit.se[j] = sample_std(col);
      }
    }
  }
  return fit;
}

AlignedDesign build_predictive_design(const TimeSeries& returns, const TimeSeries& index,
                                      const std::optional<Panel>& controls, int lag_index,
                                      int lead_dependent) {
  if (lag_index < 0 || lead_dependent < 0) {
    fail(Errc::config_error, "lag and lead must be nonnegative");
  }
  // Relabel dates so that row t carries y_{t+lead}, H_{t-lag}, controls_t.
  TimeSeries y_shift(returns.id(), returns.start().plus(-lead_dependent), returns.values());
  TimeSeries h_shift(index.id(), index.start().plus(lag_index), index.values());

  std::vector<std::pair<Month, Month>> spans{{y_shift.start(), y_shift.end()},
                                             {h_shift.start(), h_shift.end()}};
  if (controls) spans.push_back({controls->start(), controls->end()});
  DateRange range = common_range(spans);

  std::vector<TimeSeries> cols{h_shift.slice(range.from, range.to)};
  if (controls) {
    for (const auto& c : controls->columns()) cols.push_back(c.slice(range.from, range.to));
  }
  return AlignedDesign{y_shift.slice(range.from, range.to), Panel(std::move(cols))};
}

PredictiveResult predictive_regression(const TimeSeries& returns, const TimeSeries& index,
                                       const std::optional<Panel>& controls,
                                       const PredictiveSpec& spec) {
  AlignedDesign design =
      build_predictive_design(returns, index, controls, spec.lag_index, spec.lead_dependent);
  if (design.y.size() < 30) {
    fail(Errc::too_short, "predictive regression needs at least 30 aligned observations");
  }

  RegressionSpec rspec;
  rspec.dependent = returns.id();
  rspec.regressors = design.X.ids();
  rspec.index_lag = spec.lag_index;
  rspec.dependent_lead = spec.lead_dependent;

  PredictiveResult out{ols_nw(design.y, design.X, spec.nw_lag), {}};
  out.ols.spec = rspec;
  for (double tau : spec.quantiles) {
    out.quantile_fits.push_back(quantile_fit(design.y, design.X, tau, spec.quantile_opt));
  }
  return out;
}

}  // namespace hrix
