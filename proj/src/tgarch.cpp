#include "hrix/tgarch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hrix/linalg.hpp"
#include "hrix/nelder_mead.hpp"
#include "hrix/rng.hpp"

namespace hrix {

namespace {

constexpr double kTwoLnTwoPi = 2.0 * 1.8378770664093454836;  // 2 ln(2 pi)
constexpr double kPenalty = 1e10;

double softplus(double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); }
double softplus_inv(double y) { return y > 30.0 ? y : std::log(std::expm1(y)); }

double sigmoid(double x) {
  if (x >= 0.0) {
    double e = std::exp(-x);
    return 1.0 / (1.0 + e);
  }
  double e = std::exp(x);
  return e / (1.0 + e);
}

double logit(double p) {
  p = std::clamp(p, 1e-12, 1.0 - 1e-12);
  return std::log(p / (1.0 - p));
}

// Fills the three recursion paths; returns the index of the first step where
// Sigma_t stops being positive definite, or -1 when the whole path is fine.
long filter_core(const std::vector<double>& rx, const std::vector<double>& rf,
                 const TGarchParams& p, const CovInit& init, std::vector<double>& s2x,
                 std::vector<double>& s2f, std::vector<double>& sxf) {
  const std::size_t n = rx.size();
  s2x.resize(n);
  s2f.resize(n);
  sxf.resize(n);

  // Pre-sample state: lagged squared shocks proxied by the seeds, dummies off.
  double prev_s2x = init.s2x, prev_s2f = init.s2f, prev_sxf = init.sxf;
  double shock_x = init.s2x, shock_f = init.s2f, shock_xf = init.sxf;
  double dx = 0.0, df = 0.0;

  long bad = -1;
  for (std::size_t t = 0; t < n; ++t) {
    double vx = p.var_x.omega + p.var_x.alpha * shock_x + p.var_x.phi * prev_s2x +
                p.var_x.gamma * shock_x * dx;
    double vf = p.var_f.omega + p.var_f.alpha * shock_f + p.var_f.phi * prev_s2f +
                p.var_f.gamma * shock_f * df;
    double cxf = p.cov_xf.omega + p.cov_xf.alpha * shock_xf + p.cov_xf.phi * prev_sxf +
                 p.cov_xf.gamma * shock_xf * dx * df;
    s2x[t] = vx;
    s2f[t] = vf;
    sxf[t] = cxf;
    if (bad < 0 && !(vx > 0.0 && vf > 0.0 && vx * vf - cxf * cxf > 0.0)) {
      bad = static_cast<long>(t);
    }
    prev_s2x = vx;
    prev_s2f = vf;
    prev_sxf = cxf;
    shock_x = rx[t] * rx[t];
    shock_f = rf[t] * rf[t];
    shock_xf = rx[t] * rf[t];
    dx = rx[t] < 0.0 ? 1.0 : 0.0;
    df = rf[t] < 0.0 ? 1.0 : 0.0;
  }
  return bad;
}

double ll_core(const std::vector<double>& rx, const std::vector<double>& rf,
               const std::vector<double>& s2x, const std::vector<double>& s2f,
               const std::vector<double>& sxf) {
  double ll = 0.0;
  for (std::size_t t = 0; t < rx.size(); ++t) {
    double det = s2x[t] * s2f[t] - sxf[t] * sxf[t];
    double quad =
        (rx[t] * rx[t] * s2f[t] - 2.0 * rx[t] * rf[t] * sxf[t] + rf[t] * rf[t] * s2x[t]) / det;
    ll += -0.5 * (kTwoLnTwoPi + std::log(det) + quad);
  }
  return ll;
}

void check_aligned(const TimeSeries& a, const TimeSeries& b, const char* what) {
  if (a.start() != b.start() || a.size() != b.size()) {
    fail(Errc::date_misalignment, std::string(what) + ": series are not on one date axis");
  }
}

CovInit residual_moments(const std::vector<double>& rx, const std::vector<double>& rf) {
  double mx = mean(rx), mf = mean(rf);
  double vxx = 0.0, vff = 0.0, vxf = 0.0;
  for (std::size_t t = 0; t < rx.size(); ++t) {
    vxx += (rx[t] - mx) * (rx[t] - mx);
    vff += (rf[t] - mf) * (rf[t] - mf);
    vxf += (rx[t] - mx) * (rf[t] - mf);
  }
  double dn = static_cast<double>(rx.size() - 1);
  return CovInit{vxx / dn, vff / dn, vxf / dn};
}

}  // namespace

namespace detail {

std::array<double, 12> params_to_theta(const TGarchParams& p) {
  auto var_block = [](const GarchEq& e, double* out) {
    double s = std::clamp(e.alpha + e.phi, 1e-12, 1.0 - 1e-12);
    double u = std::clamp(e.alpha / s, 1e-12, 1.0 - 1e-12);
    out[0] = softplus_inv(std::max(e.omega, 1e-12));
    out[1] = logit(s);
    out[2] = logit(u);
    out[3] = e.gamma;
  };
  std::array<double, 12> t{};
  var_block(p.var_x, t.data());
  var_block(p.var_f, t.data() + 4);
  t[8] = p.cov_xf.omega;
  t[9] = p.cov_xf.alpha;
  t[10] = p.cov_xf.phi;
  t[11] = p.cov_xf.gamma;
  return t;
}

TGarchParams theta_to_params(const std::array<double, 12>& t) {
  auto var_block = [](const double* in) {
    double s = sigmoid(in[1]);
    double u = sigmoid(in[2]);
    return GarchEq{softplus(in[0]), s * u, s * (1.0 - u), in[3]};
  };
  TGarchParams p;
  p.var_x = var_block(t.data());
  p.var_f = var_block(t.data() + 4);
  p.cov_xf = GarchEq{t[8], t[9], t[10], t[11]};
  return p;
}

std::optional<double> penalized_loglik(const std::vector<double>& rx,
                                       const std::vector<double>& rf, const TGarchParams& params,
                                       const CovInit& init) {
  thread_local std::vector<double> s2x, s2f, sxf;
  if (filter_core(rx, rf, params, init, s2x, s2f, sxf) >= 0) return std::nullopt;
  return ll_core(rx, rf, s2x, s2f, sxf);
}

}  // namespace detail

VarFit fit_var1(const TimeSeries& x, const TimeSeries& f) {
  DateRange range = common_range({{x.start(), x.end()}, {f.start(), f.end()}});
  TimeSeries xs = x.slice(range.from, range.to);
  TimeSeries fs = f.slice(range.from, range.to);
  std::size_t n = xs.size();
  if (n < 10) fail(Errc::too_short, "fit_var1 needs at least 10 common observations");

  std::size_t m = n - 1;
  Matrix xtx(3, 3);
  std::array<std::vector<double>, 2> xty{std::vector<double>(3, 0.0),
                                         std::vector<double>(3, 0.0)};
  for (std::size_t t = 1; t < n; ++t) {
    double row[3] = {1.0, xs[t - 1], fs[t - 1]};
    double ys[2] = {xs[t], fs[t]};
    for (int i = 0; i < 3; ++i) {
      for (int j = i; j < 3; ++j) xtx(i, j) += row[i] * row[j];
      for (int e = 0; e < 2; ++e) xty[e][i] += row[i] * ys[e];
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < i; ++j) xtx(i, j) = xtx(j, i);
  }

  std::array<std::vector<double>, 2> beta;
  try {
    for (int e = 0; e < 2; ++e) beta[e] = solve_spd(xtx, xty[e]);
  } catch (const Error& err) {
    if (err.code() == Errc::rank_deficient) {
      fail(Errc::collinear_regressors, "lagged regressors are collinear");
    }
    throw;
  }

  std::vector<double> rx(m), rf(m), fx(m), ff(m);
  for (std::size_t t = 1; t < n; ++t) {
    double px = beta[0][0] + beta[0][1] * xs[t - 1] + beta[0][2] * fs[t - 1];
    double pf = beta[1][0] + beta[1][1] * xs[t - 1] + beta[1][2] * fs[t - 1];
    fx[t - 1] = px;
    ff[t - 1] = pf;
    rx[t - 1] = xs[t] - px;
    rf[t - 1] = fs[t] - pf;
  }

  Month rstart = range.from.plus(1);
  return VarFit{
      {beta[0][0], beta[1][0]},
      {{{beta[0][1], beta[0][2]}, {beta[1][1], beta[1][2]}}},
      TimeSeries("resid_" + xs.id(), rstart, std::move(rx)),
      TimeSeries("resid_" + fs.id(), rstart, std::move(rf)),
      TimeSeries("fitted_" + xs.id(), rstart, std::move(fx)),
      TimeSeries("fitted_" + fs.id(), rstart, std::move(ff)),
  };
}

CovariancePath tgarch_filter(const TimeSeries& resid_x, const TimeSeries& resid_f,
                             const TGarchParams& params, const CovInit& init) {
  check_aligned(resid_x, resid_f, "tgarch_filter");
  if (!(init.s2x > 0.0 && init.s2f > 0.0 && init.s2x * init.s2f - init.sxf * init.sxf > 0.0)) {
    fail(Errc::non_positive_definite, "seed covariance is not positive definite");
  }
  std::vector<double> s2x, s2f, sxf;
  long bad = filter_core(resid_x.values(), resid_f.values(), params, init, s2x, s2f, sxf);
  if (bad >= 0) {
    fail(Errc::non_positive_definite,
         "covariance loses positive definiteness at " +
             resid_x.date(static_cast<std::size_t>(bad)).str());
  }
  Month start = resid_x.start();
  return CovariancePath{
      TimeSeries("sigma2_x", start, std::move(s2x)),
      TimeSeries("sigma2_f", start, std::move(s2f)),
      TimeSeries("sigma_xf", start, std::move(sxf)),
  };
}

double log_likelihood(const TimeSeries& resid_x, const TimeSeries& resid_f,
                      const CovariancePath& path) {
  check_aligned(resid_x, resid_f, "log_likelihood");
  check_aligned(resid_x, path.sigma2_x, "log_likelihood");
  check_aligned(resid_x, path.sigma2_f, "log_likelihood");
  check_aligned(resid_x, path.sigma_xf, "log_likelihood");
  const auto& s2x = path.sigma2_x.values();
  const auto& s2f = path.sigma2_f.values();
  const auto& sxf = path.sigma_xf.values();
  for (std::size_t t = 0; t < s2x.size(); ++t) {
    if (!(s2x[t] > 0.0 && s2f[t] > 0.0 && s2x[t] * s2f[t] - sxf[t] * sxf[t] > 0.0)) {
      fail(Errc::non_positive_definite,
           "path is not positive definite at " + path.sigma2_x.date(t).str());
    }
  }
  return ll_core(resid_x.values(), resid_f.values(), s2x, s2f, sxf);
}

TimeSeries TGarchFit::volatility() const {
  std::vector<double> v(path.sigma2_x.size());
  for (std::size_t t = 0; t < v.size(); ++t) v[t] = std::sqrt(path.sigma2_x[t]);
  return TimeSeries(id, path.sigma2_x.start(), std::move(v));
}

TGarchFit fit_tgarch(const TimeSeries& x, const TimeSeries& f, const FitOptions& opt) {
  DateRange range = common_range({{x.start(), x.end()}, {f.start(), f.end()}});
  if (range.size() < 100) fail(Errc::too_short, "fit_tgarch needs at least 100 observations");

  OptimizerTrace trace;
  if (range.size() < 300) {
    trace.warnings.push_back("sample has fewer than 300 observations; estimates may be noisy");
  }

  VarFit var = fit_var1(x, f);
  const std::vector<double>& rx = var.resid_x.values();
  const std::vector<double>& rf = var.resid_f.values();
  CovInit init = residual_moments(rx, rf);

  TGarchParams start_params;
  start_params.var_x = GarchEq{0.1 * init.s2x, 0.05, 0.85, 0.05};
  start_params.var_f = GarchEq{0.1 * init.s2f, 0.05, 0.85, 0.05};
  start_params.cov_xf = GarchEq{0.1 * init.sxf, 0.05, 0.85, 0.05};

  auto objective = [&](const std::vector<double>& theta) {
    std::array<double, 12> t;
    std::copy_n(theta.begin(), 12, t.begin());
    for (double v : t) {
      if (!std::isfinite(v)) return kPenalty;
    }
    auto ll = detail::penalized_loglik(rx, rf, detail::theta_to_params(t), init);
    return ll ? -*ll : kPenalty;
  };

  std::array<double, 12> theta0 = detail::params_to_theta(start_params);
  std::vector<double> best(theta0.begin(), theta0.end());
  double f0 = objective(best);
  double best_f = f0;
  bool best_converged = false;
  trace.evaluations = 1;

  Rng rng(opt.seed);
  NmOptions nm{opt.max_evals, opt.tol_diameter, 0.25};
  for (int r = 0; r < opt.restarts; ++r) {
    std::vector<double> start = best;
    if (r > 0) {
      double scale = 0.3 * std::pow(0.85, r);
      for (auto& v : start) v += scale * rng.normal() * std::max(1.0, std::fabs(v));
    }
    NmResult res = nelder_mead(objective, start, nm);
    trace.evaluations += res.evals;
    ++trace.restarts_used;
    if (res.fx < best_f) {
      best_f = res.fx;
      best = res.x;
      best_converged = res.converged;
    }
  }
  trace.converged = best_converged;

  if (best_f >= kPenalty) {
    fail(Errc::non_positive_definite, "no positive definite parameter point was found");
  }
  if (!std::isfinite(best_f)) fail(Errc::optimizer_diverged, "objective is not finite");

  std::array<double, 12> theta_best;
  std::copy_n(best.begin(), 12, theta_best.begin());
  TGarchParams params = detail::theta_to_params(theta_best);
  CovariancePath path = tgarch_filter(var.resid_x, var.resid_f, params, init);
  double loglik = log_likelihood(var.resid_x, var.resid_f, path);

  trace.initial_loglik = f0 >= kPenalty ? -std::numeric_limits<double>::infinity() : -f0;

  return TGarchFit{x.id(), std::move(var), params, init, std::move(path), loglik, std::move(trace)};
}

std::pair<TimeSeries, TimeSeries> simulate_tgarch(const TGarchParams& params,
                                                  const SimCoeffs& coeffs, std::size_t n,
                                                  std::uint64_t seed, Month start) {
  auto check_var_eq = [](const GarchEq& e, const char* name) {
    if (!(e.omega > 0.0 && e.alpha >= 0.0 && e.phi >= 0.0 && e.alpha + e.phi <= 1.0)) {
      fail(Errc::non_stationary_params,
           std::string(name) + " violates omega > 0, alpha >= 0, phi >= 0, alpha + phi <= 1");
    }
    if (!(e.alpha + e.phi + e.gamma / 2.0 < 1.0)) {
      fail(Errc::non_stationary_params,
           std::string(name) + " violates alpha + phi + gamma/2 < 1");
    }
  };
  check_var_eq(params.var_x, "variance equation (x)");
  check_var_eq(params.var_f, "variance equation (f)");

  // VAR stability: both companion eigenvalues inside the unit circle.
  double a = coeffs.coef[0][0], b = coeffs.coef[0][1];
  double c = coeffs.coef[1][0], d = coeffs.coef[1][1];
  double tr = a + d, det = a * d - b * c;
  double disc = tr * tr - 4.0 * det;
  double r1, r2;
  if (disc >= 0.0) {
    r1 = std::fabs((tr + std::sqrt(disc)) / 2.0);
    r2 = std::fabs((tr - std::sqrt(disc)) / 2.0);
  } else {
    r1 = r2 = std::sqrt(det);
  }
  if (std::max(r1, r2) >= 1.0) {
    fail(Errc::non_stationary_params, "VAR coefficient matrix is not stable");
  }
  if (n < 2) fail(Errc::too_short, "simulate_tgarch needs n >= 2");

  // Unconditional moments for the seeds and the mean start.
  double s2x = params.var_x.omega / (1.0 - params.var_x.alpha - params.var_x.phi -
                                     params.var_x.gamma / 2.0);
  double s2f = params.var_f.omega / (1.0 - params.var_f.alpha - params.var_f.phi -
                                     params.var_f.gamma / 2.0);
  double sxf = 0.0;
  if (params.cov_xf.alpha + params.cov_xf.phi < 1.0) {
    sxf = params.cov_xf.omega / (1.0 - params.cov_xf.alpha - params.cov_xf.phi);
  }
  double bound = 0.99 * std::sqrt(s2x * s2f);
  sxf = std::clamp(sxf, -bound, bound);

  // mu = (I - B)^{-1} intercepts
  double ia = 1.0 - a, ib = -b, ic = -c, id = 1.0 - d;
  double idet = ia * id - ib * ic;
  double mu_x = (id * coeffs.intercepts[0] - ib * coeffs.intercepts[1]) / idet;
  double mu_f = (-ic * coeffs.intercepts[0] + ia * coeffs.intercepts[1]) / idet;

  Rng rng(seed);
  const std::size_t burn = 200;
  std::vector<double> xs(n), fs(n);

  double px = mu_x, pf = mu_f;           // lagged levels
  double vx = s2x, vf = s2f, vxf = sxf;  // current conditional moments
  double ex = 0.0, ef = 0.0;             // lagged shocks
  bool first = true;
  for (std::size_t t = 0; t < burn + n; ++t) {
    if (!first) {
      double dx = ex < 0.0 ? 1.0 : 0.0;
      double df = ef < 0.0 ? 1.0 : 0.0;
      double nvx = params.var_x.omega + params.var_x.alpha * ex * ex + params.var_x.phi * vx +
                   params.var_x.gamma * ex * ex * dx;
      double nvf = params.var_f.omega + params.var_f.alpha * ef * ef + params.var_f.phi * vf +
                   params.var_f.gamma * ef * ef * df;
      double nvxf = params.cov_xf.omega + params.cov_xf.alpha * ex * ef + params.cov_xf.phi * vxf +
                    params.cov_xf.gamma * ex * ef * dx * df;
      vx = nvx;
      vf = nvf;
      vxf = nvxf;
    }
    first = false;
    if (!(vx > 0.0 && vf > 0.0 && vx * vf - vxf * vxf > 0.0)) {
      fail(Errc::non_positive_definite,
           "simulated covariance loses positive definiteness at step " + std::to_string(t));
    }
    // Cholesky draw from the 2x2 covariance.
    double l11 = std::sqrt(vx);
    double l21 = vxf / l11;
    double l22 = std::sqrt(vf - l21 * l21);
    double z1 = rng.normal(), z2 = rng.normal();
    ex = l11 * z1;
    ef = l21 * z1 + l22 * z2;

    double cx = coeffs.intercepts[0] + a * px + b * pf + ex;
    double cf = coeffs.intercepts[1] + c * px + d * pf + ef;
    px = cx;
    pf = cf;
    if (t >= burn) {
      xs[t - burn] = cx;
      fs[t - burn] = cf;
    }
  }
  return {TimeSeries("x", start, std::move(xs)), TimeSeries("f", start, std::move(fs))};
}

}  // namespace hrix
