#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hrix/timeseries.hpp"

namespace hrix {

// First-order VAR of (x_t, f_t) on (x_{t-1}, f_{t-1}), estimated equation by
// equation with OLS. Row 0 of `coef` is the x equation, row 1 the f equation;
// column 0 multiplies lagged x, column 1 lagged f.
struct VarFit {
  std::array<double, 2> intercepts{};
  std::array<std::array<double, 2>, 2> coef{};
  TimeSeries resid_x;
  TimeSeries resid_f;
  TimeSeries fitted_x;
  TimeSeries fitted_f;
};

VarFit fit_var1(const TimeSeries& x, const TimeSeries& f);

// One GARCH-type recursion: sigma2_t = omega + alpha*shock + phi*sigma2_{t-1}
// + gamma*shock*dummy, where "shock" is the lagged squared residual for the
// variance equations and the lagged cross product for the covariance equation.
struct GarchEq {
  double omega = 0.0;
  double alpha = 0.0;
  double phi = 0.0;
  double gamma = 0.0;
};

struct TGarchParams {
  GarchEq var_x;   // conditional variance of the housing variable
  GarchEq var_f;   // conditional variance of the factor
  GarchEq cov_xf;  // conditional covariance, dummy fires when both lags are negative
};

// Seed state treated as the t-1 conditional moments for the first step; the
// pre-sample squared shock is proxied by the seed itself and the asymmetry
// dummy is inactive pre-sample.
struct CovInit {
  double s2x = 1.0;
  double s2f = 1.0;
  double sxf = 0.0;
};

struct CovariancePath {
  TimeSeries sigma2_x;
  TimeSeries sigma2_f;
  TimeSeries sigma_xf;
};

// Runs the three recursions over the residual pair; every step must leave a
// positive definite 2x2 covariance or the filter fails.
CovariancePath tgarch_filter(const TimeSeries& resid_x, const TimeSeries& resid_f,
                             const TGarchParams& params, const CovInit& init);

// Gaussian log likelihood of the residual pair under the path:
// -1/2 * sum_t [2 ln(2 pi) + ln det(Sigma_t) + z_t' Sigma_t^{-1} z_t].
double log_likelihood(const TimeSeries& resid_x, const TimeSeries& resid_f,
                      const CovariancePath& path);

struct FitOptions {
  int restarts = 20;
  int max_evals = 20000;        // per restart
  double tol_diameter = 1e-8;
  std::uint64_t seed = 1;
};

struct OptimizerTrace {
  int evaluations = 0;
  int restarts_used = 0;
  bool converged = false;
  double initial_loglik = 0.0;
  std::vector<std::string> warnings;
};

struct TGarchFit {
  std::string id;
  VarFit var;
  TGarchParams params;
  CovInit init;
  CovariancePath path;
  double loglik = 0.0;
  OptimizerTrace trace;

  // Conditional volatility of the housing variable, sqrt(sigma2_x).
  TimeSeries volatility() const;
};

// Two steps: VAR(1) for the means, then maximum likelihood over the twelve
// recursion parameters. The variance equations are optimized through a
// transform that enforces omega > 0, alpha >= 0, phi >= 0, alpha + phi <= 1;
// the covariance equation is unconstrained and positive definiteness is kept
// by a likelihood penalty.
TGarchFit fit_tgarch(const TimeSeries& x, const TimeSeries& f, const FitOptions& opt = {});

struct SimCoeffs {
  std::array<double, 2> intercepts{};
  std::array<std::array<double, 2>, 2> coef{};
};

// Generates (x, f) from the VAR + T-GARCH data-generating process with
// Gaussian innovations. Deterministic for a fixed seed.
std::pair<TimeSeries, TimeSeries> simulate_tgarch(const TGarchParams& params,
                                                  const SimCoeffs& coeffs, std::size_t n,
                                                  std::uint64_t seed,
                                                  Month start = Month{1971, 1});

namespace detail {

// 12-parameter unconstrained coordinates used by the optimizer.
std::array<double, 12> params_to_theta(const TGarchParams& p);
TGarchParams theta_to_params(const std::array<double, 12>& t);

// Fused filter + likelihood; nullopt when the path loses positive
// definiteness. Shared by the optimizer and the public functions.
std::optional<double> penalized_loglik(const std::vector<double>& rx,
                                       const std::vector<double>& rf, const TGarchParams& params,
                                       const CovInit& init);

}  // namespace detail

}  // namespace hrix
