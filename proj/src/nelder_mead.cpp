#include "hrix/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hrix {

namespace {

double simplex_diameter(const std::vector<std::vector<double>>& pts) {
  double d = 0.0;
  std::size_t dim = pts.front().size();
  for (std::size_t j = 0; j < dim; ++j) {
    double lo = pts[0][j], hi = pts[0][j];
    for (const auto& p : pts) {
      lo = std::min(lo, p[j]);
      hi = std::max(hi, p[j]);
    }
    d = std::max(d, hi - lo);
  }
  return d;
}

}  // namespace

NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<double>& x0, const NmOptions& opt) {
  const std::size_t dim = x0.size();
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  NmResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evals;
    double v = f(x);
    return std::isfinite(v) ? v : 1e300;
  };

  std::vector<std::vector<double>> pts(dim + 1, x0);
  std::vector<double> fv(dim + 1);
  for (std::size_t i = 0; i < dim; ++i) {
    double step = opt.init_step * std::max(1.0, std::fabs(x0[i]));
    pts[i + 1][i] += step;
  }
  for (std::size_t i = 0; i <= dim; ++i) fv[i] = eval(pts[i]);

  std::vector<std::size_t> order(dim + 1);
  while (res.evals < opt.max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    {
      std::vector<std::vector<double>> p2(dim + 1);
      std::vector<double> f2(dim + 1);
      for (std::size_t i = 0; i <= dim; ++i) {
        p2[i] = pts[order[i]];
        f2[i] = fv[order[i]];
      }
      pts.swap(p2);
      fv.swap(f2);
    }

    if (simplex_diameter(pts) < opt.tol_diameter) {
      res.converged = true;
      break;
    }

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += pts[i][j];
    }
    for (auto& c : centroid) c /= static_cast<double>(dim);

    auto blend = [&](double t) {
      std::vector<double> x(dim);
      for (std::size_t j = 0; j < dim; ++j) x[j] = centroid[j] + t * (centroid[j] - pts[dim][j]);
      return x;
    };

    auto xr = blend(alpha);
    double fr = eval(xr);
    if (fr < fv[0]) {
      auto xe = blend(gamma);
      double fe = eval(xe);
      if (fe < fr) {
        pts[dim] = std::move(xe);
        fv[dim] = fe;
      } else {
        pts[dim] = std::move(xr);
        fv[dim] = fr;
      }
    } else if (fr < fv[dim - 1]) {
      pts[dim] = std::move(xr);
      fv[dim] = fr;
    } else {
      bool outside = fr < fv[dim];
      auto xc = blend(outside ? rho : -rho);
      double fc = eval(xc);
      if (fc < std::min(fr, fv[dim])) {
        pts[dim] = std::move(xc);
        fv[dim] = fc;
      } else {
        for (std::size_t i = 1; i <= dim; ++i) {
          for (std::size_t j = 0; j < dim; ++j) {
            pts[i][j] = pts[0][j] + sigma * (pts[i][j] - pts[0][j]);
          }
          fv[i] = eval(pts[i]);
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= dim; ++i) {
    if (fv[i] < fv[best]) best = i;
  }
  res.x = pts[best];
  res.fx = fv[best];
  return res;
}

}  // namespace hrix
