#include "hrix/stats.hpp"

#include <algorithm>
#include <cmath>

#include "hrix/prob.hpp"

namespace hrix {

SummaryStats describe(const TimeSeries& s) {
  const auto& v = s.values();
  std::size_t n = v.size();
  if (n < 2) fail(Errc::too_short, "describe needs at least 2 observations");

  SummaryStats out;
  out.n = n;
  out.mean = mean(v);
  out.std_dev = sample_std(v);
  out.min = *std::min_element(v.begin(), v.end());
  out.max = *std::max_element(v.begin(), v.end());

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : v) {
    double d = x - out.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  double dn = static_cast<double>(n);
  m2 /= dn;
  m3 /= dn;
  m4 /= dn;
  if (m2 > 0.0) {
    out.skewness = m3 / std::pow(m2, 1.5);
    out.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }

  if (n >= 8 && m2 > 0.0) {
    double jb = dn / 6.0 *
                (out.skewness * out.skewness + out.excess_kurtosis * out.excess_kurtosis / 4.0);
    out.jarque_bera = {jb, chi2_sf(jb, 2), true};

    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      double d = v[t] - out.mean;
      den += d * d;
      if (t > 0) num += d * (v[t - 1] - out.mean);
    }
    double r1 = num / den;
    double q1 = dn * (dn + 2.0) * r1 * r1 / (dn - 1.0);
    out.ljung_box_q1 = {q1, chi2_sf(q1, 1), true};
  }
  return out;
}

std::string corr_stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

CorrMatrix corr_matrix(const Panel& p) {
  std::size_t k = p.n_cols();
  std::size_t n = p.n_rows();
  if (n < 3) fail(Errc::too_short, "corr_matrix needs at least 3 observations");

  CorrMatrix out;
  out.ids = p.ids();
  out.rho = Matrix(k, k);
  out.pvals = Matrix(k, k);
  out.stars.assign(k, std::vector<std::string>(k));

  for (std::size_t i = 0; i < k; ++i) {
    out.rho(i, i) = 1.0;
    out.pvals(i, i) = 0.0;
    out.stars[i][i] = "***";
    for (std::size_t j = i + 1; j < k; ++j) {
      double r = pearson(p.col(i).values(), p.col(j).values());
      double pv = 0.0;
      if (std::fabs(r) < 1.0) {
        double df = static_cast<double>(n - 2);
        double t = r * std::sqrt(df / (1.0 - r * r));
        pv = student_t_two_sided_p(t, df);
      }
      out.rho(i, j) = out.rho(j, i) = r;
      out.pvals(i, j) = out.pvals(j, i) = pv;
      out.stars[i][j] = out.stars[j][i] = corr_stars(pv);
    }
  }
  return out;
}

}  // namespace hrix
