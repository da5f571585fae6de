#pragma once

namespace hrix {

double normal_cdf(double x);

// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

// Upper tail P(X > x) for chi-square with df degrees of freedom.
double chi2_sf(double x, int df);

// Two-sided p-value for a Student-t statistic with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

}  // namespace hrix
