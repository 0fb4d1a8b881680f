#pragma once

namespace rankfd::num {

// Regularized lower incomplete gamma P(a, x) and incomplete beta I_x(a, b).
// Series / continued-fraction implementations; absolute error ~1e-14.
double regularized_gamma_p(double a, double x);
double regularized_beta(double x, double a, double b);

double normal_cdf(double x);
double normal_quantile(double p); // Wichura's AS241, ~1e-15 relative

// df may be non-integer (estimated degrees of freedom are real-valued).
double chi_square_cdf(double x, double df);
double chi_square_quantile(double p, double df);
double f_cdf(double x, double df1, double df2);
double f_quantile(double p, double df1, double df2);

} // namespace rankfd::num
