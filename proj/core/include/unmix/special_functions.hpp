#pragma once

namespace unmix {

/// Digamma psi(x) for x > 0. Upward recurrence to x >= 6, then the asymptotic
/// series; absolute error below 1e-10 over the positive axis.
double digamma(double x);

/// Trigamma psi'(x) for x > 0, same scheme and accuracy target as digamma.
double trigamma(double x);

/// Standard normal CDF.
double normal_cdf(double z);

/// Standard normal density with scale sigma, evaluated at z.
double normal_pdf(double z, double sigma);

/// Numerically stable log(sum(exp(v))) over a contiguous range.
double log_sum_exp(const double* values, int count);

} // namespace unmix
