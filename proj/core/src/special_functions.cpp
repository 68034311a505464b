#include "unmix/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace unmix {

double digamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("digamma: x must be positive");
    double acc = 0.0;
    while (x < 6.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // psi(x) ~ ln x - 1/2x - sum B_2n / (2n x^2n), truncated after x^-12.
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = std::log(x) - 0.5 * inv;
    series -= inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0))))));
    return acc + series;
}

double trigamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("trigamma: x must be positive");
    double acc = 0.0;
    while (x < 6.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // psi'(x) ~ 1/x + 1/2x^2 + sum B_2n / x^(2n+1), truncated after x^-13.
    double series = inv + 0.5 * inv2;
    series += inv * inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 * (1.0 / 30.0 - inv2 * (5.0 / 66.0 - inv2 * (691.0 / 2730.0))))));
    return acc + series;
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_pdf(double z, double sigma) {
    const double t = z / sigma;
    return std::exp(-0.5 * t * t) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

double log_sum_exp(const double* values, int count) {
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < count; ++i) m = std::max(m, values[i]);
    if (!std::isfinite(m)) return m; // all -inf (or a stray +inf/NaN propagates)
    double s = 0.0;
    for (int i = 0; i < count; ++i) s += std::exp(values[i] - m);
    return m + std::log(s);
}

} // namespace unmix
