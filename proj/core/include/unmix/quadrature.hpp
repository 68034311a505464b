#pragma once

#include <functional>
#include <vector>

namespace unmix {

/// Gauss-Legendre rule on [-1, 1]. Rules are computed once per order from the
/// Legendre polynomial zeros and cached.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendreRule& gauss_legendre(int order);

/// Integrates f over each consecutive pair of breakpoints with an
/// `order`-point Gauss-Legendre rule and sums the panel results.
/// Breakpoints must be sorted ascending.
double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& breakpoints, int order);

/// Sorted breakpoints covering [lo, hi] with panel width at most `max_width`,
/// merging in `interior` points that fall strictly inside the range (used to
/// split at integrand kinks).
std::vector<double> make_breakpoints(double lo, double hi, double max_width,
                                     const std::vector<double>& interior = {});

} // namespace unmix
