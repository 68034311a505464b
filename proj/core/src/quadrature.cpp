#include "unmix/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include <boost/math/special_functions/legendre.hpp>

namespace unmix {

namespace {

GaussLegendreRule build_rule(int order) {
    // legendre_p_zeros returns the non-negative zeros; mirror for the rest.
    const auto half = boost::math::legendre_p_zeros<double>(order);
    GaussLegendreRule rule;
    rule.nodes.reserve(order);
    rule.weights.reserve(order);
    auto push = [&](double x) {
        const double dp = boost::math::legendre_p_prime(order, x);
        rule.nodes.push_back(x);
        rule.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
    };
    for (auto it = half.rbegin(); it != half.rend(); ++it) {
        if (*it > 0.0) push(-*it);
    }
    for (double x : half) push(x);
    return rule;
}

} // namespace

const GaussLegendreRule& gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
    return it->second;
}

double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& breakpoints, int order) {
    const GaussLegendreRule& rule = gauss_legendre(order);
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
        const double a = breakpoints[p];
        const double b = breakpoints[p + 1];
        const double mid = 0.5 * (a + b);
        const double scale = 0.5 * (b - a);
        double panel = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            panel += rule.weights[i] * f(mid + scale * rule.nodes[i]);
        }
        total += scale * panel;
    }
    return total;
}

std::vector<double> make_breakpoints(double lo, double hi, double max_width,
                                     const std::vector<double>& interior) {
    if (!(hi > lo)) throw std::invalid_argument("make_breakpoints: empty range");
    if (!(max_width > 0.0)) throw std::invalid_argument("make_breakpoints: width must be positive");
    std::vector<double> anchors = {lo, hi};
    for (double x : interior) {
        if (x > lo && x < hi) anchors.push_back(x);
    }
    std::sort(anchors.begin(), anchors.end());
    std::vector<double> points;
    points.push_back(lo);
    for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
        const double a = anchors[i];
        const double b = anchors[i + 1];
        const int n = std::max(1, static_cast<int>(std::ceil((b - a) / max_width)));
        for (int k = 1; k <= n; ++k) points.push_back(a + (b - a) * k / n);
    }
    return points;
}

} // namespace unmix
