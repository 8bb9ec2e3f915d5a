#pragma once

// Gauss-Legendre rules.

#include <cmath>
#include <functional>
#include <vector>

#include "aclab/core/types.hpp"

namespace aclab {

struct QuadratureRule {
    std::vector<double> nodes, weights;  // on [-1, 1]
};

/// Nodes by Newton iteration on P_n from the Chebyshev-like initial guesses.
inline QuadratureRule gauss_legendre(int n) {
    QuadratureRule q{std::vector<double>(static_cast<std::size_t>(n)), std::vector<double>(static_cast<std::size_t>(n))};
    for (int i = 0; i < n; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        q.nodes[static_cast<std::size_t>(i)] = t;
        q.weights[static_cast<std::size_t>(i)] = 2 / ((1 - t * t) * dp * dp);
    }
    return q;
}

/// int_a^b f by an n-point rule.
inline double integrate(const std::function<double(double)>& f, double a, double b, int n = 16) {
    static thread_local int cached_n = 0;
    static thread_local QuadratureRule rule;
    if (cached_n != n) {
        rule = gauss_legendre(n);
        cached_n = n;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i]);
    return 0.5 * (b - a) * s;
}

}  // namespace aclab
