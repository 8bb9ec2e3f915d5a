#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace aclab {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

/// Real coordinates (x1, y1, x2, y2, ...) of a point of C^n.
inline RVec to_real(const CVec& z) {
    RVec x(2 * z.size());
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        x(2 * j) = z(j).real();
        x(2 * j + 1) = z(j).imag();
    }
    return x;
}

inline CVec to_complex(const RVec& x) {
    CVec z(x.size() / 2);
    for (Eigen::Index j = 0; j < z.size(); ++j) z(j) = cplx(x(2 * j), x(2 * j + 1));
    return z;
}

/// Axis-aligned box in C^n; bounds are per real coordinate in (x1, y1, x2, y2, ...) order.
struct Box {
    RVec lower;
    RVec upper;

    int dimension() const { return static_cast<int>(lower.size() / 2); }

    /// Box with |x_j|, |y_j| <= half_widths[j].
    static Box centered(const std::vector<double>& half_widths) {
        const auto n = static_cast<Eigen::Index>(half_widths.size());
        Box b{RVec(2 * n), RVec(2 * n)};
        for (Eigen::Index j = 0; j < n; ++j) {
            const double w = half_widths[static_cast<std::size_t>(j)];
            b.lower(2 * j) = b.lower(2 * j + 1) = -w;
            b.upper(2 * j) = b.upper(2 * j + 1) = w;
        }
        return b;
    }

    static Box cube(int n, double half_width) {
        return centered(std::vector<double>(static_cast<std::size_t>(n), half_width));
    }

    bool contains_real(const RVec& x, double margin = 0.0) const {
        for (Eigen::Index k = 0; k < x.size(); ++k) {
            if (x(k) < lower(k) + margin || x(k) > upper(k) - margin) return false;
        }
        return true;
    }

    bool contains(const CVec& z, double margin = 0.0) const { return contains_real(to_real(z), margin); }

    /// Largest side length; the reference length for finite-difference steps.
    double scale() const { return (upper - lower).maxCoeff(); }

    Box shrunk(double factor) const {
        const RVec mid = 0.5 * (upper + lower);
        const RVec half = 0.5 * factor * (upper - lower);
        return Box{mid - half, mid + half};
    }
};

inline double operator_norm(const CMat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues()(0);
}

}  // namespace aclab
