#pragma once

// Splitting lambda(z1, .) = a log|z2| + mu near z2 = 0, the decay hypotheses on mu, and z1-smoothing.

#include <memory>
#include <string>
#include <vector>

#include "aclab/core/quadrature.hpp"
#include "aclab/psh/candidate.hpp"

namespace aclab {

/// Trapezoidal mean of lambda over the circle |z2| = r at fixed z1.
inline double circle_mean(const CandidateFunction& lambda, cplx z1, double r, int angles = 64) {
    double s = 0.0;
    CVec z(2);
    for (int a = 0; a < angles; ++a) {
        z << z1, std::polar(r, 2 * kPi * (a + 0.5) / angles);
        s += lambda.value(z);
    }
    return s / angles;
}

struct LelongDecomposition {
    cplx z1;
    double a = 0.0;            // least-squares slope of circle means against log r
    double intercept = 0.0;
    double rms_residual = 0.0;
    std::vector<double> radii, means;
    std::shared_ptr<CandidateFunction> mu;  // lambda - a log|z2|
};

inline std::vector<double> log_radii(double r_lo, double r_hi, int count) {
    if (!(r_lo > 0.0) || !(r_hi > r_lo) || count < 2) fail(ErrorCode::invalid_argument, "invalid radius sample");
    std::vector<double> out;
    for (int k = 0; k < count; ++k) out.push_back(r_lo * std::pow(r_hi / r_lo, double(k) / (count - 1)));
    return out;
}

inline LelongDecomposition lelong_fit(const CandidateFunction& lambda, cplx z1, const std::vector<double>& radii, int angles = 64) {
    if (lambda.dimension() != 2) fail(ErrorCode::invalid_argument, "Lelong fit expects a candidate on C^2");
    if (radii.size() < 2) fail(ErrorCode::invalid_argument, "Lelong fit needs at least two radii");
    LelongDecomposition d;
    d.z1 = z1;
    d.radii = radii;
    std::sort(d.radii.begin(), d.radii.end());
    for (double r : d.radii) d.means.push_back(circle_mean(lambda, z1, r, angles));
    for (std::size_t k = 1; k < d.means.size(); ++k) {
        const double tol = 1e-12 * std::max(1.0, std::abs(d.means[k - 1]));
        if (d.means[k] < d.means[k - 1] - tol) fail(ErrorCode::not_subharmonic, "not subharmonic in z2: circle means decrease");
    }
    const auto m = static_cast<double>(d.radii.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < d.radii.size(); ++k) {
        const double x = std::log(d.radii[k]), y = d.means[k];
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    d.a = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    d.intercept = (sy - d.a * sx) / m;
    double ss = 0;
    for (std::size_t k = 0; k < d.radii.size(); ++k) ss += std::pow(d.means[k] - d.a * std::log(d.radii[k]) - d.intercept, 2);
    d.rms_residual = std::sqrt(ss / m);
    d.mu = std::make_shared<CandidateFunction>(candidates::sum(lambda, candidates::scale(-d.a, candidates::log_abs(2, 1))));
    return d;
}

struct HDecade {
    double r_hi = 0.0;        // decade [r_hi / 10, r_hi]
    double second = 0.0;      // sup |z2^2 mu_{z2 z2}|
    double first = 0.0;       // sup |z2 mu_{z2}|
    double h_plus = 0.0;      // sup |lambda_{z1 z1bar}| / |log|z2||
    std::size_t failures = 0;
};

struct HReport {
    std::vector<HDecade> decades;
    double tol = 0.0;
    bool satisfied = false;
    std::string verdict;
};

/// Decade sups of the (H) quantities on circles; satisfied when they are nonincreasing and end below tol.
inline HReport check_H(const CandidateFunction& lambda, const CandidateFunction& mu, cplx z1, double r_hi, double r_lo,
                       int angles = 64, int per_decade = 4, double tol = 0.05) {
    HReport rep;
    rep.tol = tol;
    const int decades = static_cast<int>(std::lround(std::log10(r_hi / r_lo)));
    if (decades < 1) fail(ErrorCode::invalid_argument, "check_H needs at least one decade");
    CVec z(2);
    for (int d = 0; d < decades; ++d) {
        HDecade row;
        row.r_hi = r_hi * std::pow(10.0, -d);
        for (int k = 0; k <= per_decade; ++k) {
            const double r = row.r_hi * std::pow(10.0, -double(k) / per_decade);
            for (int a = 0; a < angles; ++a) {
                const cplx z2 = std::polar(r, 2 * kPi * a / angles);
                z << z1, z2;
                try {
                    const CandidateJet m = mu.jet(z);
                    row.second = std::max(row.second, std::abs(z2 * z2 * m.hzz(1, 1)));
                    row.first = std::max(row.first, std::abs(z2 * m.dz(1)));
                    row.h_plus = std::max(row.h_plus, std::abs(lambda.jet(z).hzzbar(0, 0)) / std::abs(std::log(r)));
                } catch (const LabError&) {
                    ++row.failures;
                }
            }
        }
        rep.decades.push_back(row);
    }
    bool monotone = true;
    for (std::size_t k = 1; k < rep.decades.size(); ++k) {
        const HDecade &p = rep.decades[k - 1], &c = rep.decades[k];
        const double slack = 1e-12;
        if (c.second > p.second * (1 + 1e-9) + slack || c.first > p.first * (1 + 1e-9) + slack) monotone = false;
    }
    const HDecade& last = rep.decades.back();
    rep.satisfied = monotone && last.second <= tol && last.first <= tol;
    rep.verdict = rep.satisfied ? "H-satisfied" : (monotone ? "H-undecided: sups above tolerance" : "H-violated: sups not decreasing");
    return rep;
}

/// Unit-mass bump c (1 - |s|^2/w^2)^2 on |s| < w, integrated by Gauss-Legendre in radius and trapezoid in angle.
struct Z1Kernel {
    double width = 0.0;
    std::vector<cplx> nodes;
    std::vector<double> weights;

    static Z1Kernel bump(double w, int radial = 12, int angular = 16) {
        if (!(w > 0.0)) fail(ErrorCode::invalid_argument, "kernel width must be positive");
        const QuadratureRule gl = gauss_legendre(radial);
        Z1Kernel k;
        k.width = w;
        double mass = 0.0;
        for (int i = 0; i < radial; ++i) {
            const double rho = 0.5 * w * (gl.nodes[static_cast<std::size_t>(i)] + 1);
            const double q = 1 - rho * rho / (w * w);
            const double radial_weight = 0.5 * w * gl.weights[static_cast<std::size_t>(i)] * rho * q * q * (2 * kPi / angular);
            for (int a = 0; a < angular; ++a) {
                k.nodes.push_back(std::polar(rho, 2 * kPi * a / angular));
                k.weights.push_back(radial_weight);
                mass += radial_weight;
            }
        }
        for (double& v : k.weights) v /= mass;
        return k;
    }

    /// Second moment integral |s|^2 of the normalized kernel (w^2 / 4 exactly).
    double second_moment() const {
        double m = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) m += weights[i] * std::norm(nodes[i]);
        return m;
    }
};

/// z1-convolution of lambda with the bump; derivatives are convolved term by term.
inline CandidateFunction smooth_in_z1(const CandidateFunction& lambda, double width, int radial = 12, int angular = 16) {
    if (!(width < lambda.z1_extent)) fail(ErrorCode::domain_too_narrow, "candidate's z1-slab is narrower than the kernel support");
    const auto k = std::make_shared<Z1Kernel>(Z1Kernel::bump(width, radial, angular));
    const double extent = lambda.z1_extent;
    auto guard = [k, extent](const CVec& z) {
        if (std::abs(z(0)) + k->width > extent) fail(ErrorCode::domain_too_narrow, "smoothing kernel leaves the candidate's z1-slab");
    };
    auto shifted = [](const CVec& z, cplx s) {
        CVec w = z;
        w(0) -= s;
        return w;
    };
    auto jet = [lambda, k, guard, shifted](const CVec& z) {
        guard(z);
        const int n = lambda.dimension();
        CandidateJet out{0.0, CVec::Zero(n), CMat::Zero(n, n), CMat::Zero(n, n)};
        for (std::size_t i = 0; i < k->nodes.size(); ++i) {
            const CandidateJet j = lambda.jet(shifted(z, k->nodes[i]));
            out.value += k->weights[i] * j.value;
            out.dz += k->weights[i] * j.dz;
            out.hzzbar += k->weights[i] * j.hzzbar;
            out.hzz += k->weights[i] * j.hzz;
        }
        return out;
    };
    auto value = [lambda, k, guard, shifted](const CVec& z) {
        guard(z);
        double v = 0.0;
        for (std::size_t i = 0; i < k->nodes.size(); ++i) v += k->weights[i] * lambda.value(shifted(z, k->nodes[i]));
        return v;
    };
    auto sing = [lambda, k, shifted](const CVec& z) {
        for (const cplx& s : k->nodes)
            if (lambda.is_singular(shifted(z, s))) return true;
        return false;
    };
    CandidateFunction c("smooth_z1(" + lambda.name() + ")", lambda.dimension(), jet, value, sing, lambda.derivative_source(),
                        lambda.singular_locus());
    c.z1_extent = extent - width;
    return c;
}

}  // namespace aclab
