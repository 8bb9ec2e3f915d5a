#pragma once

// The integrable density rho = 1/(|z|^2 sqrt|log|z||) on the annuli 2^{-n_j-1} < |z| < 2^{-n_j} (zero elsewhere),
// sum_j n_j^{-1/2} < infinity. Each annulus carries 4 pi (sqrt((n+1) log 2) - sqrt(n log 2)) and
// |z|^2 |log|z|| rho = sqrt|log|z|| is unbounded along the annuli, which fill 3/4 of their dyadic discs.

#include <vector>

#include "aclab/core/quadrature.hpp"
#include "aclab/measure/grid_measure.hpp"

namespace aclab {

inline double remark1_rho(double r) { return 1.0 / (r * r * std::sqrt(std::abs(std::log(r)))); }

/// log rho at r = e^{-s}, usable far below the double range of r.
inline double remark1_log_rho(double s) { return 2 * s - 0.5 * std::log(s); }

struct Remark1Annulus {
    long n = 0;
    double r_inner = 0.0, r_outer = 0.0;
    double mass_closed = 0.0;       // 4 pi (sqrt((n+1) log 2) - sqrt(n log 2))
    double mass_quadrature = 0.0;
    double mass_asymptotic = 0.0;   // 2 pi sqrt(log 2) / sqrt(n)
    double sup_closed = 0.0;        // sqrt((n+1) log 2)
    double sup_sampled = 0.0;       // max of sqrt|log r| over samples in the annulus
    double relative_area = 0.0;     // |annulus| / |{|z| < 2^{-n}}| = 3/4
    double avoiding_density = 0.0;  // density at 2^{-n} of any set avoiding the annulus is at most this
    double partial_mass = 0.0;
    double tail_bound = 0.0;        // sum over later annuli of 2 pi sqrt(log 2) / sqrt(n_j), truncated at the given list
};

struct Remark1Report {
    std::vector<Remark1Annulus> annuli;
    double total_mass = 0.0;
};

inline Remark1Report remark1_density(const std::vector<long>& n) {
    for (std::size_t k = 0; k < n.size(); ++k) {
        if (n[k] < 1) fail(ErrorCode::invalid_argument, "annulus indices must be positive");
        if (k > 0 && n[k] <= n[k - 1]) fail(ErrorCode::invalid_argument, "annulus indices must increase strictly");
    }
    const double l2 = std::log(2.0);
    Remark1Report rep;
    for (long nj : n) {
        Remark1Annulus a;
        a.n = nj;
        a.r_outer = std::ldexp(1.0, -static_cast<int>(nj));
        a.r_inner = a.r_outer / 2;
        a.mass_closed = 4 * kPi * (std::sqrt((nj + 1) * l2) - std::sqrt(nj * l2));
        // In s = -log r the mass is 2 pi int ds / sqrt(s).
        a.mass_quadrature = 2 * kPi * integrate([](double s) { return std::exp(remark1_log_rho(s) - 2 * s); }, nj * l2, (nj + 1) * l2, 16);
        a.mass_asymptotic = 2 * kPi * std::sqrt(l2) / std::sqrt(double(nj));
        a.sup_closed = std::sqrt((nj + 1) * l2);
        for (int k = 0; k <= 1000; ++k) {
            const double s = nj * l2 + l2 * k / 1000.0 * (1 - 1e-9);
            // |z|^2 |log|z|| rho evaluated as exp(log|log r| + 2 log r + log rho).
            a.sup_sampled = std::max(a.sup_sampled, std::exp(std::log(s) - 2 * s + remark1_log_rho(s)));
        }
        a.relative_area = 0.75;
        a.avoiding_density = 1 - a.relative_area;
        rep.total_mass += a.mass_quadrature;
        a.partial_mass = rep.total_mass;
        rep.annuli.push_back(a);
    }
    double tail = 0.0;
    for (std::size_t k = rep.annuli.size(); k-- > 0;) {
        rep.annuli[k].tail_bound = tail;
        tail += rep.annuli[k].mass_asymptotic;
    }
    return rep;
}

/// The density on a grid (cells subsampled), for the annuli resolvable there.
inline GridMeasure remark1_grid(const std::vector<long>& n, const PlaneGrid& g) {
    auto member = [n](double r) {
        for (long nj : n) {
            const double hi = std::ldexp(1.0, -static_cast<int>(nj));
            if (r > hi / 2 && r < hi) return true;
        }
        return false;
    };
    return GridMeasure::from_density(
        g, [member](cplx z) { const double r = std::abs(z); return member(r) ? cplx(remark1_rho(r)) : cplx(0); },
        MeasureMode::measure, 8, "remark1");
}

/// The set avoiding all annuli, whose density at 2^{-n_j} is at most 1/4.
inline FatSet remark1_avoiding_set(const std::vector<long>& n, const PlaneGrid& g) {
    return FatSet::from_predicate(g, [n](cplx z) {
        const double r = std::abs(z);
        for (long nj : n) {
            const double hi = std::ldexp(1.0, -static_cast<int>(nj));
            if (r > hi / 2 && r < hi) return false;
        }
        return true;
    });
}

}  // namespace aclab
