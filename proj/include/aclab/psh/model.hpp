#pragma once

// One-variable model computations: the Laplacians of -log|log|z|| and |z|, and perturbations
//   Q = d2/dz dzbar + a1 d2/dz2 + a2 d2/dz dzbar + a3 d2/dzbar2 + b1 d/dz + b2 d/dzbar,  a_j(0) = 0.

#include <functional>
#include <vector>

#include "aclab/psh/candidate.hpp"

namespace aclab {

struct ModelLaplacians {
    double loglog = 0.0;  // d2/dz dzbar (-log|log|z||) = 1 / (4 |z|^2 log^2 |z|)
    double abs = 0.0;     // d2/dz dzbar |z| = 1 / (4 |z|)
};

inline ModelLaplacians model_laplacians(cplx z) {
    const double r = std::abs(z);
    if (!(r > 0.0) || !(r < 1.0)) fail(ErrorCode::out_of_range, "model Laplacians need 0 < |z| < 1");
    const double l = std::log(r);
    return {1.0 / (4 * r * r * l * l), 1.0 / (4 * r)};
}

/// Fourth-order five-point-per-axis estimate of d2f/dz dzbar = (f_xx + f_yy) / 4.
inline double fd_dzdzbar(const std::function<double(cplx)>& f, cplx z, double h) {
    auto second = [&](cplx e) {
        return (-f(z + 2.0 * h * e) + 16 * f(z + h * e) - 30 * f(z) + 16 * f(z - h * e) - f(z - 2.0 * h * e)) / (12 * h * h);
    };
    return 0.25 * (second(1.0) + second(kI));
}

inline ModelLaplacians model_laplacians_fd(cplx z, double rel_step = 1e-2) {
    const double h = rel_step * std::abs(z);
    auto loglog = [](cplx w) { return -std::log(std::abs(std::log(std::abs(w)))); };
    auto abs = [](cplx w) { return std::abs(w); };
    return {fd_dzdzbar(loglog, z, h), fd_dzdzbar(abs, z, h)};
}

struct PerturbedOperator {
    using Coef = std::function<cplx(cplx)>;
    Coef a1, a2, a3;  // second order, vanishing at 0
    Coef b1, b2;      // first order

    PerturbedOperator(Coef a1_, Coef a2_, Coef a3_, Coef b1_, Coef b2_)
        : a1(std::move(a1_)), a2(std::move(a2_)), a3(std::move(a3_)), b1(std::move(b1_)), b2(std::move(b2_)) {
        for (const Coef* a : {&a1, &a2, &a3}) {
            if (*a && std::abs((*a)(0.0)) > 1e-14) fail(ErrorCode::invalid_argument, "second-order coefficients must vanish at 0");
        }
    }

    static PerturbedOperator laplacian() { return PerturbedOperator(nullptr, nullptr, nullptr, nullptr, nullptr); }
};

/// Real part of Q f(z) assembled from the Wirtinger data of f (a candidate on C).
inline double perturbed_apply(const PerturbedOperator& op, const CandidateFunction& f, cplx z) {
    if (f.dimension() != 1) fail(ErrorCode::invalid_argument, "perturbed operators act on candidates on C");
    CVec p(1);
    p(0) = z;
    const CandidateJet j = f.jet(p);
    auto c = [z](const PerturbedOperator::Coef& k) { return k ? k(z) : cplx(0); };
    const cplx fzz = j.hzz(0, 0), fzzb = j.hzzbar(0, 0), fz = j.dz(0);
    const cplx v = fzzb + c(op.a1) * fzz + c(op.a2) * fzzb + c(op.a3) * std::conj(fzz) + c(op.b1) * fz + c(op.b2) * std::conj(fz);
    return v.real();
}

struct PositivityScan {
    double r0 = 0.0;                 // largest sampled radius below which every sample is positive
    double min_value = 0.0;          // min of Q f over samples with |z| < r0
    double first_failure = 0.0;      // smallest radius with a non-positive sample (0 if none)
    std::size_t samples = 0;
};

/// Scans Q f on circles of log-spaced radii; positivity is strict unless allow_zero.
inline PositivityScan positivity_radius(const PerturbedOperator& op, const CandidateFunction& f, double r_min, double r_max,
                                        int radii = 200, int angles = 64, bool allow_zero = false) {
    PositivityScan s;
    s.min_value = std::numeric_limits<double>::infinity();
    std::vector<double> rs(static_cast<std::size_t>(radii));
    for (int k = 0; k < radii; ++k) rs[static_cast<std::size_t>(k)] = r_min * std::pow(r_max / r_min, double(k) / (radii - 1));
    double running_min = std::numeric_limits<double>::infinity();
    for (double r : rs) {
        double m = std::numeric_limits<double>::infinity();
        for (int a = 0; a < angles; ++a) {
            m = std::min(m, perturbed_apply(op, f, std::polar(r, 2 * kPi * a / angles)));
            ++s.samples;
        }
        const bool ok = allow_zero ? m >= 0.0 : m > 0.0;
        if (!ok) {
            s.first_failure = r;
            break;
        }
        running_min = std::min(running_min, m);
        s.r0 = r;
    }
    s.min_value = running_min;
    return s;
}

struct ChirkaSearch {
    double constant = 0.0;  // minimal C on the grid with Q(log|z| + C|z|) >= 0 on the neighborhood
    bool found = false;
    std::vector<std::pair<double, double>> tried;  // (C, min value)
};

/// Minimal C from the grid c_grid for which Q(log|z| + C|z|) >= 0 on 0 < |z| <= r_nbhd (sampled).
inline ChirkaSearch minimal_chirka_constant(const PerturbedOperator& op, double r_nbhd, const std::vector<double>& c_grid,
                                            double r_min = 1e-8, int radii = 200, int angles = 64) {
    ChirkaSearch out;
    for (double c : c_grid) {
        const CandidateFunction f = candidates::chirka(1, c);
        double m = std::numeric_limits<double>::infinity();
        for (int k = 0; k < radii; ++k) {
            const double r = r_min * std::pow(r_nbhd / r_min, double(k) / (radii - 1));
            for (int a = 0; a < angles; ++a) m = std::min(m, perturbed_apply(op, f, std::polar(r, 2 * kPi * a / angles)));
        }
        out.tried.emplace_back(c, m);
        if (m >= 0.0) {
            out.constant = c;
            out.found = true;
            break;
        }
    }
    return out;
}

}  // namespace aclab
