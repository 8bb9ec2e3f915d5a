#pragma once

// The scalar inequality behind Lambda = -log|log|Z'|| + K |z_1|^2, with eps = |v_1|, tau = |v'|, r = |Z'|, L = |log r|:
//   tau^2/(4 r^2 L^2) + K eps^2 - C tau^2/(r L) - C eps tau/(r L) - C eps^2/L - C K r eps^2 - C K tau^2 - C K eps tau >= 0
// It is a quadratic form a tau^2 + b eps^2 - c eps tau with
//   a = 1/(4 r^2 L^2) - C/(r L) - C K,  b = K - C/L - C K r,  c = C/(r L) + C K,
// nonnegative on eps, tau >= 0 iff a >= 0, b >= 0 and c^2 <= 4 a b.
// The leading three terms dominate one eighth of the positive part once K >= 16 C^2 / 7:
//   tau^2/(4 r^2 L^2) + K eps^2 - C eps tau/(r L) >= (tau^2/(r^2 L^2) + K eps^2) / 8.

#include <algorithm>
#include <cmath>
#include <vector>

#include "aclab/core/error.hpp"
#include "aclab/structure/structure_field.hpp"

namespace aclab {

struct Prop1Form {
    double a = 0.0, b = 0.0, c = 0.0;
    bool nonnegative() const { return a >= 0.0 && b >= 0.0 && c * c <= 4 * a * b; }
};

inline Prop1Form prop1_form(double c_const, double k, double r) {
    const double l = std::abs(std::log(r));
    return {1.0 / (4 * r * r * l * l) - c_const / (r * l) - c_const * k, k - c_const / l - c_const * k * r,
            c_const / (r * l) + c_const * k};
}

/// Full left-hand side.
inline double prop1_lhs(double c, double k, double r, double eps, double tau) {
    const double l = std::abs(std::log(r));
    return tau * tau / (4 * r * r * l * l) + k * eps * eps - c * tau * tau / (r * l) - c * eps * tau / (r * l) -
           c * eps * eps / l - c * k * r * eps * eps - c * k * tau * tau - c * k * eps * tau;
}

/// Leading three terms minus one eighth of the positive part.
inline double prop1_eighth_slack(double c, double k, double r, double eps, double tau) {
    const double l = std::abs(std::log(r));
    const double lead = tau * tau / (4 * r * r * l * l) + k * eps * eps - c * eps * tau / (r * l);
    return lead - (tau * tau / (r * r * l * l) + k * eps * eps) / 8;
}

namespace detail {

inline void check_prop1_constants(double c, double k) {
    if (!(c >= 0.0) || !(k >= 0.0)) fail(ErrorCode::invalid_argument, "C and K must be nonnegative");
    if (c > 0.0 && !(k > 4 * c * c)) fail(ErrorCode::constant_too_small, "K must exceed 4 C^2");
}

}  // namespace detail

/// Largest r (below 1/e) such that the quadratic form is nonnegative on all of (0, r].
/// Returns 1/e when no failure is found; throws empty_range when even tiny radii fail.
inline double prop1_r_max(double c, double k, double r_floor = 1e-12, int samples = 4000) {
    detail::check_prop1_constants(c, k);
    const double r_top = std::exp(-1.0) * (1 - 1e-12);
    double last_ok = 0.0, first_bad = 0.0;
    for (int s = 0; s < samples; ++s) {
        const double r = r_floor * std::pow(r_top / r_floor, double(s) / (samples - 1));
        if (prop1_form(c, k, r).nonnegative()) {
            last_ok = r;
        } else {
            first_bad = r;
            break;
        }
    }
    if (last_ok == 0.0) fail(ErrorCode::empty_range, "inequality fails at the smallest sampled radius");
    if (first_bad == 0.0) return r_top;
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(last_ok * first_bad);
        (prop1_form(c, k, mid).nonnegative() ? last_ok : first_bad) = mid;
        if (first_bad / last_ok < 1 + 1e-13) break;
    }
    return last_ok;
}

struct Prop1Grid {
    std::vector<double> eps, tau, r;

    static Prop1Grid uniform(int n_eps, int n_tau, int n_r, double r_lo, double r_hi, double eps_hi = 1.0, double tau_hi = 1.0) {
        Prop1Grid g;
        for (int i = 0; i < n_eps; ++i) g.eps.push_back(eps_hi * i / std::max(1, n_eps - 1));
        for (int i = 0; i < n_tau; ++i) g.tau.push_back(tau_hi * i / std::max(1, n_tau - 1));
        for (int i = 0; i < n_r; ++i) g.r.push_back(n_r == 1 ? r_lo : r_lo * std::pow(r_hi / r_lo, double(i) / (n_r - 1)));
        return g;
    }
};

struct Prop1Certificate {
    double c = 0.0, k = 0.0;
    double r_max = 0.0;
    double min_full = 0.0;            // min over the grid of the full left-hand side
    double min_eighth = 0.0;          // min over the grid of the one-eighth slack
    double min_eps_zero_row = 0.0;    // min of the full left-hand side on eps = 0
    std::size_t points = 0;
    std::size_t full_failures = 0;
    std::size_t eighth_failures = 0;
    std::size_t form_disagreements = 0;  // grid point sign vs quadratic-form criterion
    bool holds() const { return full_failures == 0 && eighth_failures == 0; }
};

/// Evaluates both inequalities on the grid, restricted to radii in (0, r_max]; grid radii above r_max are dropped.
inline Prop1Certificate certify_prop1_inequality(double c, double k, const Prop1Grid& grid) {
    detail::check_prop1_constants(c, k);
    Prop1Certificate cert;
    cert.c = c;
    cert.k = k;
    cert.r_max = prop1_r_max(c, k);
    cert.min_full = cert.min_eighth = cert.min_eps_zero_row = std::numeric_limits<double>::infinity();
    bool any_r = false;
    for (double r : grid.r) {
        if (!(r > 0.0) || r > cert.r_max) continue;
        any_r = true;
        const bool form_ok = prop1_form(c, k, r).nonnegative();
        for (double e : grid.eps) {
            for (double t : grid.tau) {
                ++cert.points;
                // Scale-free comparisons: both sides are quadratic in (eps, tau).
                const double scale = t * t / (r * r) + k * e * e + 1e-300;
                const double full = prop1_lhs(c, k, r, e, t);
                const double eighth = prop1_eighth_slack(c, k, r, e, t);
                cert.min_full = std::min(cert.min_full, full);
                cert.min_eighth = std::min(cert.min_eighth, eighth);
                if (e == 0.0) cert.min_eps_zero_row = std::min(cert.min_eps_zero_row, full);
                if (full < -1e-12 * scale) ++cert.full_failures;
                if (eighth < -1e-12 * scale) ++cert.eighth_failures;
                if (form_ok && full < -1e-12 * scale) ++cert.form_disagreements;
            }
        }
    }
    if (!any_r) fail(ErrorCode::empty_range, "no grid radius lies in the admissible range (0, r_max]");
    return cert;
}

struct StructureConstants {
    double grad_sup = 0.0;     // sampled sup of the operator-norm gradient of Q
    double hess_sup = 0.0;     // sampled sup of the second derivatives of Q
    double c = 0.0;            // 1.1 max(grad_sup, hess_sup)
    double k = 0.0;            // 4 C^2 + 1
    std::vector<double> grad_by_level, hess_by_level;
};

namespace detail {

/// Real-direction derivatives d_a Q for a = (x_1, y_1, ..., x_n, y_n).
inline std::vector<CMat> real_gradient(const StructureField& s, const CVec& z) {
    const QDerivatives d = s.dq_at(z);
    std::vector<CMat> out;
    for (int j = 0; j < s.dimension(); ++j) {
        const auto js = static_cast<std::size_t>(j);
        out.push_back(d.dz[js] + d.dzbar[js]);
        out.push_back(kI * (d.dz[js] - d.dzbar[js]));
    }
    return out;
}

}  // namespace detail

/// Nested dyadic lattices on the box: level l has 2^l + 1 points per real axis, so each level refines the last
/// and the estimates are nondecreasing in the level.
inline StructureConstants structure_constants(const StructureField& s, const Box& box, int levels = 3) {
    const int n = s.dimension(), d = 2 * n;
    StructureConstants out;
    const double h = s.fd_step();
    for (int l = 1; l <= levels; ++l) {
        const int per = (1 << l) + 1;
        long total = 1;
        for (int a = 0; a < d; ++a) total *= per;
        for (long idx = 0; idx < total; ++idx) {
            RVec x(d);
            long rem = idx;
            for (int a = 0; a < d; ++a) {
                const int t = static_cast<int>(rem % per);
                rem /= per;
                x(a) = box.lower(a) + (box.upper(a) - box.lower(a)) * t / (per - 1);
            }
            const CVec z = to_complex(x);
            const std::vector<CMat> g = detail::real_gradient(s, z);
            double gs = 0.0;
            for (const CMat& m : g) gs += std::pow(operator_norm(m), 2);
            out.grad_sup = std::max(out.grad_sup, std::sqrt(gs));
            double hs = 0.0;
            for (int a = 0; a < d; ++a) {
                RVec e = RVec::Zero(d);
                e(a) = h;
                if (!s.domain().contains_real(x + e) || !s.domain().contains_real(x - e)) continue;
                const std::vector<CMat> gp = detail::real_gradient(s, to_complex(x + e));
                const std::vector<CMat> gm = detail::real_gradient(s, to_complex(x - e));
                for (int b = 0; b < d; ++b) hs += std::pow(operator_norm((gp[b] - gm[b]) / (2 * h)), 2);
            }
            out.hess_sup = std::max(out.hess_sup, std::sqrt(hs));
        }
        out.grad_by_level.push_back(out.grad_sup);
        out.hess_by_level.push_back(out.hess_sup);
    }
    out.c = 1.1 * std::max(out.grad_sup, out.hess_sup);
    out.k = 4 * out.c * out.c + 1;
    return out;
}

}  // namespace aclab
