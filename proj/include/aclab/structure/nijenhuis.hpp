#pragma once

// Nijenhuis tensor N(X, Y) = [JX, JY] - J[JX, Y] - J[X, JY] - [X, Y] for constant vector fields X, Y.
// With D_V J the directional derivative of J, the brackets reduce to
//   N = (D_{JX} J) Y + J (D_Y J) X - (D_{JY} J) X - J (D_X J) Y,
// grouped so that swapping X and Y negates the result exactly.

#include "aclab/core/error.hpp"
#include "aclab/structure/structure_field.hpp"

namespace aclab {

struct NijenhuisResult {
    RVec value;       // at step h
    RVec value_half;  // at step h/2
    RVec richardson;  // (4 N_{h/2} - N_h) / 3
    double step = 0.0;
    double relative_change = 0.0;  // |N_h - N_{h/2}| / |N_{h/2}|, 0 when both vanish
};

namespace detail {

inline RMat directional_dj(const JMatrixField& j, const RVec& p, const RVec& v, double h) {
    return (j.j_at(p + h * v) - j.j_at(p - h * v)) / (2 * h);
}

inline RVec nijenhuis_at_step(const JMatrixField& j, const RVec& p, const RVec& x, const RVec& y, double h) {
    const RMat jp = j.j_at(p);
    const RVec jx = jp * x, jy = jp * y;
    const RVec t1 = directional_dj(j, p, jx, h) * y;
    const RVec t2 = directional_dj(j, p, jy, h) * x;
    const RVec t3 = jp * (directional_dj(j, p, y, h) * x);
    const RVec t4 = jp * (directional_dj(j, p, x, h) * y);
    return (t1 + t3) - (t2 + t4);
}

}  // namespace detail

/// Nijenhuis tensor at p with central differences of step h (default 1e-4 of the domain scale).
inline NijenhuisResult nijenhuis(const JMatrixField& j, const RVec& p, const RVec& x, const RVec& y, double h = 0.0) {
    if (h <= 0.0) h = j.fd_step();
    const RMat jp = j.j_at(p);
    const double reach = std::max({1.0, x.norm(), y.norm(), (jp * x).norm(), (jp * y).norm()});
    if (!j.domain().contains_real(p, 2 * h * reach)) {
        fail(ErrorCode::domain_margin, "point too close to the domain boundary for the finite-difference bracket");
    }
    NijenhuisResult r;
    r.step = h;
    r.value = detail::nijenhuis_at_step(j, p, x, y, h);
    r.value_half = detail::nijenhuis_at_step(j, p, x, y, h / 2);
    r.richardson = (4 * r.value_half - r.value) / 3;
    const double ref = r.value_half.norm();
    r.relative_change = ref > 0 ? (r.value - r.value_half).norm() / ref : (r.value - r.value_half).norm();
    return r;
}

/// Unit real basis vector e_k in R^{2n}; k follows (x1, y1, x2, y2, ...).
inline RVec real_basis(int n, int k) {
    RVec e = RVec::Zero(2 * n);
    e(k) = 1.0;
    return e;
}

}  // namespace aclab
