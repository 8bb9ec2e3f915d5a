#pragma once

// (0,1)-frame Lbar_j = d/dzbar_j + sum_q alpha(j, q) d/dz_q of a structure, found by solving
// (J + i) Lbar_j = 0 in complexified real coordinates.

#include "aclab/core/error.hpp"
#include "aclab/structure/structure_field.hpp"

namespace aclab {

namespace detail {

// Complexified real representations of d/dzbar_j and d/dz_q.
inline CVec dzbar_vector(int n, int j) {
    CVec v = CVec::Zero(2 * n);
    v(2 * j) = 0.5;
    v(2 * j + 1) = 0.5 * kI;
    return v;
}

inline CVec dz_vector(int n, int q) {
    CVec v = CVec::Zero(2 * n);
    v(2 * q) = 0.5;
    v(2 * q + 1) = -0.5 * kI;
    return v;
}

}  // namespace detail

/// Frame coefficients from a real J matrix; alpha(j, q) multiplies d/dz_q in Lbar_j.
inline CMat zeroone_frame_from_j(const RMat& j, double tol = 1e-10) {
    const int n = static_cast<int>(j.rows() / 2);
    const CMat a = j.cast<cplx>() + kI * CMat::Identity(2 * n, 2 * n);
    CMat ez(2 * n, n), ezbar(2 * n, n);
    for (int q = 0; q < n; ++q) {
        ez.col(q) = detail::dz_vector(n, q);
        ezbar.col(q) = detail::dzbar_vector(n, q);
    }
    const CMat lhs = a * ez;
    Eigen::JacobiSVD<CMat> svd(lhs, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-6 * std::max(1.0, sv(0))) fail(ErrorCode::frame_singular, "frame construction singular");
    const CMat rhs = -(a * ezbar);
    // Column j of the solution holds alpha(j, .).
    const CMat sol = svd.solve(rhs);
    const double residual = (lhs * sol - rhs).cwiseAbs().maxCoeff();
    if (residual > tol * std::max(1.0, j.cwiseAbs().maxCoeff())) {
        fail(ErrorCode::frame_singular, "no (0,1) frame of the required shape (residual " + std::to_string(residual) + ")");
    }
    return sol.transpose();
}

/// Frame at z; requires |Q(z)| < 1/2.
inline CMat zeroone_frame(const StructureField& s, const CVec& z) {
    const CMat q = s.q_at(z);
    if (!(operator_norm(q) < 0.5)) fail(ErrorCode::frame_singular, "frame construction singular (|Q| >= 1/2)");
    return zeroone_frame_from_j(q_to_j(q));
}

/// Complexified real vector of Lbar_j for the given coefficients.
inline CVec frame_vector(const CMat& alpha, int j) {
    const int n = static_cast<int>(alpha.rows());
    CVec v = detail::dzbar_vector(n, j);
    for (int q = 0; q < n; ++q) v += alpha(j, q) * detail::dz_vector(n, q);
    return v;
}

/// Frame coefficients and their Wirtinger derivatives at z by central differences of step h.
struct FrameJet {
    CMat alpha;
    std::vector<CMat> dz;     // dz[k](j, q) = d alpha(j, q) / dz_k
    std::vector<CMat> dzbar;  // dzbar[k](j, q) = d alpha(j, q) / dzbar_k
};

/// With analytic or autodiff Q the derivatives follow from alpha = Q^H:
/// d alpha / dz_k = (dQ/dzbar_k)^H and d alpha / dzbar_k = (dQ/dz_k)^H. Otherwise central differences.
inline FrameJet frame_jet(const StructureField& s, const CVec& z, double h) {
    const int n = s.dimension();
    FrameJet f;
    f.alpha = zeroone_frame(s, z);
    if (s.derivative_source() != DerivativeSource::finite_difference) {
        const QDerivatives d = s.dq_at(z);
        for (int k = 0; k < n; ++k) {
            f.dz.push_back(d.dzbar[static_cast<std::size_t>(k)].adjoint());
            f.dzbar.push_back(d.dz[static_cast<std::size_t>(k)].adjoint());
        }
        return f;
    }
    for (int k = 0; k < n; ++k) {
        CVec zp = z, zm = z;
        zp(k) += h;
        zm(k) -= h;
        const CMat dx = (zeroone_frame(s, zp) - zeroone_frame(s, zm)) / (2 * h);
        zp(k) = z(k) + kI * h;
        zm(k) = z(k) - kI * h;
        const CMat dy = (zeroone_frame(s, zp) - zeroone_frame(s, zm)) / (2 * h);
        f.dz.push_back(0.5 * (dx - kI * dy));
        f.dzbar.push_back(0.5 * (dx + kI * dy));
    }
    return f;
}

}  // namespace aclab
