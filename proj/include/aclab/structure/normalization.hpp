#pragma once

// Quadratic change of coordinates near the axis {z' = 0}:
//   Z_1 = z_1,  Z_r = z_r + sum_{k,l>=2} a^r_{kl}(z_1) z_k zbar_l + sum_{k,l>=2} b^r_{kl}(z_1) zbar_k zbar_l,
// with a^r_{kj} = -d alpha(j, r)/dz_k and b^r_{kj} + b^r_{jk} = -d alpha(j, r)/dzbar_k on the axis.
// Indices below are 0-based: index 0 is z_1, the transverse block is 1..n-1.

#include "aclab/structure/frame.hpp"

namespace aclab {

struct NormalizationCoefficients {
    cplx z1{};
    std::vector<CMat> a;  // a[r](k, l) for r, k, l in 1..n-1, stored 0-based in the transverse block
    std::vector<CMat> b;
    double obstruction = 0.0;        // max |d alpha(j,q)/dzbar_k - d alpha(k,q)/dzbar_j| over all j, k, q
    double axis_alpha = 0.0;         // max |alpha(z_1, 0)|
    double equation_residual = 0.0;  // max |b^r_kj + b^r_jk + symmetrized rhs|
};

/// Coefficients at a point of the axis from central differences of the frame with step h.
inline NormalizationCoefficients normalization_coefficients(const StructureField& s, cplx z1, double h) {
    const int n = s.dimension();
    const int m = n - 1;
    CVec z = CVec::Zero(n);
    z(0) = z1;
    const FrameJet f = frame_jet(s, z, h);
    NormalizationCoefficients c;
    c.z1 = z1;
    c.axis_alpha = f.alpha.cwiseAbs().maxCoeff();
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int q = 0; q < n; ++q)
                c.obstruction = std::max(c.obstruction, std::abs(f.dzbar[k](j, q) - f.dzbar[j](k, q)));
    for (int r = 1; r < n; ++r) {
        CMat a(m, m), b(m, m), rhs(m, m);
        for (int k = 1; k < n; ++k) {
            for (int j = 1; j < n; ++j) {
                a(k - 1, j - 1) = -f.dz[k](j, r);
                // Symmetrized right-hand side; equals -d alpha(j,r)/dzbar_k when the obstruction vanishes.
                rhs(k - 1, j - 1) = -0.5 * (f.dzbar[k](j, r) + f.dzbar[j](k, r));
            }
        }
        b = 0.5 * rhs;
        c.equation_residual = std::max(c.equation_residual, (b + b.transpose() - rhs).cwiseAbs().maxCoeff());
        c.a.push_back(a);
        c.b.push_back(b);
    }
    return c;
}

class NormalizationMap {
public:
    struct Options {
        double fd_step = 0.0;           // 0: 1e-4 of the domain scale
        double obstruction_tol = 1e-6;  // on the symmetry condition
        double axis_tol = 1e-9;         // on alpha along the axis
        int axis_samples = 9;           // z_1 samples per real direction used for the checks
    };

    NormalizationMap(StructureField s, Options opt) : s_(std::move(s)), opt_(opt) {
        if (opt_.fd_step <= 0.0) opt_.fd_step = s_.fd_step();
        if (s_.dimension() < 2) fail(ErrorCode::invalid_argument, "normalization needs n >= 2");
        const Box& d = s_.domain();
        const int k = std::max(1, opt_.axis_samples);
        for (int ix = 0; ix < k; ++ix) {
            for (int iy = 0; iy < k; ++iy) {
                const double tx = k == 1 ? 0.5 : double(ix) / (k - 1);
                const double ty = k == 1 ? 0.5 : double(iy) / (k - 1);
                const cplx z1(d.lower(0) + (0.1 + 0.8 * tx) * (d.upper(0) - d.lower(0)),
                              d.lower(1) + (0.1 + 0.8 * ty) * (d.upper(1) - d.lower(1)));
                const auto c = normalization_coefficients(s_, z1, opt_.fd_step);
                if (c.axis_alpha > opt_.axis_tol) {
                    fail(ErrorCode::not_standard_on_axis, "structure is not standard along the axis (|alpha| = " +
                                                              std::to_string(c.axis_alpha) + ")");
                }
                max_obstruction_ = std::max(max_obstruction_, c.obstruction);
                max_equation_residual_ = std::max(max_equation_residual_, c.equation_residual);
            }
        }
        if (max_obstruction_ > opt_.obstruction_tol) {
            fail(ErrorCode::nijenhuis_obstruction,
                 "Nijenhuis obstruction nonzero (symmetry residual " + std::to_string(max_obstruction_) + ")");
        }
    }

    explicit NormalizationMap(StructureField s) : NormalizationMap(std::move(s), Options{}) {}

    const StructureField& structure() const { return s_; }
    int dimension() const { return s_.dimension(); }
    double max_obstruction() const { return max_obstruction_; }
    double max_equation_residual() const { return max_equation_residual_; }

    NormalizationCoefficients coefficients(cplx z1) const { return normalization_coefficients(s_, z1, opt_.fd_step); }

    CVec apply(const CVec& z) const { return apply_with(coefficients(z(0)), z); }

    /// Coefficients at z1 and their x1 / y1 derivatives; everything the map needs on the slice {z_1 = const}.
    struct Chart {
        NormalizationCoefficients c;
        std::vector<CMat> a_x, a_y, b_x, b_y;
    };

    Chart chart(cplx z1) const {
        const double h = opt_.fd_step;
        Chart ch{coefficients(z1), {}, {}, {}, {}};
        const auto px = coefficients(z1 + h), mx = coefficients(z1 - h);
        const auto py = coefficients(z1 + kI * h), my = coefficients(z1 - kI * h);
        for (std::size_t r = 0; r < ch.c.a.size(); ++r) {
            ch.a_x.push_back((px.a[r] - mx.a[r]) / (2 * h));
            ch.a_y.push_back((py.a[r] - my.a[r]) / (2 * h));
            ch.b_x.push_back((px.b[r] - mx.b[r]) / (2 * h));
            ch.b_y.push_back((py.b[r] - my.b[r]) / (2 * h));
        }
        return ch;
    }

    /// Wirtinger Jacobians dZ/dz (row r, column q) and dZ/dzbar.
    void wirtinger_jacobian(const CVec& z, CMat& dzm, CMat& dzbarm) const { jacobian_with(chart(z(0)), z, dzm, dzbarm); }

    RMat real_jacobian(const CVec& z) const { return real_jacobian_with(chart(z(0)), z); }

    /// Newton inverse of the coordinate change; Z_1 = z_1, so one chart at w_1 serves every iterate.
    CVec inverse(const CVec& w, double tol = 1e-14, int max_iter = 50) const { return inverse_with(chart(w(0)), w, tol, max_iter); }

    CVec inverse_with(const Chart& ch, const CVec& w, double tol = 1e-14, int max_iter = 50) const {
        CVec z = w;
        for (int it = 0; it < max_iter; ++it) {
            const RVec f = to_real(apply_with(ch.c, z) - w);
            if (f.lpNorm<Eigen::Infinity>() <= tol * std::max(1.0, w.norm())) return z;
            Eigen::FullPivLU<RMat> lu(real_jacobian_with(ch, z));
            if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-10) {
                fail(ErrorCode::jacobian_singular, "normalization Jacobian singular");
            }
            z = to_complex(to_real(z) - lu.solve(f));
        }
        const RVec f = to_real(apply_with(ch.c, z) - w);
        if (f.lpNorm<Eigen::Infinity>() > 1e-10) fail(ErrorCode::jacobian_singular, "normalization inverse did not converge");
        return z;
    }

    void jacobian_with(const Chart& ch, const CVec& z, CMat& dzm, CMat& dzbarm) const {
        const int n = dimension();
        dzm = CMat::Identity(n, n);
        dzbarm = CMat::Zero(n, n);
        for (int r = 1; r < n; ++r) {
            const auto rs = static_cast<std::size_t>(r - 1);
            const CMat& a = ch.c.a[rs];
            const CMat& b = ch.c.b[rs];
            for (int q = 1; q < n; ++q) {
                cplx dq = 0.0, dqbar = 0.0;
                for (int l = 1; l < n; ++l) {
                    dq += a(q - 1, l - 1) * std::conj(z(l));
                    dqbar += a(l - 1, q - 1) * z(l) + (b(l - 1, q - 1) + b(q - 1, l - 1)) * std::conj(z(l));
                }
                dzm(r, q) += dq;
                dzbarm(r, q) = dqbar;
            }
            // z_1-dependence enters only through the coefficients of the quadratic part.
            const cplx dx = quadratic(ch.a_x[rs], ch.b_x[rs], z), dy = quadratic(ch.a_y[rs], ch.b_y[rs], z);
            dzm(r, 0) += 0.5 * (dx - kI * dy);
            dzbarm(r, 0) += 0.5 * (dx + kI * dy);
        }
    }

    RMat real_jacobian_with(const Chart& ch, const CVec& z) const {
        CMat c, d;
        jacobian_with(ch, z, c, d);
        const int n = dimension();
        RMat jac(2 * n, 2 * n);
        for (int r = 0; r < n; ++r) {
            for (int q = 0; q < n; ++q) {
                const cplx ex = c(r, q) + d(r, q);
                const cplx ey = kI * (c(r, q) - d(r, q));
                jac(2 * r, 2 * q) = ex.real();
                jac(2 * r + 1, 2 * q) = ex.imag();
                jac(2 * r, 2 * q + 1) = ey.real();
                jac(2 * r + 1, 2 * q + 1) = ey.imag();
            }
        }
        return jac;
    }

    /// D(j, r) = Lbar_j(Z_r) for r >= 1 (column r); column 0 is left zero since Z_1 = z_1 is untouched.
    CMat defect(const CVec& z) const {
        const int n = dimension();
        CMat dzm, dzbarm;
        wirtinger_jacobian(z, dzm, dzbarm);
        const CMat alpha = zeroone_frame(s_, z);
        CMat d = CMat::Zero(n, n);
        for (int j = 0; j < n; ++j) {
            for (int r = 1; r < n; ++r) {
                cplx v = dzbarm(r, j);
                for (int q = 0; q < n; ++q) v += alpha(j, q) * dzm(r, q);
                d(j, r) = v;
            }
        }
        return d;
    }

private:
    static cplx quadratic(const CMat& a, const CMat& b, const CVec& z) {
        const Eigen::Index m = a.rows();
        cplx v = 0.0;
        for (Eigen::Index k = 0; k < m; ++k)
            for (Eigen::Index l = 0; l < m; ++l)
                v += a(k, l) * z(k + 1) * std::conj(z(l + 1)) + b(k, l) * std::conj(z(k + 1)) * std::conj(z(l + 1));
        return v;
    }

public:
    CVec apply_with(const NormalizationCoefficients& c, const CVec& z) const {
        CVec w = z;
        for (int r = 1; r < dimension(); ++r) {
            const auto rs = static_cast<std::size_t>(r - 1);
            w(r) += quadratic(c.a[rs], c.b[rs], z);
        }
        return w;
    }

private:
    StructureField s_;
    Options opt_;
    double max_obstruction_ = 0.0;
    double max_equation_residual_ = 0.0;
};

inline NormalizationMap build_normalization(const StructureField& s, NormalizationMap::Options opt = {}) {
    return NormalizationMap(s, opt);
}

/// Structure transported by the coordinate change: J'(W) = DZ J(z) DZ^{-1} at z = Z^{-1}(W).
/// Derivatives of the result are finite-difference backed.
inline StructureField pushforward_structure(const NormalizationMap& m, const Box& target, int admissibility_samples = 200) {
    const NormalizationMap map = m;
    auto q = [map](const CVec& w) {
        const auto ch = map.chart(w(0));
        const CVec z = map.inverse_with(ch, w);
        const RMat jac = map.real_jacobian_with(ch, z);
        Eigen::FullPivLU<RMat> lu(jac);
        if (!lu.isInvertible()) fail(ErrorCode::jacobian_singular, "normalization Jacobian singular");
        const RMat j = map.structure().j_at(z);
        return j_to_q(jac * j * lu.inverse(), 1e-8);
    };
    StructureField::Options opt;
    opt.admissibility_samples = admissibility_samples;
    return StructureField(m.structure().name() + "_normalized", m.dimension(), target, q, {},
                          DerivativeSource::finite_difference, opt);
}

inline StructureField pushforward_structure(const NormalizationMap& m) {
    return pushforward_structure(m, m.structure().domain().shrunk(0.5));
}

}  // namespace aclab
