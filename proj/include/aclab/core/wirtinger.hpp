#pragma once

// Wirtinger calculus helpers. Convention used throughout the library:
//   d/dz = (d/dx - i d/dy) / 2,   d/dzbar = (d/dx + i d/dy) / 2,   Laplacian = 4 d2/dz dzbar.

#include <functional>

#include "aclab/core/types.hpp"

namespace aclab {

/// Second-order Wirtinger data of a scalar function at a point of C^n.
struct WirtingerJet {
    cplx value{};
    CVec dz;       // df/dz_j
    CVec dzbar;    // df/dzbar_j
    CMat dzdzbar;  // d2f/dz_j dzbar_k  (row j, column k)
    CMat dzdz;     // d2f/dz_j dz_k
};

/// Real gradient/Hessian in (x1, y1, ...) coordinates to Wirtinger form.
inline WirtingerJet wirtinger_from_real(cplx value, const CVec& grad, const CMat& hess) {
    const Eigen::Index n = grad.size() / 2;
    WirtingerJet w;
    w.value = value;
    w.dz.resize(n);
    w.dzbar.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        w.dz(j) = 0.5 * (grad(2 * j) - kI * grad(2 * j + 1));
        w.dzbar(j) = 0.5 * (grad(2 * j) + kI * grad(2 * j + 1));
    }
    if (hess.size() == 0) return w;
    w.dzdzbar.resize(n, n);
    w.dzdz.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const cplx xx = hess(2 * j, 2 * k);
            const cplx xy = hess(2 * j, 2 * k + 1);
            const cplx yx = hess(2 * j + 1, 2 * k);
            const cplx yy = hess(2 * j + 1, 2 * k + 1);
            w.dzdzbar(j, k) = 0.25 * (xx + kI * xy - kI * yx + yy);
            w.dzdz(j, k) = 0.25 * (xx - kI * xy - kI * yx - yy);
        }
    }
    return w;
}

/// Central-difference gradient and Hessian of a real function of 2n real variables.
inline WirtingerJet fd_wirtinger(const std::function<double(const CVec&)>& f, const CVec& z, double h) {
    const RVec x0 = to_real(z);
    const Eigen::Index m = x0.size();
    auto eval = [&](const RVec& x) { return f(to_complex(x)); };
    const double f0 = eval(x0);
    CVec grad(m);
    CMat hess(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
        RVec xp = x0, xm = x0;
        xp(a) += h;
        xm(a) -= h;
        const double fp = eval(xp), fm = eval(xm);
        grad(a) = (fp - fm) / (2 * h);
        hess(a, a) = (fp - 2 * f0 + fm) / (h * h);
    }
    for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = a + 1; b < m; ++b) {
            RVec xpp = x0, xpm = x0, xmp = x0, xmm = x0;
            xpp(a) += h, xpp(b) += h;
            xpm(a) += h, xpm(b) -= h;
            xmp(a) -= h, xmp(b) += h;
            xmm(a) -= h, xmm(b) -= h;
            const double v = (eval(xpp) - eval(xpm) - eval(xmp) + eval(xmm)) / (4 * h * h);
            hess(a, b) = hess(b, a) = v;
        }
    }
    return wirtinger_from_real(f0, grad, hess);
}

/// Realification of a C-linear map: entry q = a + ib becomes the block [[a, -b], [b, a]].
inline RMat realify_linear(const CMat& c) {
    RMat r(2 * c.rows(), 2 * c.cols());
    for (Eigen::Index j = 0; j < c.rows(); ++j) {
        for (Eigen::Index k = 0; k < c.cols(); ++k) {
            const double a = c(j, k).real(), b = c(j, k).imag();
            r(2 * j, 2 * k) = a;
            r(2 * j, 2 * k + 1) = -b;
            r(2 * j + 1, 2 * k) = b;
            r(2 * j + 1, 2 * k + 1) = a;
        }
    }
    return r;
}

/// Realification of the antilinear map w -> conj(Q w): block [[a, -b], [-b, -a]].
inline RMat realify_conjugate(const CMat& q) {
    RMat r(2 * q.rows(), 2 * q.cols());
    for (Eigen::Index j = 0; j < q.rows(); ++j) {
        for (Eigen::Index k = 0; k < q.cols(); ++k) {
            const double a = q(j, k).real(), b = q(j, k).imag();
            r(2 * j, 2 * k) = a;
            r(2 * j, 2 * k + 1) = -b;
            r(2 * j + 1, 2 * k) = -b;
            r(2 * j + 1, 2 * k + 1) = -a;
        }
    }
    return r;
}

/// Multiplication by i on C^n in real coordinates.
inline RMat j_standard(int n) { return realify_linear(kI * CMat::Identity(n, n)); }

}  // namespace aclab
