#pragma once

// Almost complex structures on boxes of C^n, stored as the complex matrix field Q with
//   du-bar/dzeta = Q(u) du/dzeta,
// and the real 2n x 2n matrix J related to it by J = J_st (1 - Qbar)(1 + Qbar)^{-1},
// where Qbar is the antilinear map w -> conj(Q w).

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "aclab/core/error.hpp"
#include "aclab/core/expression.hpp"
#include "aclab/core/types.hpp"
#include "aclab/core/wirtinger.hpp"

namespace aclab {

/// First Wirtinger derivatives of Q: dz[j] = dQ/dz_j, dzbar[j] = dQ/dzbar_j.
struct QDerivatives {
    std::vector<CMat> dz;
    std::vector<CMat> dzbar;
};

enum class DerivativeSource { analytic, autodiff, finite_difference };

inline const char* to_string(DerivativeSource s) {
    switch (s) {
        case DerivativeSource::analytic: return "analytic";
        case DerivativeSource::autodiff: return "autodiff";
        case DerivativeSource::finite_difference: return "finite-difference";
    }
    return "?";
}

inline RMat q_to_j(const CMat& q) {
    const auto m = 2 * q.rows();
    const RMat r = realify_conjugate(q);
    const RMat id = RMat::Identity(m, m);
    Eigen::FullPivLU<RMat> lu(id + r);
    if (!lu.isInvertible() || lu.rcond() < 1e-12) fail(ErrorCode::inadmissible_structure, "structure out of admissible range");
    return j_standard(static_cast<int>(q.rows())) * (id - r) * lu.inverse();
}

/// Inverse of q_to_j. Qbar = (J + J_st)^{-1} (J_st - J).
inline CMat j_to_q(const RMat& j, double tol = 1e-10) {
    const auto m = j.rows();
    const int n = static_cast<int>(m / 2);
    const RMat id = RMat::Identity(m, m);
    const double square_defect = (j * j + id).cwiseAbs().maxCoeff();
    if (square_defect > tol * std::max(1.0, j.squaredNorm())) {
        fail(ErrorCode::invalid_j, "J^2 != -1 (defect " + std::to_string(square_defect) + ")");
    }
    const RMat jst = j_standard(n);
    Eigen::FullPivLU<RMat> lu(j + jst);
    if (!lu.isInvertible() || lu.rcond() < 1e-12) fail(ErrorCode::invalid_j, "J + J_st is not invertible");
    const RMat r = lu.solve(jst - j);
    CMat q(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const double re = 0.5 * (r(2 * a, 2 * b) - r(2 * a + 1, 2 * b + 1));
            const double im = -0.5 * (r(2 * a, 2 * b + 1) + r(2 * a + 1, 2 * b));
            q(a, b) = cplx(re, im);
        }
    }
    return q;
}

class StructureField {
public:
    using QFn = std::function<CMat(const CVec&)>;
    using DQFn = std::function<QDerivatives(const CVec&)>;

    struct Options {
        bool check_admissible = true;
        int admissibility_samples = 2000;
        std::uint64_t seed = 12345;
    };

    /// dq may be empty, in which case derivatives are taken by central differences of q.
    StructureField(std::string name, int n, Box domain, QFn q, DQFn dq, DerivativeSource source, Options opt)
        : name_(std::move(name)), n_(n), domain_(std::move(domain)), q_(std::move(q)), dq_(std::move(dq)), source_(source) {
        if (n_ < 1 || domain_.dimension() != n_) fail(ErrorCode::invalid_argument, "structure dimension mismatch");
        if (!dq_) source_ = DerivativeSource::finite_difference;
        sup_norm_ = sampled_sup_norm(opt.admissibility_samples, opt.seed);
        if (opt.check_admissible && !(sup_norm_ < 0.5)) {
            fail(ErrorCode::inadmissible_structure,
                 "structure out of admissible range: sup |Q| = " + std::to_string(sup_norm_) + " >= 1/2 on " + name_);
        }
    }

    StructureField(std::string name, int n, Box domain, QFn q, DQFn dq, DerivativeSource source)
        : StructureField(std::move(name), n, std::move(domain), std::move(q), std::move(dq), source, Options{}) {}

    const std::string& name() const { return name_; }
    int dimension() const { return n_; }
    const Box& domain() const { return domain_; }
    DerivativeSource derivative_source() const { return source_; }
    double sampled_sup() const { return sup_norm_; }

    CMat q_at(const CVec& z) const { return q_(z); }

    QDerivatives dq_at(const CVec& z) const {
        if (dq_) return dq_(z);
        return fd_dq(z, fd_step());
    }

    RMat j_at(const CVec& z) const { return q_to_j(q_at(z)); }

    double fd_step() const { return 1e-4 * domain_.scale(); }

    /// Central-difference derivatives of q, independent of the stored derivative source.
    QDerivatives fd_dq(const CVec& z, double h) const {
        QDerivatives d;
        for (int j = 0; j < n_; ++j) {
            CVec zp = z, zm = z;
            zp(j) += h;
            zm(j) -= h;
            const CMat dx = (q_(zp) - q_(zm)) / (2 * h);
            zp(j) = z(j) + kI * h;
            zm(j) = z(j) - kI * h;
            const CMat dy = (q_(zp) - q_(zm)) / (2 * h);
            d.dz.push_back(0.5 * (dx - kI * dy));
            d.dzbar.push_back(0.5 * (dx + kI * dy));
        }
        return d;
    }

    /// Sampling points used for admissibility: corners, center, and seeded uniform points.
    std::vector<CVec> sample_points(int random_count, std::uint64_t seed) const {
        std::vector<CVec> pts;
        const int m = 2 * n_;
        if (m <= 16) {
            for (long mask = 0; mask < (1L << m); ++mask) {
                RVec x(m);
                for (int k = 0; k < m; ++k) x(k) = (mask >> k) & 1 ? domain_.upper(k) : domain_.lower(k);
                pts.push_back(to_complex(x));
            }
        }
        pts.push_back(to_complex(0.5 * (domain_.lower + domain_.upper)));
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int s = 0; s < random_count; ++s) {
            RVec x(m);
            for (int k = 0; k < m; ++k) x(k) = domain_.lower(k) + u(rng) * (domain_.upper(k) - domain_.lower(k));
            pts.push_back(to_complex(x));
        }
        return pts;
    }

private:
    double sampled_sup_norm(int samples, std::uint64_t seed) const {
        double s = 0.0;
        for (const CVec& z : sample_points(samples, seed)) s = std::max(s, operator_norm(q_(z)));
        return s;
    }

    std::string name_;
    int n_;
    Box domain_;
    QFn q_;
    DQFn dq_;
    DerivativeSource source_;
    double sup_norm_ = 0.0;
};

/// Real matrix field J on a box of R^{2n}.
class JMatrixField {
public:
    using Fn = std::function<RMat(const RVec&)>;

    JMatrixField(int n, Box domain, Fn j) : n_(n), domain_(std::move(domain)), j_(std::move(j)) {}

    static JMatrixField from_structure(const StructureField& s) {
        return from_q(s.dimension(), s.domain(), [s](const CVec& z) { return s.q_at(z); });
    }

    /// J field of an arbitrary Q field on an arbitrary box (no admissibility bound imposed).
    static JMatrixField from_q(int n, Box domain, std::function<CMat(const CVec&)> q) {
        return JMatrixField(n, std::move(domain), [q = std::move(q)](const RVec& x) { return q_to_j(q(to_complex(x))); });
    }

    static JMatrixField standard(int n, Box domain) {
        const RMat jst = j_standard(n);
        return JMatrixField(n, std::move(domain), [jst](const RVec&) { return jst; });
    }

    int dimension() const { return n_; }
    const Box& domain() const { return domain_; }
    RMat j_at(const RVec& x) const { return j_(x); }
    double fd_step() const { return 1e-4 * domain_.scale(); }

    /// max |J^2 + 1| over the given points.
    double square_defect(const std::vector<RVec>& pts) const {
        double d = 0.0;
        for (const RVec& x : pts) {
            const RMat j = j_(x);
            d = std::max(d, (j * j + RMat::Identity(2 * n_, 2 * n_)).cwiseAbs().maxCoeff());
        }
        return d;
    }

private:
    int n_;
    Box domain_;
    Fn j_;
};

/// Structure whose Q entries are closed-form expressions (row-major, n*n strings).
inline StructureField structure_from_expressions(const std::string& name, int n, const std::vector<std::string>& entries,
                                                 const Box& domain, StructureField::Options opt = {}) {
    if (static_cast<int>(entries.size()) != n * n) {
        fail(ErrorCode::schema_error, "Q needs " + std::to_string(n * n) + " entries, got " + std::to_string(entries.size()));
    }
    auto exprs = std::make_shared<std::vector<Expression>>();
    for (const auto& e : entries) exprs->push_back(Expression::parse(e, n));
    auto q = [exprs, n](const CVec& z) {
        CMat m(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) m(a, b) = (*exprs)[static_cast<std::size_t>(a * n + b)](z);
        return m;
    };
    auto dq = [exprs, n](const CVec& z) {
        QDerivatives d;
        d.dz.assign(static_cast<std::size_t>(n), CMat::Zero(n, n));
        d.dzbar.assign(static_cast<std::size_t>(n), CMat::Zero(n, n));
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                const Expression& e = (*exprs)[static_cast<std::size_t>(a * n + b)];
                if (e.is_zero()) continue;
                const Jet2 jt = e.jet2(z);
                const WirtingerJet w = wirtinger_from_real(jt.v, jt.g, CMat());
                for (int j = 0; j < n; ++j) {
                    d.dz[static_cast<std::size_t>(j)](a, b) = w.dz(j);
                    d.dzbar[static_cast<std::size_t>(j)](a, b) = w.dzbar(j);
                }
            }
        }
        return d;
    };
    return StructureField(name, n, domain, q, dq, DerivativeSource::autodiff, opt);
}

namespace builtin {

/// Q = [[0, 0], [z2, 0]] on |x1|, |y1| <= 4, |x2|, |y2| <= 0.35.
inline StructureField example_part3(const Box& domain = Box::centered({4.0, 0.35})) {
    auto q = [](const CVec& z) {
        CMat m = CMat::Zero(2, 2);
        m(1, 0) = z(1);
        return m;
    };
    auto dq = [](const CVec&) {
        QDerivatives d;
        d.dz.assign(2, CMat::Zero(2, 2));
        d.dzbar.assign(2, CMat::Zero(2, 2));
        d.dz[1](1, 0) = 1.0;
        return d;
    };
    return StructureField("example_part3", 2, domain, q, dq, DerivativeSource::analytic);
}

/// The same Q without the admissibility bound, for pointwise algebra away from the solver box.
inline CMat example_part3_q(const CVec& z) {
    CMat m = CMat::Zero(2, 2);
    m(1, 0) = z(1);
    return m;
}

inline StructureField standard(int n = 2, double half_width = 1.0) {
    auto q = [n](const CVec&) { return CMat::Zero(n, n); };
    auto dq = [n](const CVec&) {
        QDerivatives d;
        d.dz.assign(static_cast<std::size_t>(n), CMat::Zero(n, n));
        d.dzbar.assign(static_cast<std::size_t>(n), CMat::Zero(n, n));
        return d;
    };
    return StructureField("standard", n, Box::cube(n, half_width), q, dq, DerivativeSource::analytic);
}

/// Standard along the axis with vanishing Nijenhuis tensor there; not normalized (Q is first order in z2).
inline StructureField toy_n0() {
    return structure_from_expressions(
        "toy_n0", 2,
        {"0", "0", "0", "(0.2 + 0.1*conj(z1))*z2 + (0.1 - 0.05i)*conj(z2) + 0.25*z2*conj(z2)"},
        Box::centered({1.2, 0.3}));
}

/// Already normalized: Q = O(|Z'|^2) along the axis.
inline StructureField toy_quadratic() {
    return structure_from_expressions("toy_quadratic", 2,
                                      {"0.2*conj(z2)^2", "0", "0.3*z2^2", "0.25*z2*conj(z2)*(1 + 0.2*z1)"},
                                      Box::centered({1.2, 0.3}));
}

/// Standard along the axis, first order off it, Nijenhuis tensor nonzero.
inline StructureField prop1_test() {
    return structure_from_expressions("prop1_test", 2,
                                      {"0.15*conj(z2)", "0", "0.25*z2 + 0.1*z1*conj(z2)", "0.2*conj(z2)"},
                                      Box::centered({1.2, 0.3}));
}

/// Random affine structure Q(z) = Q0 + sum_j (A_j z_j + B_j zbar_j) with sup |Q| <= target on the box.
inline StructureField random_affine(int n, std::uint64_t seed, double target = 0.4, double half_width = 0.5) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    auto rnd = [&]() {
        CMat m(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) m(a, b) = cplx(g(rng), g(rng));
        return m;
    };
    CMat q0 = rnd();
    std::vector<CMat> a, b;
    for (int j = 0; j < n; ++j) {
        a.push_back(rnd());
        b.push_back(rnd());
    }
    // Crude bound: |Q| <= |Q0| + w * sum_j (|A_j| + |B_j|) on the cube of half width w.
    double bound = operator_norm(q0);
    for (int j = 0; j < n; ++j) bound += std::sqrt(2.0) * half_width * (operator_norm(a[j]) + operator_norm(b[j]));
    const double scale = target / bound;
    q0 *= scale;
    for (int j = 0; j < n; ++j) {
        a[j] *= scale;
        b[j] *= scale;
    }
    auto q = [q0, a, b, n](const CVec& z) {
        CMat m = q0;
        for (int j = 0; j < n; ++j) m += a[j] * z(j) + b[j] * std::conj(z(j));
        return m;
    };
    auto dq = [a, b](const CVec&) { return QDerivatives{a, b}; };
    return StructureField("random_affine_" + std::to_string(seed), n, Box::cube(n, half_width), q, dq,
                          DerivativeSource::analytic);
}

inline std::vector<std::string> names() {
    return {"example_part3", "standard", "toy_n0", "toy_quadratic", "prop1_test"};
}

inline StructureField by_name(const std::string& name) {
    if (name == "example_part3") return example_part3();
    if (name == "standard") return standard();
    if (name == "toy_n0") return toy_n0();
    if (name == "toy_quadratic") return toy_quadratic();
    if (name == "prop1_test") return prop1_test();
    fail(ErrorCode::invalid_argument, "unknown builtin structure '" + name + "'");
}

}  // namespace builtin

}  // namespace aclab
