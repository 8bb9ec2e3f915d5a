#pragma once

// Real-valued candidate functions on C^n with second-order Wirtinger data.
// Z' = (z_2, ..., z_n) is the transverse block; for n = 1 it is the whole coordinate.

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>

#include "aclab/core/error.hpp"
#include "aclab/core/expression.hpp"
#include "aclab/core/wirtinger.hpp"
#include "aclab/structure/structure_field.hpp"

namespace aclab {

/// dzbar is conj(dz) for a real function and is not stored.
struct CandidateJet {
    double value = 0.0;
    CVec dz;       // d lambda / dz_j
    CMat hzzbar;   // d2 lambda / dz_j dzbar_k (Hermitian)
    CMat hzz;      // d2 lambda / dz_j dz_k (symmetric)
};

class CandidateFunction {
public:
    using JetFn = std::function<CandidateJet(const CVec&)>;
    using ValueFn = std::function<double(const CVec&)>;
    using Predicate = std::function<bool(const CVec&)>;

    CandidateFunction(std::string name, int n, JetFn jet, ValueFn value, Predicate singular, DerivativeSource source,
                      std::string singular_description = "")
        : name_(std::move(name)),
          n_(n),
          jet_(std::move(jet)),
          value_(std::move(value)),
          singular_(std::move(singular)),
          source_(source),
          singular_description_(std::move(singular_description)) {}

    const std::string& name() const { return name_; }
    int dimension() const { return n_; }
    DerivativeSource derivative_source() const { return source_; }
    const std::string& singular_locus() const { return singular_description_; }

    bool is_singular(const CVec& z) const { return singular_ && singular_(z); }

    double value(const CVec& z) const {
        refuse_singular(z);
        return value_(z);
    }

    CandidateJet jet(const CVec& z) const {
        refuse_singular(z);
        return jet_(z);
    }

    /// z1-extent required by smoothing in z1 (infinite unless restricted).
    double z1_extent = std::numeric_limits<double>::infinity();

private:
    void refuse_singular(const CVec& z) const {
        if (z.size() != n_) fail(ErrorCode::invalid_argument, "candidate " + name_ + ": point has wrong dimension");
        if (is_singular(z)) fail(ErrorCode::singular_locus, "candidate " + name_ + " evaluated on its singular locus " + singular_description_);
    }

    std::string name_;
    int n_;
    JetFn jet_;
    ValueFn value_;
    Predicate singular_;
    DerivativeSource source_;
    std::string singular_description_;
};

inline int transverse_start(int n) { return n == 1 ? 0 : 1; }

inline double transverse_norm_sq(const CVec& z) {
    const int s = transverse_start(static_cast<int>(z.size()));
    return z.tail(z.size() - s).squaredNorm();
}

namespace candidates {

inline CandidateFunction sum(const CandidateFunction& a, const CandidateFunction& b) {
    if (a.dimension() != b.dimension()) fail(ErrorCode::invalid_argument, "candidate dimensions differ");
    auto jet = [a, b](const CVec& z) {
        CandidateJet x = a.jet(z), y = b.jet(z);
        return CandidateJet{x.value + y.value, x.dz + y.dz, x.hzzbar + y.hzzbar, x.hzz + y.hzz};
    };
    auto value = [a, b](const CVec& z) { return a.value(z) + b.value(z); };
    auto sing = [a, b](const CVec& z) { return a.is_singular(z) || b.is_singular(z); };
    const DerivativeSource src =
        a.derivative_source() == DerivativeSource::finite_difference || b.derivative_source() == DerivativeSource::finite_difference
            ? DerivativeSource::finite_difference
            : (a.derivative_source() == DerivativeSource::autodiff || b.derivative_source() == DerivativeSource::autodiff
                   ? DerivativeSource::autodiff
                   : DerivativeSource::analytic);
    CandidateFunction c(a.name() + " + " + b.name(), a.dimension(), jet, value, sing, src,
                        a.singular_locus() + b.singular_locus());
    c.z1_extent = std::min(a.z1_extent, b.z1_extent);
    return c;
}

inline CandidateFunction scale(double k, const CandidateFunction& a) {
    auto jet = [k, a](const CVec& z) {
        CandidateJet x = a.jet(z);
        return CandidateJet{k * x.value, k * x.dz, k * x.hzzbar, k * x.hzz};
    };
    auto value = [k, a](const CVec& z) { return k * a.value(z); };
    auto sing = [a](const CVec& z) { return a.is_singular(z); };
    CandidateFunction c(std::to_string(k) + "*(" + a.name() + ")", a.dimension(), jet, value, sing, a.derivative_source(),
                        a.singular_locus());
    c.z1_extent = a.z1_extent;
    return c;
}

/// log|z_j| (j 0-based).
inline CandidateFunction log_abs(int n, int j) {
    auto jet = [n, j](const CVec& z) {
        CandidateJet c{std::log(std::abs(z(j))), CVec::Zero(n), CMat::Zero(n, n), CMat::Zero(n, n)};
        c.dz(j) = 0.5 / z(j);
        c.hzz(j, j) = -0.5 / (z(j) * z(j));
        return c;
    };
    auto value = [j](const CVec& z) { return std::log(std::abs(z(j))); };
    auto sing = [j](const CVec& z) { return z(j) == cplx(0); };
    return CandidateFunction("log|z" + std::to_string(j + 1) + "|", n, jet, value, sing, DerivativeSource::analytic,
                             "{z" + std::to_string(j + 1) + " = 0}");
}

/// log|Z'| = (1/2) log s with s = |Z'|^2.
inline CandidateFunction log_norm(int n) {
    const int t = transverse_start(n);
    auto jet = [n, t](const CVec& z) {
        const double s = transverse_norm_sq(z);
        CandidateJet c{0.5 * std::log(s), CVec::Zero(n), CMat::Zero(n, n), CMat::Zero(n, n)};
        for (int j = t; j < n; ++j) {
            c.dz(j) = std::conj(z(j)) / (2 * s);
            for (int k = t; k < n; ++k) {
                c.hzzbar(j, k) = ((j == k ? s : 0.0) - std::conj(z(j)) * z(k)) / (2 * s * s);
                c.hzz(j, k) = -std::conj(z(j)) * std::conj(z(k)) / (2 * s * s);
            }
        }
        return c;
    };
    auto value = [](const CVec& z) { return 0.5 * std::log(transverse_norm_sq(z)); };
    auto sing = [](const CVec& z) { return transverse_norm_sq(z) == 0.0; };
    return CandidateFunction("log|Z'|", n, jet, value, sing, DerivativeSource::analytic, "{Z' = 0}");
}

/// LL = -log|log|Z'||, refused outside 1e-12 < |Z'| < 1/e.
inline CandidateFunction loglog(int n) {
    const CandidateFunction l = log_norm(n);
    auto guard = [](const CVec& z) {
        const double r = std::sqrt(transverse_norm_sq(z));
        return !(r > 1e-12 && r < std::exp(-1.0));
    };
    auto jet = [l, n](const CVec& z) {
        const CandidateJet lj = l.jet(z);
        const double lv = lj.value;  // < 0
        const double d1 = -1.0 / lv, d2 = 1.0 / (lv * lv);
        CandidateJet c{-std::log(-lv), d1 * lj.dz, CMat(n, n), CMat(n, n)};
        c.hzzbar = d1 * lj.hzzbar + d2 * lj.dz * lj.dz.adjoint();
        c.hzz = d1 * lj.hzz + d2 * lj.dz * lj.dz.transpose();
        return c;
    };
    auto value = [](const CVec& z) { return -std::log(std::abs(0.5 * std::log(transverse_norm_sq(z)))); };
    return CandidateFunction("-log|log|Z'||", n, jet, value, guard, DerivativeSource::analytic,
                             "{|Z'| <= 1e-12 or |Z'| >= 1/e}");
}

/// |z_j|^2.
inline CandidateFunction abs_sq(int n, int j) {
    auto jet = [n, j](const CVec& z) {
        CandidateJet c{std::norm(z(j)), CVec::Zero(n), CMat::Zero(n, n), CMat::Zero(n, n)};
        c.dz(j) = std::conj(z(j));
        c.hzzbar(j, j) = 1.0;
        return c;
    };
    auto value = [j](const CVec& z) { return std::norm(z(j)); };
    return CandidateFunction("|z" + std::to_string(j + 1) + "|^2", n, jet, value, nullptr, DerivativeSource::analytic);
}

/// |Z|^2 over all coordinates.
inline CandidateFunction norm_sq(int n) {
    auto jet = [n](const CVec& z) {
        return CandidateJet{z.squaredNorm(), z.conjugate(), CMat::Identity(n, n), CMat::Zero(n, n)};
    };
    auto value = [](const CVec& z) { return z.squaredNorm(); };
    return CandidateFunction("|Z|^2", n, jet, value, nullptr, DerivativeSource::analytic);
}

/// Re z_1.
inline CandidateFunction re_z1(int n) {
    auto jet = [n](const CVec& z) {
        CandidateJet c{z(0).real(), CVec::Zero(n), CMat::Zero(n, n), CMat::Zero(n, n)};
        c.dz(0) = 0.5;
        return c;
    };
    auto value = [](const CVec& z) { return z(0).real(); };
    return CandidateFunction("Re z1", n, jet, value, nullptr, DerivativeSource::analytic);
}

/// |Z'| = s^{1/2}.
inline CandidateFunction abs_norm(int n) {
    const int t = transverse_start(n);
    auto jet = [n, t](const CVec& z) {
        const double s = transverse_norm_sq(z), r = std::sqrt(s);
        CandidateJet c{r, CVec::Zero(n), CMat::Zero(n, n), CMat::Zero(n, n)};
        for (int j = t; j < n; ++j) {
            c.dz(j) = std::conj(z(j)) / (2 * r);
            for (int k = t; k < n; ++k) {
                c.hzzbar(j, k) = (j == k ? 1.0 / (2 * r) : 0.0) - std::conj(z(j)) * z(k) / (4 * r * s);
                c.hzz(j, k) = -std::conj(z(j)) * std::conj(z(k)) / (4 * r * s);
            }
        }
        return c;
    };
    auto value = [](const CVec& z) { return std::sqrt(transverse_norm_sq(z)); };
    auto sing = [](const CVec& z) { return transverse_norm_sq(z) == 0.0; };
    return CandidateFunction("|Z'|", n, jet, value, sing, DerivativeSource::analytic, "{Z' = 0}");
}

/// Chirka-type function log|Z'| + A |Z'|.
inline CandidateFunction chirka(int n, double a) { return sum(log_norm(n), scale(a, abs_norm(n))); }

/// -log|log|Z'|| + K |z_1|^2.
inline CandidateFunction prop1(int n, double k) { return sum(loglog(n), scale(k, abs_sq(n, 0))); }

/// log|Z'| + K |Z|^2.
inline CandidateFunction prop3(int n, double k) { return sum(log_norm(n), scale(k, norm_sq(n))); }

/// Real part of a closed-form expression, differentiated exactly.
inline CandidateFunction from_expression(const std::string& text, int n) {
    auto e = std::make_shared<Expression>(Expression::parse(text, n));
    auto jet = [e](const CVec& z) {
        const Jet2 j = e->jet2(z);
        const WirtingerJet w = wirtinger_from_real(j.v.real(), CVec(j.g.real().cast<cplx>()), CMat(j.H.real().cast<cplx>()));
        return CandidateJet{w.value.real(), w.dz, w.dzdzbar, w.dzdz};
    };
    auto value = [e](const CVec& z) { return (*e)(z).real(); };
    auto sing = [e](const CVec& z) { return !std::isfinite((*e)(z).real()); };
    return CandidateFunction(text, n, jet, value, sing, DerivativeSource::autodiff, "{non-finite values}");
}

/// Candidate from a value function alone; derivatives by central differences of step h.
inline CandidateFunction finite_difference(const std::string& name, int n, std::function<double(const CVec&)> f, double h,
                                           std::function<bool(const CVec&)> singular = nullptr) {
    auto jet = [f, h](const CVec& z) {
        const WirtingerJet w = fd_wirtinger(f, z, h);
        return CandidateJet{w.value.real(), w.dz, w.dzdzbar, w.dzdz};
    };
    return CandidateFunction(name, n, jet, f, std::move(singular), DerivativeSource::finite_difference);
}

/// lambda_0 = -Im z1 + (Im z1)^2 + (Im z2)^2 - (Re z1)^2 / 2 - (Re z2)^2 / 2 on C^2.
inline CandidateFunction lambda0() {
    CandidateFunction c = from_expression("-im(z1) + im(z1)^2 + im(z2)^2 - 0.5*re(z1)^2 - 0.5*re(z2)^2", 2);
    return CandidateFunction("lambda0", 2, [c](const CVec& z) { return c.jet(z); }, [c](const CVec& z) { return c.value(z); },
                             nullptr, DerivativeSource::autodiff);
}

}  // namespace candidates

}  // namespace aclab
