#pragma once

// Disc Laplacian for the example structure with u(0) = (z1, z2), u_zeta(0) = (1, t).
// There u_zetabar(0) = (0, conj z2) and u_{zeta zetabar}(0) = (0, z2), and the Laplacian splits as
//   A  = 2 Re[(l_{z1bar z2} + l_{z2 z2} conj z2) t]
//   B  = l_{z2 z2bar} (|t|^2 + |z2|^2)
//   C1 = 2 Re[l_{z1 z2} conj z2 + l_{z2} z2]
//   C2 = l_{z1 z1bar}

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aclab/disc/solver.hpp"
#include "aclab/psh/candidate.hpp"
#include "aclab/psh/terms.hpp"

namespace aclab {

struct E4Breakdown {
    cplx z1, z2, t;
    double a = 0.0, b = 0.0, c1 = 0.0, c2 = 0.0;
    cplx t_coefficient;  // A = 2 Re(t_coefficient t)
    double total() const { return a + b + c1 + c2; }
    TermBreakdown terms() const { return TermBreakdown({"A", "B", "C1", "C2"}, {a, b, c1, c2}); }
};

inline E4Breakdown e4_terms(const CandidateJet& l, cplx z1, cplx z2, cplx t) {
    E4Breakdown e;
    e.z1 = z1;
    e.z2 = z2;
    e.t = t;
    e.t_coefficient = l.hzzbar(1, 0) + l.hzz(1, 1) * std::conj(z2);
    e.a = 2 * (e.t_coefficient * t).real();
    e.b = l.hzzbar(1, 1).real() * (std::norm(t) + std::norm(z2));
    e.c1 = 2 * (l.hzz(0, 1) * std::conj(z2) + l.dz(1) * z2).real();
    e.c2 = l.hzzbar(0, 0).real();
    return e;
}

inline E4Breakdown e4_terms(const CandidateFunction& lambda, cplx z1, cplx z2, cplx t) {
    if (lambda.dimension() != 2) fail(ErrorCode::invalid_argument, "the example structure lives on C^2");
    if (z2 == cplx(0)) fail(ErrorCode::invalid_argument, "z2 must be nonzero");
    CVec z(2);
    z << z1, z2;
    return e4_terms(lambda.jet(z), z1, z2, t);
}

struct E4CrossCheck {
    E4Breakdown e4;
    TermBreakdown e2;
    double residual = 0.0;
    int iterations = 0;
    double difference() const { return std::abs(e4.total() - e2.total()); }
};

/// Solves the example-structure disc with jet ((z1, z2), (1, t)) and compares the two decompositions.
inline E4CrossCheck e4_disc_crosscheck(const CandidateFunction& lambda, cplx z1, cplx z2, cplx t, double radius = 0.05,
                                       const SolverOptions& opt = {128, 1e-11, 100}) {
    const StructureField s = builtin::example_part3();
    JetSpec jet;
    jet.center = CVec(2);
    jet.center << z1, z2;
    jet.derivative = CVec(2);
    jet.derivative << 1.0, t;
    jet.radius = radius;
    const DiscSolution sol = solve_disc(s, jet, opt);
    return {e4_terms(lambda, z1, z2, t), e2_terms(lambda, sol), sol.residual_sup, sol.iterations};
}

struct AttackSpec {
    double k2 = 8.0;
    int angles = 64;
    double r_hi = 1e-2, r_lo = 1e-8;  // decade range for |z2|
    int per_decade = 1;
    cplx z1 = 0.0;
    std::function<bool(cplx)> admissible;  // optional mask over z2

    std::vector<double> radii() const {
        if (!(r_lo > 0.0) || !(r_hi > r_lo) || per_decade < 1) fail(ErrorCode::invalid_argument, "invalid |z2| decade range");
        std::vector<double> out;
        const int steps = static_cast<int>(std::lround(std::log10(r_hi / r_lo) * per_decade));
        for (int k = 0; k <= steps; ++k) out.push_back(r_hi * std::pow(10.0, -double(k) / per_decade));
        return out;
    }
};

struct AttackRow {
    double r = 0.0;
    double theta = 0.0, arg_t = 0.0;
    E4Breakdown best;
    double threshold = 0.0;  // -(K2/8)|log r| + 1
    bool success = false;
    std::size_t samples = 0, masked = 0, failures = 0;
    std::string failure;
    std::vector<std::pair<double, double>> per_angle;  // (theta, total) for every evaluated angle
};

/// Minimizes the disc Laplacian over arg z2 and arg t with |t| = K2 |z2| |log|z2||.
/// arg t is aligned against the coefficient of t in A; arg z2 is scanned.
inline std::vector<AttackRow> run_attack(const CandidateFunction& lambda, const AttackSpec& spec) {
    if (spec.angles < 8) fail(ErrorCode::invalid_argument, "angle grid must resolve intervals of length pi/4 (>= 8 angles)");
    std::vector<AttackRow> rows;
    for (double r : spec.radii()) {
        AttackRow row;
        row.r = r;
        row.threshold = -spec.k2 / 8 * std::abs(std::log(r)) + 1;
        double best = std::numeric_limits<double>::infinity();
        const double t_abs = spec.k2 * r * std::abs(std::log(r));
        for (int a = 0; a < spec.angles; ++a) {
            const double theta = 2 * kPi * a / spec.angles;
            const cplx z2 = std::polar(r, theta);
            if (spec.admissible && !spec.admissible(z2)) {
                ++row.masked;
                continue;
            }
            ++row.samples;
            try {
                CVec z(2);
                z << spec.z1, z2;
                const CandidateJet l = lambda.jet(z);
                const cplx c = l.hzzbar(1, 0) + l.hzz(1, 1) * std::conj(z2);
                const cplx t = std::abs(c) > 0 ? -t_abs * std::conj(c) / std::abs(c) : cplx(t_abs);
                const E4Breakdown e = e4_terms(l, spec.z1, z2, t);
                row.per_angle.emplace_back(theta, e.total());
                if (e.total() < best) {
                    best = e.total();
                    row.best = e;
                    row.theta = theta;
                    row.arg_t = std::arg(t);
                }
            } catch (const LabError& e) {
                ++row.failures;
                row.failure = e.what();
            }
        }
        row.success = best <= row.threshold;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace aclab
