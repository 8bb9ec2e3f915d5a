#pragma once

// Plurisubharmonicity checks of a candidate along families of J-holomorphic discs: the sign of
// d2(lambda o u)/dzeta dzetabar (0) for each disc, reported with its I / II / III breakdown.

#include <random>
#include <string>
#include <vector>

#include "aclab/disc/solver.hpp"
#include "aclab/psh/candidate.hpp"
#include "aclab/psh/terms.hpp"

namespace aclab {

struct JetSampler {
    double z1_radius = 0.2;        // |u_1(0)| <= z1_radius
    double r_lo = 1e-4, r_hi = 1e-2;  // |Z'(0)| log-uniform in [r_lo, r_hi]
    double min_speed = 0.3;        // eps^2 + tau^2 >= min_speed^2
    double max_speed = 1.0;
    double radius = 0.05;
    unsigned seed = 2024;

    std::vector<JetSpec> sample(int n, int count) const {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        auto phase = [&] { return std::polar(1.0, 2 * kPi * u01(rng)); };
        auto direction = [&](int m) {
            CVec v(m);
            std::normal_distribution<double> nd;
            for (int k = 0; k < m; ++k) v(k) = cplx(nd(rng), nd(rng));
            return CVec(v / v.norm());
        };
        std::vector<JetSpec> out;
        for (int k = 0; k < count; ++k) {
            JetSpec j;
            j.radius = radius;
            j.center = CVec::Zero(n);
            j.derivative = CVec::Zero(n);
            j.center(0) = z1_radius * std::sqrt(u01(rng)) * phase();
            const double r = r_lo * std::pow(r_hi / r_lo, u01(rng));
            j.center.tail(n - 1) = r * direction(n - 1);
            const double speed = min_speed + (max_speed - min_speed) * u01(rng);
            const double angle = 0.5 * kPi * u01(rng);
            j.derivative(0) = speed * std::cos(angle) * phase();
            j.derivative.tail(n - 1) = speed * std::sin(angle) * direction(n - 1);
            out.push_back(j);
        }
        return out;
    }
};

enum class DiscVerdict { pass, violation, solver_error };

inline const char* to_string(DiscVerdict v) {
    switch (v) {
        case DiscVerdict::pass: return "pass";
        case DiscVerdict::violation: return "violation";
        case DiscVerdict::solver_error: return "solver_error";
    }
    return "?";
}

struct DiscCheck {
    JetSpec jet;
    TermBreakdown terms;
    DiscVerdict verdict = DiscVerdict::pass;
    std::string message;
    double residual = 0.0;
};

struct PshReport {
    std::string candidate;
    std::vector<DiscCheck> discs;
    double slack = 0.0;
    std::size_t violations = 0, errors = 0;
    double min_total = std::numeric_limits<double>::infinity();
    bool certified() const { return violations == 0 && errors == 0 && !discs.empty(); }
};

struct CertifyOptions {
    SolverOptions solver{64, 1e-10, 100};
    double slack = -1.0;  // negative: 10 tol / rho^2
};

inline PshReport certify_psh_on_discs(const CandidateFunction& lambda, const StructureField& s, const std::vector<JetSpec>& jets,
                                      const CertifyOptions& opt = {}) {
    if (lambda.dimension() != s.dimension()) fail(ErrorCode::invalid_argument, "candidate and structure dimensions differ");
    PshReport rep;
    rep.candidate = lambda.name();
    for (const JetSpec& jet : jets) {
        DiscCheck c;
        c.jet = jet;
        const double slack = opt.slack >= 0 ? opt.slack : 10 * opt.solver.tol / (jet.radius * jet.radius);
        rep.slack = std::max(rep.slack, slack);
        try {
            const DiscSolution sol = solve_disc(s, jet, opt.solver);
            c.residual = sol.residual_sup;
            c.terms = e2_terms(lambda, sol);
            rep.min_total = std::min(rep.min_total, c.terms.total());
            if (c.terms.total() < -slack) {
                c.verdict = DiscVerdict::violation;
                ++rep.violations;
            }
        } catch (const LabError& e) {
            c.verdict = DiscVerdict::solver_error;
            c.message = e.what();
            ++rep.errors;
        }
        rep.discs.push_back(std::move(c));
    }
    return rep;
}

/// Largest sampled norm of grad Q on the axis Z' = 0 (Q must vanish to first order there after normalization).
inline double axis_gradient_sup(const StructureField& s, int samples = 9) {
    const Box& b = s.domain();
    double sup = 0.0;
    for (int i = 0; i < samples; ++i) {
        for (int j = 0; j < samples; ++j) {
            CVec z = CVec::Zero(s.dimension());
            const double fx = 0.1 + 0.8 * i / (samples - 1), fy = 0.1 + 0.8 * j / (samples - 1);
            z(0) = cplx(b.lower(0) + fx * (b.upper(0) - b.lower(0)), b.lower(1) + fy * (b.upper(1) - b.lower(1)));
            const QDerivatives d = s.dq_at(z);
            sup = std::max(sup, operator_norm(s.q_at(z)));
            for (std::size_t k = 0; k < d.dz.size(); ++k) sup = std::max({sup, operator_norm(d.dz[k]), operator_norm(d.dzbar[k])});
        }
    }
    return sup;
}

struct Prop3Report {
    double k = 0.0;                // first K of the schedule with no violation
    double threshold_radius = 0.0; // largest |Z'(0)| among the certified jets
    double fitted_c = 0.0;         // max over jets of -E2(log|Z'|) / |v|^2
    double fitted_m = 0.0;         // min over jets of  E2(|Z|^2) / |v|^2
    std::vector<std::pair<double, std::size_t>> schedule;  // (K, violations)
    std::size_t jets = 0;
    bool found = false;
};

/// Doubles K from k_start until log|Z'| + K |Z|^2 has a nonnegative disc Laplacian on every jet.
inline Prop3Report prop3_certify(const StructureField& s, const std::vector<JetSpec>& jets, const CertifyOptions& opt = {},
                                 double k_start = 1.0, double k_cap = 1073741824.0, double axis_tol = 1e-6) {
    if (!(k_start > 0.0) || !(k_cap >= k_start)) fail(ErrorCode::invalid_schedule, "K schedule must satisfy 0 < K_start <= K_cap");
    if (axis_gradient_sup(s) > axis_tol) fail(ErrorCode::normalization_unmet, "structure is not normalized: Q or grad Q nonzero on the axis");
    const int n = s.dimension();
    const CandidateFunction lg = candidates::log_norm(n), sq = candidates::norm_sq(n);
    struct Row {
        double log_part, sq_part, slack;
    };
    std::vector<Row> rows;
    Prop3Report rep;
    rep.fitted_m = std::numeric_limits<double>::infinity();
    for (const JetSpec& jet : jets) {
        const DiscSolution sol = solve_disc(s, jet, opt.solver);
        const double a = e2_terms(lg, sol).total(), b = e2_terms(sq, sol).total();
        const double speed = jet.derivative.squaredNorm();
        rows.push_back({a, b, opt.slack >= 0 ? opt.slack : 10 * opt.solver.tol / (jet.radius * jet.radius)});
        rep.fitted_c = std::max(rep.fitted_c, -a / speed);
        rep.fitted_m = std::min(rep.fitted_m, b / speed);
        rep.threshold_radius = std::max(rep.threshold_radius, transverse_norm_sq(jet.center) > 0 ? std::sqrt(transverse_norm_sq(jet.center)) : 0.0);
    }
    rep.jets = jets.size();
    for (double k = k_start; k <= k_cap; k *= 2) {
        std::size_t bad = 0;
        for (const Row& r : rows)
            if (r.log_part + k * r.sq_part < -r.slack) ++bad;
        rep.schedule.emplace_back(k, bad);
        if (bad == 0) {
            rep.k = k;
            rep.found = true;
            break;
        }
    }
    return rep;
}

}  // namespace aclab
