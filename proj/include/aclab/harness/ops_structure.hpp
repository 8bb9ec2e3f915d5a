#pragma once

#include <random>

#include "aclab/harness/operation.hpp"
#include "aclab/psh/certify.hpp"
#include "aclab/structure/nijenhuis.hpp"
#include "aclab/structure/normalization.hpp"

namespace aclab::harness {

namespace detail {

/// Realified (a, b) in C^2 as (Re a, Im a, Re b, Im b).
inline RVec real4(cplx a, cplx b) {
    RVec v(4);
    v << a.real(), a.imag(), b.real(), b.imag();
    return v;
}

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const auto m = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double a = std::log(x[k]), b = std::log(y[k]);
        sx += a, sy += b, sxx += a * a, sxy += a * b;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace detail

/// The real 4x4 matrix of the example structure and its action on the complex basis, at random points.
inline OpOutput op_structure_matrix(const json& p, std::uint64_t seed) {
    const int points = p.at("points").get<int>();
    const double tol = p.at("tol").get<double>();
    const auto hw = number_list(p.at("half_widths"));
    if (hw.size() != 2) fail(ErrorCode::schema_error, "params.half_widths: expected 2 entries");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    struct Row {
        std::string label, input, expected;
        std::function<RVec(cplx)> in, out;  // of z2
        double worst = 0.0;
    };
    std::vector<Row> rows{
        {"J(1,0)", "(1,0)", "(i,-2i conj z2)", [](cplx) { return detail::real4(1.0, 0.0); },
         [](cplx z2) { return detail::real4(kI, -2.0 * kI * std::conj(z2)); }},
        {"J(i,0)", "(i,0)", "(-1,-2 conj z2)", [](cplx) { return detail::real4(kI, 0.0); },
         [](cplx z2) { return detail::real4(-1.0, -2.0 * std::conj(z2)); }},
        {"J(0,1)", "(0,1)", "(0,i)", [](cplx) { return detail::real4(0.0, 1.0); }, [](cplx) { return detail::real4(0.0, kI); }},
        {"J(0,i)", "(0,i)", "(0,-1)", [](cplx) { return detail::real4(0.0, kI); }, [](cplx) { return detail::real4(0.0, -1.0); }},
        {"J(0,i) literal", "(0,i)", "(-1,0)", [](cplx) { return detail::real4(0.0, kI); },
         [](cplx) { return detail::real4(-1.0, 0.0); }},
        {"J(1,conj z2)", "(1,conj z2)", "(i,-i conj z2)", [](cplx z2) { return detail::real4(1.0, std::conj(z2)); },
         [](cplx z2) { return detail::real4(kI, -kI * std::conj(z2)); }},
        {"J(0,xi)", "(0,1+2i)", "(0,i(1+2i))", [](cplx) { return detail::real4(0.0, cplx(1, 2)); },
         [](cplx) { return detail::real4(0.0, kI * cplx(1, 2)); }},
    };

    OpOutput out;
    Table mt("matrix", {"point", "x1", "y1", "x2", "y2", "max_abs_error", "square_defect"}, {"point", {"max_abs_error"}, ""});
    double worst = 0.0;
    for (int k = 0; k < points; ++k) {
        CVec z(2);
        z << cplx(hw[0] * u(rng), hw[0] * u(rng)), cplx(hw[1] * u(rng), hw[1] * u(rng));
        const double x2 = z(1).real(), y2 = z(1).imag();
        const RMat j = q_to_j(builtin::example_part3_q(z));
        RMat printed(4, 4);
        printed << 0, -1, 0, 0, 1, 0, 0, 0, -2 * y2, -2 * x2, 0, -1, -2 * x2, 2 * y2, 1, 0;
        const double err = (j - printed).cwiseAbs().maxCoeff();
        const double sq = (j * j + RMat::Identity(4, 4)).cwiseAbs().maxCoeff();
        worst = std::max(worst, err);
        mt.add({(long long)k, z(0).real(), z(0).imag(), x2, y2, err, sq});
        for (Row& r : rows) r.worst = std::max(r.worst, (j * r.in(z(1)) - r.out(z(1))).cwiseAbs().maxCoeff());
    }
    Table at("action_rows", {"row", "input", "expected", "max_abs_error"});
    for (const Row& r : rows) at.add({r.label, r.input, r.expected, r.worst});
    out.tables = {mt, at};

    out.check("matrix-entries", Verdict::of(worst <= tol, "max entry error " + format_number(worst)), "max error " + format_number(worst));
    double rows13 = 0.0;
    for (std::size_t k = 0; k < 3; ++k) rows13 = std::max(rows13, rows[k].worst);
    out.check("action-rows-1-3", Verdict::of(rows13 <= tol, "max error " + format_number(rows13)), "max error " + format_number(rows13));
    out.check("action-row-4", Verdict::of(rows[3].worst <= tol, "max error " + format_number(rows[3].worst)),
              "checked against (0,-1); max error " + format_number(rows[3].worst));
    out.check("action-row-4-literal",
              Verdict::skipped("(-1,0) contradicts J^2 = -1 applied to J(0,1) = (0,i) and the matrix column; error " +
                               format_number(rows[4].worst)));
    out.check("preliminary-rows", Verdict::of(std::max(rows[5].worst, rows[6].worst) <= tol));
    out.notices.push_back("row J(0,i): the literal value (-1,0) is inconsistent with the matrix; verified against (0,-1)");
    return out;
}

/// Nijenhuis tensor on all pairs of real basis vectors, at step h and h/2.
inline OpOutput op_structure_nijenhuis(const json& p, std::uint64_t) {
    const StructureField s = structure_param(p.at("structure"));
    const int n = s.dimension();
    const auto hw = number_list(p.at("half_widths"));
    const JMatrixField jf = hw.empty() ? JMatrixField::from_structure(s)
                                       : JMatrixField::from_q(n, Box::centered(hw), [s](const CVec& z) { return s.q_at(z); });
    const double step = p.at("step").get<double>();
    const std::string expect = p.at("expect").get<std::string>();
    const double zero_tol = p.at("zero_tol").get<double>(), stab_tol = p.at("stability_tol").get<double>();
    if (expect != "zero" && expect != "nonzero" && expect != "report") fail(ErrorCode::schema_error, "params.expect: zero, nonzero or report");

    OpOutput out;
    Table pairs("nijenhuis", {"point", "k", "l", "norm_h", "norm_h2", "relative_change"});
    Table summary("nijenhuis_summary", {"point", "step", "norm", "relative_change"});
    double max_norm = 0.0, max_change = 0.0;
    const auto pts = p.at("points");
    if (!pts.is_array() || pts.empty()) fail(ErrorCode::schema_error, "params.points: expected a list of points");
    for (std::size_t ip = 0; ip < pts.size(); ++ip) {
        const RVec x = to_real(cvec_param(pts[ip], n, "points"));
        double sq = 0, sq_half = 0, sq_diff = 0, h_used = 0;
        for (int k = 0; k < 2 * n; ++k) {
            for (int l = k + 1; l < 2 * n; ++l) {
                const NijenhuisResult r = nijenhuis(jf, x, real_basis(n, k), real_basis(n, l), step);
                h_used = r.step;
                pairs.add({count_of(ip), (long long)k, (long long)l, r.value.norm(), r.value_half.norm(), r.relative_change});
                sq += r.value.squaredNorm();
                sq_half += r.value_half.squaredNorm();
                sq_diff += (r.value - r.value_half).squaredNorm();
            }
        }
        const double norm = std::sqrt(sq_half);
        const double change = sq_half > 0 ? std::sqrt(sq_diff / sq_half) : std::sqrt(sq_diff);
        summary.add({count_of(ip), h_used, norm, change});
        max_norm = std::max(max_norm, norm);
        max_change = std::max(max_change, change);
    }
    out.tables = {pairs, summary};
    const std::string detail = "max |N| " + format_number(max_norm) + ", max relative change " + format_number(max_change);
    if (expect == "zero") {
        out.check("nijenhuis-zero", Verdict::of(max_norm <= zero_tol, detail), detail);
    } else if (expect == "nonzero") {
        out.check("nijenhuis-nonzero", Verdict::of(max_norm > zero_tol, detail), detail);
        out.check("step-halving-stable", Verdict::of(max_change <= stab_tol, detail), detail);
    } else {
        out.check("nijenhuis", Verdict::skipped("report only"), detail);
    }
    return out;
}

/// Normalizing coordinate change near the axis, its checks, and the follow-up prop3 certification.
inline OpOutput op_structure_normalize(const json& p, std::uint64_t seed) {
    const StructureField s = structure_param(p.at("structure"));
    NormalizationMap::Options mo;
    mo.axis_samples = p.at("axis_samples").get<int>();
    const NormalizationMap m = build_normalization(s, mo);
    const StructureField ps = pushforward_structure(m);

    OpOutput out;
    const double eq_res = m.max_equation_residual();
    Table eq("normalization_equations", {"max_obstruction", "max_equation_residual"});
    eq.add({m.max_obstruction(), eq_res});
    const double residual_tol = p.at("residual_tol").get<double>();
    out.check("equations-solved", Verdict::of(eq_res <= residual_tol, "residual " + format_number(eq_res)), "residual " + format_number(eq_res));

    const double grad = axis_gradient_sup(ps);
    const double grad_tol = p.at("gradient_tol").get<double>();
    Table ax("normalized_axis", {"structure", "sup_q_and_grad_on_axis", "before"});
    ax.add({ps.name(), grad, axis_gradient_sup(s)});
    out.check("axis-gradient", Verdict::of(grad <= grad_tol, "sup " + format_number(grad)), "sup |Q|, |grad Q| on the axis " + format_number(grad));

    const cplx z1 = cplx_param(p.at("z1"), "z1");
    const int angles = p.at("angles").get<int>();
    Table decay("defect_decay", {"rho", "max_defect", "max_alpha"}, {"rho", {"max_defect", "max_alpha"}, ""});
    std::vector<double> rhos, defects;
    for (double rho : number_list(p.at("radii"))) {
        double d = 0.0, a = 0.0;
        for (int k = 0; k < angles; ++k) {
            CVec z = CVec::Zero(s.dimension());
            z(0) = z1;
            z(1) = std::polar(rho, 2 * kPi * (k + 0.5) / angles);
            d = std::max(d, m.defect(z).cwiseAbs().maxCoeff());
            a = std::max(a, zeroone_frame(s, z).cwiseAbs().maxCoeff());
        }
        rhos.push_back(rho);
        defects.push_back(d);
        decay.add({rho, d, a});
    }
    const double slope = detail::loglog_slope(rhos, defects);
    const double target = p.at("slope_target").get<double>(), slope_tol = p.at("slope_tol").get<double>();
    Table fit("defect_slope", {"slope", "target", "tolerance"});
    fit.add({slope, target, slope_tol});
    out.check("defect-decay-slope", Verdict::of(std::abs(slope - target) <= slope_tol, "slope " + format_number(slope)),
              "log-log slope " + format_number(slope));
    out.tables = {eq, ax, decay, fit};

    if (p.at("prop3").get<bool>()) {
        JetSampler js;
        js.seed = static_cast<unsigned>(seed);
        const auto jets = js.sample(ps.dimension(), p.at("prop3_jets").get<int>());
        CertifyOptions co;
        co.solver.grid_n = p.at("prop3_grid").get<int>();
        const Prop3Report r = prop3_certify(ps, jets, co, p.at("prop3_k_start").get<double>());
        Table sch("prop3_schedule", {"K", "violations"}, {"K", {"violations"}, ""});
        for (const auto& [k, bad] : r.schedule) sch.add({k, count_of(bad)});
        Table sum("prop3_summary", {"jets", "found", "K", "threshold_radius", "fitted_c", "fitted_m"});
        sum.add({count_of(r.jets), (long long)r.found, r.k, r.threshold_radius, r.fitted_c, r.fitted_m});
        out.tables.push_back(sch);
        out.tables.push_back(sum);
        out.check("prop3-finite-K", Verdict::of(r.found, "no K up to the cap"), "K = " + format_number(r.k) + " on " + std::to_string(r.jets) + " jets");
    }
    return out;
}

}  // namespace aclab::harness
