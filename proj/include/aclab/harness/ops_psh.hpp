#pragma once

#include <random>

#include "aclab/harness/operation.hpp"
#include "aclab/psh/certify.hpp"
#include "aclab/psh/hessian.hpp"
#include "aclab/psh/model.hpp"
#include "aclab/psh/prop1.hpp"
#include "aclab/structure/normalization.hpp"

namespace aclab::harness {

/// Named candidate on C^n: prop1 / prop3 (weight k), chirka (weight a), loglog, log_norm, log_abs_z2, lambda0, expr.
inline CandidateFunction candidate_by_name(const std::string& name, int n, double k, double a, const std::string& expression) {
    if (name == "prop1") return candidates::prop1(n, k);
    if (name == "prop3") return candidates::prop3(n, k);
    if (name == "chirka") return candidates::chirka(n, a);
    if (name == "loglog") return candidates::loglog(n);
    if (name == "log_norm") return candidates::log_norm(n);
    if (name == "log_abs_z2") return candidates::log_abs(n, 1);
    if (name == "lambda0") return candidates::lambda0();
    if (name == "expr") {
        if (expression.empty()) fail(ErrorCode::schema_error, "params.expression: required when candidate is expr");
        return candidates::from_expression(expression, n);
    }
    fail(ErrorCode::schema_error, "params.candidate: unknown candidate '" + name + "'");
}

/// Jets from a CSV file with columns c1_re, c1_im, ..., v1_re, v1_im, ..., radius (a header line is skipped).
inline std::vector<JetSpec> jets_from_csv(const std::string& path, int n) {
    const std::size_t cols = static_cast<std::size_t>(4 * n + 1);
    std::vector<JetSpec> jets;
    for (const auto& x : read_numeric_csv(path, cols, cols)) {
        JetSpec j{CVec(n), CVec(n), x.back()};
        for (int c = 0; c < n; ++c) {
            j.center(c) = cplx(x[static_cast<std::size_t>(2 * c)], x[static_cast<std::size_t>(2 * c + 1)]);
            j.derivative(c) = cplx(x[static_cast<std::size_t>(2 * n + 2 * c)], x[static_cast<std::size_t>(2 * n + 2 * c + 1)]);
        }
        jets.push_back(j);
    }
    return jets;
}

inline JetSampler sampler_param(const json& p, std::uint64_t seed) {
    JetSampler js;
    js.z1_radius = p.at("z1_radius").get<double>();
    js.r_lo = p.at("r_lo").get<double>();
    js.r_hi = p.at("r_hi").get<double>();
    js.radius = p.at("radius").get<double>();
    js.seed = static_cast<unsigned>(seed);
    return js;
}

inline OpOutput op_psh_laplacians(const json& p, std::uint64_t) {
    const double r_lo = p.at("r_lo").get<double>(), r_hi = p.at("r_hi").get<double>(), tol = p.at("rel_tol").get<double>();
    const int count = p.at("count").get<int>();
    const double angle = p.at("angle").get<double>(), step = p.at("rel_step").get<double>();
    Table t("laplacians", {"r", "loglog_closed", "loglog_fd", "loglog_rel_error", "abs_closed", "abs_fd", "abs_rel_error"},
            {"r", {"loglog_rel_error", "abs_rel_error"}, ""});
    double worst = 0.0;
    for (int k = 0; k < count; ++k) {
        const double r = count == 1 ? r_lo : r_lo * std::pow(r_hi / r_lo, double(k) / (count - 1));
        const cplx z = std::polar(r, angle);
        const ModelLaplacians a = model_laplacians(z), b = model_laplacians_fd(z, step);
        const double e1 = std::abs(b.loglog - a.loglog) / a.loglog, e2 = std::abs(b.abs - a.abs) / a.abs;
        worst = std::max({worst, e1, e2});
        t.add({r, a.loglog, b.loglog, e1, a.abs, b.abs, e2});
    }
    OpOutput out;
    out.tables = {t};
    out.check("fd-agreement", Verdict::of(worst <= tol, "max relative error " + format_number(worst)), "max relative error " + format_number(worst));
    return out;
}

inline OpOutput op_psh_hessian(const json& p, std::uint64_t seed) {
    const int samples = p.at("samples").get<int>(), max_m = p.at("max_transverse").get<int>();
    const double r_lo = p.at("r_lo").get<double>(), r_hi = p.at("r_hi").get<double>();
    if (max_m < 1) fail(ErrorCode::schema_error, "params.max_transverse: must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> nd;
    struct Acc {
        long long n = 0, failures = 0;
        double min_ratio = std::numeric_limits<double>::infinity(), max_ratio = 0.0;
    };
    std::vector<Acc> acc(static_cast<std::size_t>(max_m));
    for (int s = 0; s < samples; ++s) {
        const int m = 1 + s % max_m;
        CVec zp(m);
        for (int k = 0; k < m; ++k) zp(k) = cplx(nd(rng), nd(rng));
        zp *= r_lo * std::pow(r_hi / r_lo, u(rng)) / zp.norm();
        const LLHessianBound b = ll_hessian_bound(zp);
        Acc& a = acc[static_cast<std::size_t>(m - 1)];
        ++a.n;
        a.failures += !b.holds;
        a.min_ratio = std::min(a.min_ratio, b.min_eig / b.bound);
        a.max_ratio = std::max(a.max_ratio, b.max_eig / b.bound);
    }
    Table t("ll_hessian", {"transverse_dim", "samples", "failures", "min_eig_over_bound", "max_eig_over_bound"});
    long long failures = 0;
    for (int m = 1; m <= max_m; ++m) {
        const Acc& a = acc[static_cast<std::size_t>(m - 1)];
        t.add({(long long)m, a.n, a.failures, a.min_ratio, a.max_ratio});
        failures += a.failures;
    }
    OpOutput out;
    out.tables = {t};
    out.check("ll-hessian-bound", Verdict::of(failures == 0, std::to_string(failures) + " failures"), std::to_string(samples) + " samples");
    return out;
}

/// Structure constants C, K and the one-eighth slack inequality on an (eps, tau, r) grid.
inline OpOutput op_psh_prop1(const json& p, std::uint64_t) {
    const StructureField s = structure_param(p.at("structure"));
    const StructureConstants sc = structure_constants(s, s.domain().shrunk(0.5), p.at("levels").get<int>());
    const double c = p.at("c") == "auto" ? sc.c : p.at("c").get<double>();
    const double k = p.at("k") == "auto" ? 4 * c * c + 1 : p.at("k").get<double>();
    const Prop1Grid grid = Prop1Grid::uniform(p.at("n_eps").get<int>(), p.at("n_tau").get<int>(), p.at("n_r").get<int>(),
                                              p.at("r_lo").get<double>(), p.at("r_hi").get<double>());
    const Prop1Certificate cert = certify_prop1_inequality(c, k, grid);

    OpOutput out;
    Table ct("constants", {"level", "grad_sup", "hess_sup"});
    for (std::size_t l = 0; l < sc.grad_by_level.size(); ++l) ct.add({count_of(l), sc.grad_by_level[l], sc.hess_by_level[l]});
    Table cert_t("certificate", {"C", "K", "r_max", "points", "min_full", "min_eighth", "full_failures", "eighth_failures", "form_disagreements"});
    cert_t.add({c, k, cert.r_max, count_of(cert.points), cert.min_full, cert.min_eighth, count_of(cert.full_failures),
                count_of(cert.eighth_failures), count_of(cert.form_disagreements)});
    // Per radius: the smallest slack relative to the scale tau^2 / r^2 + K eps^2 of the grid point.
    Table by_r("slack_by_radius", {"r", "min_relative_eighth_slack"}, {"r", {"min_relative_eighth_slack"}, ""});
    for (double r : grid.r) {
        if (r > cert.r_max) continue;
        double worst = std::numeric_limits<double>::infinity();
        for (double e : grid.eps)
            for (double t : grid.tau) {
                const double scale = t * t / (r * r) + k * e * e;
                if (scale > 0) worst = std::min(worst, prop1_eighth_slack(c, k, r, e, t) / scale);
            }
        by_r.add({r, worst});
    }
    out.tables = {ct, cert_t, by_r};
    const std::string d = std::to_string(cert.points) + " points, C = " + format_number(c) + ", K = " + format_number(k);
    out.check("eighth-slack-inequality", Verdict::of(cert.holds(), std::to_string(cert.eighth_failures) + " failures"), d);
    out.check("form-agreement", Verdict::of(cert.form_disagreements == 0, std::to_string(cert.form_disagreements) + " disagreements"));
    return out;
}

inline Table disc_table(const PshReport& rep, const std::string& name) {
    Table t(name, {"jet", "transverse_radius", "z1_speed", "transverse_speed", "I", "II", "III", "total", "verdict", "residual"},
            {"transverse_radius", {"total"}, ""});
    for (std::size_t k = 0; k < rep.discs.size(); ++k) {
        const DiscCheck& d = rep.discs[k];
        const int n = static_cast<int>(d.jet.center.size());
        const double r = std::sqrt(transverse_norm_sq(d.jet.center));
        const double vt = n > 1 ? d.jet.derivative.tail(n - 1).norm() : 0.0;
        const bool ok = d.verdict != DiscVerdict::solver_error;
        const double nan = std::nan("");
        t.add({count_of(k), r, std::abs(d.jet.derivative(0)), vt, ok ? d.terms["I"] : nan, ok ? d.terms["II"] : nan,
               ok ? d.terms["III"] : nan, ok ? d.terms.total() : nan, std::string(to_string(d.verdict)), d.residual});
    }
    return t;
}

/// Sign of the disc Laplacian of a candidate over a family of solved discs.
inline OpOutput op_psh_certify(const json& p, std::uint64_t seed) {
    const StructureField s = structure_param(p.at("structure"));
    const int n = s.dimension();
    double k = 0.0;
    if (p.at("k") == "auto") {
        const StructureConstants sc = structure_constants(s, s.domain().shrunk(0.5));
        k = sc.k;
    } else {
        k = p.at("k").get<double>();
    }
    const CandidateFunction lambda =
        candidate_by_name(p.at("candidate").get<std::string>(), n, k, p.at("a").get<double>(), p.at("expression").get<std::string>());
    const std::string file = p.at("jets_file").get<std::string>();
    const std::vector<JetSpec> jets = file.empty() ? sampler_param(p, seed).sample(n, p.at("jets").get<int>()) : jets_from_csv(file, n);
    CertifyOptions co;
    co.solver.grid_n = p.at("grid").get<int>();
    co.solver.tol = p.at("tol").get<double>();
    const PshReport rep = certify_psh_on_discs(lambda, s, jets, co);

    OpOutput out;
    Table sum("summary", {"candidate", "K", "jets", "violations", "solver_errors", "min_total", "slack"});
    sum.add({rep.candidate, k, count_of(rep.discs.size()), count_of(rep.violations), count_of(rep.errors), rep.min_total, rep.slack});
    out.tables = {sum, disc_table(rep, "discs")};
    const std::string expect = p.at("expect").get<std::string>();
    const std::string d = std::to_string(rep.violations) + " violations, " + std::to_string(rep.errors) + " solver errors over " +
                          std::to_string(rep.discs.size()) + " discs";
    if (expect == "psh") {
        out.check("no-violations", Verdict::of(rep.certified(), d), d);
    } else if (expect == "violations") {
        out.check("violations-found", Verdict::of(rep.violations > 0, d), d);
    } else if (expect == "report") {
        out.check("no-violations", Verdict::skipped("report mode, no expectation given"), d);
    } else {
        fail(ErrorCode::schema_error, "params.expect: psh, violations or report");
    }
    for (const DiscCheck& c : rep.discs)
        if (c.verdict == DiscVerdict::solver_error) out.notices.push_back("solver error: " + c.message);
    return out;
}

/// Smallest K of a doubling schedule making log|Z'| + K|Z|^2 nonnegative on all sampled discs.
inline OpOutput op_psh_prop3(const json& p, std::uint64_t seed) {
    const StructureField base = structure_param(p.at("structure"));
    const StructureField s = p.at("normalize").get<bool>() ? pushforward_structure(build_normalization(base)) : base;
    const auto jets = sampler_param(p, seed).sample(s.dimension(), p.at("jets").get<int>());
    CertifyOptions co;
    co.solver.grid_n = p.at("grid").get<int>();
    const Prop3Report r = prop3_certify(s, jets, co, p.at("k_start").get<double>());
    OpOutput out;
    Table sch("prop3_schedule", {"K", "violations"}, {"K", {"violations"}, ""});
    for (const auto& [kk, bad] : r.schedule) sch.add({kk, count_of(bad)});
    Table sum("prop3_summary", {"structure", "jets", "found", "K", "threshold_radius", "fitted_c", "fitted_m"});
    sum.add({s.name(), count_of(r.jets), (long long)r.found, r.k, r.threshold_radius, r.fitted_c, r.fitted_m});
    out.tables = {sum, sch};
    out.check("prop3-finite-K", Verdict::of(r.found, "no K up to the cap"), "K = " + format_number(r.k));
    return out;
}

}  // namespace aclab::harness
