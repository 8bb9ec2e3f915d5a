#pragma once

#include <random>

#include "aclab/counterexample/e4.hpp"
#include "aclab/counterexample/lelong.hpp"
#include "aclab/harness/ops_psh.hpp"

namespace aclab::harness {

inline CandidateFunction c2_candidate(const json& p) {
    return candidate_by_name(p.at("candidate").get<std::string>(), 2, 0.0, 0.0, p.at("expression").get<std::string>());
}

/// Aligned jets (1, t), |t| = K2 |z2| |log|z2||, against the threshold 1 - (K2/8)|log|z2||.
inline OpOutput op_counterexample_attack(const json& p, std::uint64_t) {
    const CandidateFunction lambda = c2_candidate(p);
    AttackSpec spec;
    spec.k2 = p.at("k2").get<double>();
    spec.angles = p.at("angles").get<int>();
    spec.r_hi = p.at("r_hi").get<double>();
    spec.r_lo = p.at("r_lo").get<double>();
    spec.per_decade = p.at("per_decade").get<int>();
    spec.z1 = cplx_param(p.at("z1"), "z1");
    OpOutput out;
    const std::string mask_file = p.at("mask").get<std::string>();
    if (!mask_file.empty()) {
        // z2 is looked up at its nearest node; radii below the grid resolution are admitted, the set being fat there.
        auto mask = std::make_shared<FatSet>(fat_set_from_json(read_json_file(mask_file)));
        const double floor_r = 16 * mask->grid.step();
        spec.admissible = [mask, floor_r](cplx z2) {
            const PlaneGrid& g = mask->grid;
            if (std::abs(z2) < floor_r) return true;
            const int i = static_cast<int>(std::lround((z2.real() + g.half_width()) / g.step()));
            const int j = static_cast<int>(std::lround((z2.imag() + g.half_width()) / g.step()));
            if (i < 0 || j < 0 || i >= g.size() || j >= g.size()) return false;
            return mask->mask[g.index(i, j)] != 0;
        };
        out.notices.push_back("z2 restricted to " + mask_file + "; radii below " + format_number(floor_r) + " are not resolved by the mask");
    }
    const std::vector<AttackRow> rows = run_attack(lambda, spec);
    const bool closed_known = p.at("candidate") == "log_abs_z2";
    const double closed_tol = p.at("closed_form_tol").get<double>();

    Table t("attack", {"r", "theta", "arg_t", "A", "B", "C1", "C2", "total", "threshold", "closed_form", "success", "samples", "masked", "failures"},
            {"r", {"total", "threshold"}, ""});
    Table angles("attack_angles", {"r", "theta", "total"}, {"theta", {"total"}, "r"});
    bool all_success = true, negative = true;
    double closed_err = 0.0;
    for (const AttackRow& r : rows) {
        const double closed = 1 - spec.k2 * std::abs(std::log(r.r));
        const double total = r.best.total();
        t.add({r.r, r.theta, r.arg_t, r.best.a, r.best.b, r.best.c1, r.best.c2, total, r.threshold, closed_known ? closed : std::nan(""),
               (long long)r.success, count_of(r.samples), count_of(r.masked), count_of(r.failures)});
        for (const auto& [theta, tot] : r.per_angle) angles.add({r.r, theta, tot});
        all_success = all_success && r.success;
        if (r.r < std::exp(-1.0 / 8) && !(total < 0)) negative = false;
        closed_err = std::max(closed_err, std::abs(total - closed));
    }
    out.tables = {t, angles};
    out.check("attack-success", Verdict::of(all_success, "some decade stays above the threshold"),
              std::to_string(rows.size()) + " decades");
    if (closed_known) {
        out.check("closed-form", Verdict::of(closed_err <= closed_tol, "max deviation " + format_number(closed_err)),
                  "max |total - (1 - K2 |log r|)| = " + format_number(closed_err));
    } else {
        out.check("closed-form", Verdict::skipped("closed form known for log|z2| only"));
    }
    out.check("negative-below-threshold", Verdict::of(negative, "a total is nonnegative below exp(-1/8)"));
    return out;
}

/// The attack jets through the disc solver: E2 at the disc center against the E4 decomposition.
inline OpOutput op_counterexample_crosscheck(const json& p, std::uint64_t seed) {
    const CandidateFunction lambda = c2_candidate(p);
    const double k2 = p.at("k2").get<double>(), r_lo = p.at("r_lo").get<double>(), r_hi = p.at("r_hi").get<double>();
    const double tol = p.at("agreement_tol").get<double>();
    const SolverOptions so{p.at("grid").get<int>(), p.at("tol").get<double>(), 100};
    const double radius = p.at("radius").get<double>();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Table t("crosscheck", {"case", "r", "theta", "abs_t", "e4_total", "e2_total", "difference", "relative_difference", "iterations"},
            {"r", {"relative_difference"}, ""});
    double worst = 0.0;
    const int cases = p.at("cases").get<int>();
    for (int c = 0; c < cases; ++c) {
        const double r = r_lo * std::pow(r_hi / r_lo, u(rng));
        const double theta = 2 * kPi * u(rng);
        const cplx z1 = 0.1 * std::sqrt(u(rng)) * std::polar(1.0, 2 * kPi * u(rng));
        const cplx z2 = std::polar(r, theta);
        CVec z(2);
        z << z1, z2;
        const CandidateJet l = lambda.jet(z);
        const cplx align = l.hzzbar(1, 0) + l.hzz(1, 1) * std::conj(z2);
        const double ta = k2 * r * std::abs(std::log(r));
        const cplx tt = std::abs(align) > 0 ? -ta * std::conj(align) / std::abs(align) : cplx(ta);
        const E4CrossCheck x = e4_disc_crosscheck(lambda, z1, z2, tt, radius, so);
        const double rel = x.difference() / std::max(1.0, std::abs(x.e4.total()));
        worst = std::max(worst, rel);
        t.add({(long long)c, r, theta, ta, x.e4.total(), x.e2.total(), x.difference(), rel, (long long)x.iterations});
    }
    OpOutput out;
    out.tables = {t};
    out.check("e2-e4-agreement", Verdict::of(worst <= tol, "max relative difference " + format_number(worst)),
              std::to_string(cases) + " jets, max relative difference " + format_number(worst));
    return out;
}

/// Circle-mean fit lambda = a log|z2| + mu and the decade sups of the decay hypotheses on mu.
inline OpOutput op_counterexample_lelong(const json& p, std::uint64_t) {
    const CandidateFunction lambda = c2_candidate(p);
    const cplx z1 = cplx_param(p.at("z1"), "z1");
    const int angles = p.at("angles").get<int>();
    OpOutput out;
    LelongDecomposition d;
    try {
        d = lelong_fit(lambda, z1, log_radii(p.at("fit_r_lo").get<double>(), p.at("fit_r_hi").get<double>(), p.at("fit_count").get<int>()),
                       angles);
    } catch (const LabError& e) {
        if (e.code() != ErrorCode::not_subharmonic) throw;
        out.check("subharmonic-in-z2", Verdict::fail(e.what()));
        return out;
    }
    out.check("subharmonic-in-z2", Verdict::pass(), "circle means nondecreasing in r");
    Table means("circle_means", {"r", "mean", "fit"}, {"r", {"mean", "fit"}, ""});
    for (std::size_t k = 0; k < d.radii.size(); ++k) means.add({d.radii[k], d.means[k], d.a * std::log(d.radii[k]) + d.intercept});
    Table fit("lelong_fit", {"a", "intercept", "rms_residual"});
    fit.add({d.a, d.intercept, d.rms_residual});
    if (p.at("expected_a").is_number()) {
        const double a0 = p.at("expected_a").get<double>(), tol = p.at("a_tol").get<double>();
        out.check("lelong-number", Verdict::of(std::abs(d.a - a0) <= tol, "a = " + format_number(d.a)), "a = " + format_number(d.a));
    } else {
        out.check("lelong-number", Verdict::skipped("no expected value given"), "a = " + format_number(d.a));
    }
    const HReport h = check_H(lambda, *d.mu, z1, p.at("h_r_hi").get<double>(), p.at("h_r_lo").get<double>(), angles,
                              p.at("per_decade").get<int>(), p.at("h_tol").get<double>());
    Table ht("H_decades", {"r_hi", "sup_z2sq_mu_z2z2", "sup_z2_mu_z2", "sup_lambda_z1z1bar_over_log", "failures"},
             {"r_hi", {"sup_z2sq_mu_z2z2", "sup_z2_mu_z2"}, ""});
    for (const HDecade& x : h.decades) ht.add({x.r_hi, x.second, x.first, x.h_plus, count_of(x.failures)});
    out.tables = {means, fit, ht};
    out.check("H-hypotheses", Verdict::of(h.satisfied, h.verdict), h.verdict);
    return out;
}

}  // namespace aclab::harness
