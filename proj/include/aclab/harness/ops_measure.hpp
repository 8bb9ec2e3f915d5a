#pragma once

#include "aclab/harness/operation.hpp"
#include "aclab/measure/lemma_a1.hpp"
#include "aclab/measure/lemma_a2.hpp"
#include "aclab/measure/lemma_a3.hpp"
#include "aclab/measure/remark1.hpp"

namespace aclab::harness {

/// Fat witness sets built from (1/|z|) * nu for each named measure.
inline OpOutput op_measure_a1(const json& p, std::uint64_t) {
    const PlaneGrid g(p.at("grid").get<int>(), p.at("half_width").get<double>());
    const std::string schedule = p.at("schedule").get<std::string>();
    if (schedule != "adaptive" && schedule != "dyadic") fail(ErrorCode::schema_error, "params.schedule: adaptive or dyadic");
    const double density = p.at("density").get<double>();
    const int smallest = p.at("smallest").get<int>();
    Table wt("witness_annuli", {"measure", "j", "r_outer", "r_inner", "sup_z_conv", "kept_fraction"});
    Table dt("density", {"measure", "r", "density"}, {"r", {"density"}, "measure"});
    Table ft("far_field", {"measure", "points", "violations", "worst_ratio"});
    OpOutput out;
    const bool export_mask = p.at("export_mask").get<bool>();
    for (const std::string& source : p.at("measures").get<std::vector<std::string>>()) {
        const GridMeasure nu = measure_param(source, g);
        const std::string& name = nu.name;
        const std::vector<double> conv = conv_inv_abs(nu);
        const std::vector<double> radii = schedule == "adaptive" ? adaptive_schedule(conv, g, p.at("target").get<double>()) : dyadic_schedule(g);
        const FatWitness w = build_fat_witness(nu, radii);
        for (const WitnessAnnulus& a : w.annuli) wt.add({name, (long long)a.j, a.r_outer, a.r_inner, a.sup_z_conv, a.kept_fraction});
        for (const DensityRow& r : w.profile) dt.add({name, r.r, r.density});
        const bool fat = is_fat(w.set, density, smallest);
        if (export_mask) out.files.emplace_back("fat_witness_" + name + ".json", fat_set_to_json(w.set).dump() + "\n");
        std::string d = "densities at the smallest radii:";
        for (int k = 0; k < smallest && k < static_cast<int>(w.profile.size()); ++k) d += " " + format_number(w.profile[static_cast<std::size_t>(k)].density);
        out.check("fat-" + name, Verdict::of(fat, d), d);
        const FarFieldCheck ff = lemma_a1_far_field(nu, p.at("far_samples").get<int>());
        ft.add({name, count_of(ff.points), count_of(ff.violations), ff.worst_ratio});
        out.check("far-field-" + name, Verdict::of(ff.violations == 0, std::to_string(ff.violations) + " violations"),
                  "worst ratio " + format_number(ff.worst_ratio));
    }
    out.tables = {wt, dt, ft};
    return out;
}

/// Distribution function of the principal-value transform and the dyadic level-set constants.
inline OpOutput op_measure_a2(const json& p, std::uint64_t) {
    const PlaneGrid g(p.at("grid").get<int>(), p.at("half_width").get<double>());
    const double spread_max = p.at("spread_max").get<double>();
    Table wl("weak_l1", {"measure", "t", "level_set_area", "product"}, {"t", {"product"}, "measure"});
    Table lv("dyadic_levels", {"measure", "k", "area", "constant", "resolved"});
    Table sp("weak_l1_summary", {"measure", "c_emp", "min_product", "spread"});
    Table e1("e1_density", {"measure", "r", "density"}, {"r", {"density"}, "measure"});
    OpOutput out;
    for (const std::string& source : p.at("measures").get<std::vector<std::string>>()) {
        const GridMeasure psi = measure_param(source, g);
        const std::string& name = psi.name;
        const std::vector<cplx> tp = pv_conv_z2(psi);
        const WeakL1Table tab = weak_l1_table(tp, psi, p.at("t_lo").get<double>(), p.at("t_hi").get<double>(), p.at("levels").get<int>());
        for (const WeakL1Row& r : tab.rows) wl.add({name, r.t, r.measure, r.product});
        sp.add({name, tab.c_emp, tab.min_product, tab.spread()});
        for (const LevelRow& r : lemma_a2_levels(tp, psi, p.at("k_lo").get<int>(), p.at("k_hi").get<int>()))
            lv.add({name, (long long)r.k, r.area, r.constant, (long long)r.resolved});
        for (const DensityRow& r : density_profile(lemma_a2_set(tp, g), resolvable_dyadic_radii(g))) e1.add({name, r.r, r.density});
        out.check("weak-l1-" + name, Verdict::of(tab.spread() < spread_max, "spread " + format_number(tab.spread())),
                  "max / min of t m(t) = " + format_number(tab.spread()));
    }
    out.tables = {wl, sp, lv, e1};
    return out;
}

/// Annulus integrals of 1/(|z|^2 |log|z||) over F and the logarithmic growth of their partial sums.
inline OpOutput op_measure_a3(const json& p, std::uint64_t) {
    const std::string region = p.at("region").get<std::string>();
    PolarRegion f;
    if (region == "half_plane") {
        f.member = [](cplx z) { return z.real() > 0; };
    } else if (region != "everything") {
        fail(ErrorCode::schema_error, "params.region: everything or half_plane");
    }
    f.angles = p.at("angles").get<int>();
    f.radial_nodes = p.at("radial_nodes").get<int>();
    const A3Table t = lemma_a3_divergence(lemma_a3_weight, p.at("delta").get<double>(), f, p.at("k_max").get<int>());
    const double factor = p.at("growth_factor").get<double>(), tol = p.at("annulus_tol").get<double>();
    const bool closed = region == "everything";
    Table rows("a3_annuli", {"k", "r_outer", "density", "integral", "closed_form", "rel_error", "lower_bound", "partial_sum", "growth_bound"},
               {"k", {"partial_sum", "growth_bound"}, ""});
    double worst = 0.0;
    bool growth = !t.rows.empty();
    for (const A3Row& r : t.rows) {
        const double cf = 2 * kPi * std::log(1 + 1.0 / r.k);
        const double rel = std::abs(r.integral / cf - 1);
        const double bound = factor * t.constant() * std::log(double(r.k));
        if (closed) worst = std::max(worst, rel);
        growth = growth && r.partial_sum >= bound;
        rows.add({(long long)r.k, r.r_outer, r.density, r.integral, closed ? cf : std::nan(""), closed ? rel : std::nan(""), r.lower_bound,
                  r.partial_sum, bound});
    }
    Table sum("a3_summary", {"delta", "eta", "constant", "annuli", "growth_rate", "truncated"});
    sum.add({t.delta, t.eta, t.constant(), count_of(t.rows.size()), t.growth_rate(), (long long)t.truncated});
    OpOutput out;
    out.tables = {rows, sum};
    if (t.truncated) out.notices.push_back(t.note);
    if (closed) {
        out.check("annulus-closed-form", Verdict::of(worst <= tol, "max relative error " + format_number(worst)),
                  "max relative error " + format_number(worst));
    } else {
        out.check("annulus-closed-form", Verdict::skipped("closed form applies to F = everything"));
    }
    out.check("partial-sum-growth", Verdict::of(growth, "S_K below the bound"),
              "S_K / log K = " + format_number(t.growth_rate()) + ", constant " + format_number(t.constant()));
    return out;
}

/// Annulus masses of the integrable density with unbounded |z|^2 |log|z|| rho.
inline OpOutput op_measure_remark1(const json& p, std::uint64_t) {
    const auto n = p.at("n").get<std::vector<long>>();
    const Remark1Report rep = remark1_density(n);
    const double tol = p.at("mass_tol").get<double>();
    Table t("remark1_annuli", {"n", "r_inner", "r_outer", "mass_closed", "mass_quadrature", "mass_asymptotic", "rel_error", "sup_closed",
                               "sup_sampled", "partial_mass", "tail_bound", "avoiding_density"},
            {"n", {"mass_quadrature", "mass_closed", "sup_sampled"}, ""});
    double worst = 0.0;
    for (const Remark1Annulus& a : rep.annuli) {
        const double rel = std::abs(a.mass_quadrature / a.mass_closed - 1);
        worst = std::max(worst, rel);
        t.add({(long long)a.n, a.r_inner, a.r_outer, a.mass_closed, a.mass_quadrature, a.mass_asymptotic, rel, a.sup_closed, a.sup_sampled,
               a.partial_mass, a.tail_bound, a.avoiding_density});
    }
    OpOutput out;
    out.check("annulus-mass", Verdict::of(worst <= tol, "max relative error " + format_number(worst)), "max relative error " + format_number(worst));
    bool increasing = true;
    for (std::size_t k = 1; k < rep.annuli.size(); ++k) increasing = increasing && rep.annuli[k].sup_sampled > rep.annuli[k - 1].sup_sampled;
    out.check("weight-unbounded", Verdict::of(increasing, "sup |z|^2 |log|z|| rho not increasing along the annuli"));

    const int grid = p.at("grid").get<int>();
    Table d("avoiding_density", {"n", "r", "density"}, {"r", {"density"}, ""});
    if (grid > 0) {
        const PlaneGrid g(grid, 1.0);
        const FatSet e = remark1_avoiding_set(n, g);
        for (long nj : n) {
            const double r = std::ldexp(1.0, -static_cast<int>(nj));
            if (r < 16 * g.step()) continue;
            for (const DensityRow& row : density_profile(e, {r})) d.add({(long long)nj, row.r, row.density});
        }
    }
    out.tables = {t, d};
    return out;
}

}  // namespace aclab::harness
