#pragma once

// Registry of "module.operation" entries with their parameter schemas.

#include "aclab/harness/ops_counterexample.hpp"
#include "aclab/harness/ops_disc.hpp"
#include "aclab/harness/ops_measure.hpp"
#include "aclab/harness/ops_psh.hpp"
#include "aclab/harness/ops_structure.hpp"

namespace aclab::harness {

namespace detail {

using T = ParamType;

inline Schema sampler_schema() {
    return {{"z1_radius", T::number, 0.2, "|z1| of the disc centers"},
            {"r_lo", T::number, 1e-4, "smallest |Z'| of the centers"},
            {"r_hi", T::number, 1e-2, "largest |Z'| of the centers"},
            {"radius", T::number, 0.05, "disc radius"}};
}

inline Schema concat(Schema a, const Schema& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline std::vector<Operation> make_operations() {
    std::vector<Operation> ops;
    ops.push_back({"structure", "matrix", "real matrix of the example structure against its closed form",
                   {{"points", T::integer, 100, "random points"},
                    {"half_widths", T::number_list, json::array({4.0, 0.35}), "sampling box per complex coordinate"},
                    {"tol", T::number, 1e-12, "entry tolerance"}},
                   op_structure_matrix});
    ops.push_back({"structure", "nijenhuis", "Nijenhuis tensor with a step-halving check",
                   {{"structure", T::structure, "standard", "structure"},
                    {"points", T::any, json::array({json::array({0.1, -0.2, 0.05, 0.1})}), "points as 2n reals"},
                    {"half_widths", T::number_list, json::array(), "evaluation box; empty means the structure's own"},
                    {"step", T::number, 0.0, "finite-difference step, 0 for 1e-4 of the box"},
                    {"expect", T::string, "report", "zero, nonzero or report"},
                    {"zero_tol", T::number, 1e-10, "zero threshold"},
                    {"stability_tol", T::number, 0.05, "relative change under step halving"}},
                   op_structure_nijenhuis});
    ops.push_back({"structure", "normalize", "normalizing coordinates, axis flatness, defect decay and prop3",
                   {{"structure", T::structure, "toy_n0", "structure standard along the axis"},
                    {"axis_samples", T::integer, 9, "axis checks per real direction"},
                    {"residual_tol", T::number, 1e-12, "defining-equation residual"},
                    {"gradient_tol", T::number, 1e-6, "sup of Q and grad Q on the axis after normalization"},
                    {"z1", T::number_list, json::array({0.1, -0.05}), "axis point for the decay"},
                    {"radii", T::number_list, json::array({0.04, 0.02, 0.01, 0.005, 0.0025}), "distances from the axis"},
                    {"angles", T::integer, 16, "angles per radius"},
                    {"slope_target", T::number, 2.0, "expected log-log slope"},
                    {"slope_tol", T::number, 0.1, "slope tolerance"},
                    {"prop3", T::boolean, true, "run prop3 certification on the normalized structure"},
                    {"prop3_jets", T::integer, 200, "jets"},
                    {"prop3_grid", T::integer, 32, "disc grid cells per side"},
                    {"prop3_k_start", T::number, 1.0, "first K"}},
                   op_structure_normalize});
    ops.push_back({"disc", "solve", "J-holomorphic disc with prescribed 1-jet",
                   {{"structure", T::structure, "example_part3", "structure"},
                    {"center", T::number_list, json::array({0.0, 0.0, 0.06, 0.08}), "u(0) as re, im pairs"},
                    {"derivative", T::number_list, json::array({1.0, 0.0, 0.3, -0.1}), "u_zeta(0) as re, im pairs"},
                    {"radius", T::number, 0.05, "disc radius"},
                    {"grid", T::integer, 256, "cells per side"},
                    {"tol", T::number, 1e-8, "Picard tolerance"},
                    {"max_iter", T::integer, 100, "iteration cap"},
                    {"iteration_limit", T::integer, 30, "iterations allowed by the convergence check"},
                    {"identity_tol", T::number, 1e-3, "relative tolerance of the example identity"},
                    {"export_json", T::boolean, false, "write solution.json"}},
                   op_disc_solve});
    ops.push_back({"psh", "laplacians", "model Laplacians against finite differences",
                   {{"r_lo", T::number, 1e-4, "smallest radius"},
                    {"r_hi", T::number, 0.5, "largest radius"},
                    {"count", T::integer, 20, "radii"},
                    {"angle", T::number, 0.7, "argument of the sample points"},
                    {"rel_step", T::number, 1e-2, "step relative to |z|"},
                    {"rel_tol", T::number, 1e-6, "relative tolerance"}},
                   op_psh_laplacians});
    ops.push_back({"psh", "hessian", "Levi form of -log|log|Z'|| against 1/(|Z'|^2 log^2|Z'|)",
                   {{"samples", T::integer, 10000, "random points"},
                    {"max_transverse", T::integer, 3, "largest transverse dimension"},
                    {"r_lo", T::number, 1e-10, "smallest |Z'|"},
                    {"r_hi", T::number, 0.3, "largest |Z'|"}},
                   op_psh_hessian});
    ops.push_back({"psh", "prop1", "structure constants and the one-eighth slack inequality",
                   {{"structure", T::structure, "prop1_test", "structure"},
                    {"c", T::number_or_auto, "auto", "C, or auto from the structure"},
                    {"k", T::number_or_auto, "auto", "K, or auto for 4 C^2 + 1"},
                    {"levels", T::integer, 3, "sampling levels for C"},
                    {"n_eps", T::integer, 50, "eps grid"},
                    {"n_tau", T::integer, 50, "tau grid"},
                    {"n_r", T::integer, 20, "radius grid"},
                    {"r_lo", T::number, 1e-8, "smallest radius"},
                    {"r_hi", T::number, 1e-2, "largest radius"}},
                   op_psh_prop1});
    ops.push_back({"psh", "certify", "sign of the disc Laplacian of a candidate over sampled discs",
                   concat({{"structure", T::structure, "prop1_test", "structure"},
                           {"candidate", T::string, "prop1", "prop1, prop3, chirka, loglog, log_norm, log_abs_z2, lambda0 or expr"},
                           {"k", T::number_or_auto, "auto", "weight K of prop1 / prop3"},
                           {"a", T::number, 1.0, "weight of the chirka candidate"},
                           {"expression", T::string, "", "expression for candidate expr"},
                           {"jets", T::integer, 200, "sampled jets"},
                           {"jets_file", T::string, "", "CSV of jets instead of sampling"},
                           {"grid", T::integer, 64, "disc grid cells per side"},
                           {"tol", T::number, 1e-10, "Picard tolerance"},
                           {"expect", T::string, "psh", "psh, violations or report"}},
                          sampler_schema()),
                   op_psh_certify});
    ops.push_back({"psh", "prop3", "doubling search for K in log|Z'| + K|Z|^2",
                   concat({{"structure", T::structure, "toy_quadratic", "structure"},
                           {"normalize", T::boolean, false, "normalize the structure first"},
                           {"jets", T::integer, 200, "sampled jets"},
                           {"grid", T::integer, 64, "disc grid cells per side"},
                           {"k_start", T::number, 1.0, "first K"}},
                          sampler_schema()),
                   op_psh_prop3});
    const Schema c2 = {{"candidate", T::string, "log_abs_z2", "candidate on C^2"}, {"expression", T::string, "", "expression for expr"}};
    ops.push_back({"counterexample", "attack", "aligned jets driving the disc Laplacian negative",
                   concat(c2, {{"k2", T::number, 8.0, "K2"},
                               {"angles", T::integer, 64, "angles per radius"},
                               {"r_hi", T::number, 1e-2, "largest |z2|"},
                               {"r_lo", T::number, 1e-8, "smallest |z2|"},
                               {"per_decade", T::integer, 1, "radii per decade"},
                               {"z1", T::number_list, json::array({0.0, 0.0}), "z1"},
                               {"closed_form_tol", T::number, 1e-10, "tolerance against 1 - K2 |log r|"},
                               {"mask", T::string, "", "fat-set JSON restricting z2, empty for none"}}),
                   op_counterexample_attack});
    ops.push_back({"counterexample", "crosscheck", "attack jets through the disc solver",
                   concat(c2, {{"cases", T::integer, 100, "random jets"},
                               {"k2", T::number, 8.0, "K2"},
                               {"r_lo", T::number, 1e-8, "smallest |z2|"},
                               {"r_hi", T::number, 1e-2, "largest |z2|"},
                               {"radius", T::number, 0.05, "disc radius"},
                               {"grid", T::integer, 128, "disc grid cells per side"},
                               {"tol", T::number, 1e-11, "Picard tolerance"},
                               {"agreement_tol", T::number, 1e-3, "relative agreement"}}),
                   op_counterexample_crosscheck});
    ops.push_back({"counterexample", "lelong", "Lelong number fit and the decay hypotheses",
                   {{"candidate", T::string, "expr", "candidate on C^2"},
                    {"expression", T::string, "3*log(abs(z2)) + abs(z1)^2 + re(z2)", "expression"},
                    {"z1", T::number_list, json::array({0.1, 0.0}), "z1"},
                    {"fit_r_lo", T::number, 1e-8, "fit window"},
                    {"fit_r_hi", T::number, 1e-2, "fit window"},
                    {"fit_count", T::integer, 13, "fit radii"},
                    {"angles", T::integer, 64, "angles per circle"},
                    {"expected_a", T::any, 3.0, "expected Lelong number or null"},
                    {"a_tol", T::number, 1e-6, "tolerance on a"},
                    {"h_r_hi", T::number, 1e-2, "decade range"},
                    {"h_r_lo", T::number, 1e-8, "decade range"},
                    {"per_decade", T::integer, 4, "radii per decade"},
                    {"h_tol", T::number, 0.05, "final-decade tolerance"}},
                   op_counterexample_lelong});
    ops.push_back({"measure", "a1", "fat witness sets for (1/|z|) * nu",
                   {{"grid", T::integer, 2048, "cells per side"},
                    {"half_width", T::number, 1.0, "grid half width"},
                    {"measures", T::string_list, json::array({"uniform_disc", "circle", "atoms"}), "builtin measure names or CSV cell dumps x,y,mass"},
                    {"schedule", T::string, "adaptive", "adaptive or dyadic"},
                    {"target", T::number, 0.999, "density target of the adaptive schedule"},
                    {"density", T::number, 0.99, "fatness threshold"},
                    {"smallest", T::integer, 3, "smallest resolvable radii checked"},
                    {"far_samples", T::integer, 40, "far-field sample points"},
                    {"export_mask", T::boolean, false, "write each witness set as fat_witness_<measure>.json"}},
                   op_measure_a1});
    ops.push_back({"measure", "a2", "weak-L1 behaviour of the principal-value transform",
                   {{"grid", T::integer, 2048, "cells per side"},
                    {"half_width", T::number, 1.0, "grid half width"},
                    {"measures", T::string_list, json::array({"gaussian_bump", "dyadic_cells"}), "builtin measure names or CSV cell dumps x,y,mass"},
                    {"t_lo", T::number, 1.0, "smallest level"},
                    {"t_hi", T::number, 1e4, "largest level"},
                    {"levels", T::integer, 9, "levels"},
                    {"spread_max", T::number, 3.0, "allowed max / min of t m(t)"},
                    {"k_lo", T::integer, 4, "first dyadic level"},
                    {"k_hi", T::integer, 10, "last dyadic level"}},
                   op_measure_a2});
    ops.push_back({"measure", "a3", "divergence of the weighted annulus integrals",
                   {{"delta", T::number, 3.0, "density lower bound"},
                    {"k_max", T::integer, 64, "annuli"},
                    {"region", T::string, "everything", "everything or half_plane"},
                    {"angles", T::integer, 720, "angular nodes"},
                    {"radial_nodes", T::integer, 16, "Gauss nodes per annulus"},
                    {"annulus_tol", T::number, 0.01, "relative tolerance against 2 pi log(1 + 1/k)"},
                    {"growth_factor", T::number, 0.8, "factor on the logarithmic lower bound"}},
                   op_measure_a3});
    json n4 = json::array();
    for (long j = 1; j <= 12; ++j) n4.push_back(j * j * j * j);
    ops.push_back({"measure", "remark1", "integrable density with unbounded weighted sup",
                   {{"n", T::number_list, n4, "annulus indices"},
                    {"mass_tol", T::number, 0.01, "relative mass tolerance"},
                    {"grid", T::integer, 1024, "grid for the avoiding-set density, 0 to skip"}},
                   op_measure_remark1});
    return ops;
}

}  // namespace detail

inline const std::vector<Operation>& operations() {
    static const std::vector<Operation> ops = detail::make_operations();
    return ops;
}

inline const Operation& find_operation(const std::string& module, const std::string& operation) {
    for (const Operation& op : operations())
        if (op.module == module && op.operation == operation) return op;
    fail(ErrorCode::schema_error, "unknown operation " + module + "." + operation);
}

}  // namespace aclab::harness
