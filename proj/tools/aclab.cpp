// Command-line front end: each subcommand builds an experiment spec and hands it to the runner.
// Exit codes: 0 all checks pass, 1 some check fails, 2 usage, schema or input error.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "aclab/aclab.hpp"

namespace h = aclab::harness;
using aclab::ErrorCode;
using aclab::LabError;
using h::json;

namespace {

struct Common {
    std::uint64_t seed = 20240601;
    std::vector<std::string> sets;  // key=value overrides, value parsed as JSON when possible
    std::string out;                // optional copy of the primary artifact
    std::string name;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--seed", c.seed, "random seed recorded in every output");
    app->add_option("--set", c.sets, "extra parameter key=value (JSON value or plain string)");
    app->add_option("--out", c.out, "also write the primary table (or solution JSON) to this path");
    app->add_option("--name", c.name, "experiment name, used as the output directory");
}

json parse_value(const std::string& v) {
    try {
        return json::parse(v);
    } catch (const json::parse_error&) {
        return v;
    }
}

void apply_sets(json& params, const std::vector<std::string>& sets) {
    for (const std::string& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--set", "expected key=value, got '" + s + "'");
        params[s.substr(0, eq)] = parse_value(s.substr(eq + 1));
    }
}

std::string verdict_tag(const h::Verdict& v) {
    switch (v.outcome) {
        case h::Outcome::pass: return "PASS";
        case h::Outcome::fail: return "FAIL";
        default: return "SKIP";
    }
}

void print_record(const h::RunRecord& r) {
    std::cout << (r.failed() ? "FAIL " : "PASS ") << r.name << " (" << r.module << "." << r.operation << ", seed " << r.seed << ")\n";
    for (const h::Check& c : r.checks) {
        std::cout << "  " << verdict_tag(c.verdict) << "  " << c.name;
        if (!c.verdict.reason.empty()) std::cout << ": " << c.verdict.reason;
        if (!c.detail.empty() && c.detail != c.verdict.reason) std::cout << "  [" << c.detail << "]";
        std::cout << "\n";
    }
    for (const std::string& n : r.notices) std::cout << "  note: " << n << "\n";
    if (!r.artifacts.empty()) std::cout << "  outputs: " << std::filesystem::path(r.artifacts.front()).parent_path().string() << "\n";
}

h::RunOptions options(const std::string& root) {
    h::RunOptions o;
    if (!root.empty()) o.output_root = root;
    return o;
}

/// Runs one subcommand spec; `primary` names the table (or extra file) copied to --out.
int run_single(const std::string& module, const std::string& op, json params, const Common& c, const std::string& root,
               const std::string& primary) {
    apply_sets(params, c.sets);
    h::ExperimentSpec spec = h::make_spec(c.name.empty() ? module + "-" + op : c.name, module, op, std::move(params), c.seed);
    h::Execution ex = h::execute(spec);
    if (!c.out.empty()) {
        bool written = false;
        for (const h::Table& t : ex.record.tables)
            if (t.name == primary) {
                h::write_file(c.out, h::to_csv(t, spec.seed));
                written = true;
            }
        for (const auto& [name, contents] : ex.files)
            if (name == primary) {
                h::write_file(c.out, contents);
                written = true;
            }
        if (!written) ex.record.notices.push_back("no " + primary + " output to copy to " + c.out);
    }
    const h::RunRecord r = h::persist(std::move(ex), options(root));
    print_record(r);
    return r.failed() ? 1 : 0;
}

std::string candidate_name(const std::string& v, std::string& expression) {
    static const std::vector<std::string> known = {"prop1", "prop3", "chirka", "loglog", "log_norm", "log_abs_z2", "lambda0"};
    std::string name = v.rfind("builtin:", 0) == 0 ? h::trim(v.substr(8)) : v;
    if (name == "log-z2") name = "log_abs_z2";
    if (name == "custom-expr" || name == "expr") return "expr";
    for (const std::string& k : known)
        if (k == name) return name;
    expression = v;
    return "expr";
}

std::vector<double> parse_decades(const std::string& v) {
    const auto colon = v.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--decades", "expected hi:lo, e.g. 1e-2:1e-8");
    try {
        double a = std::stod(v.substr(0, colon)), b = std::stod(v.substr(colon + 1));
        return {std::max(a, b), std::min(a, b)};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--decades", "expected hi:lo, e.g. 1e-2:1e-8");
    }
}

/// --jets: a CSV file of jets, a count, or a sampler spec "count=200,z1_radius=0.2,r_lo=1e-4,r_hi=1e-2,radius=0.05".
void apply_jets(json& params, const std::string& v) {
    if (v.empty()) return;
    if (h::ends_with(v, ".csv")) {
        params["jets_file"] = v;
        return;
    }
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        const std::string key = eq == std::string::npos ? "count" : h::trim(item.substr(0, eq));
        const json val = parse_value(h::trim(eq == std::string::npos ? item : item.substr(eq + 1)));
        params[key == "count" ? "jets" : key] = val;
    }
}

int list_builtins() {
    for (const auto& [name, specs] : h::builtins()) {
        std::cout << name << "\n";
        for (const h::ExperimentSpec& s : specs) std::cout << "  " << s.name << ": " << s.module << "." << s.operation << "\n";
    }
    return 0;
}

int list_operations() {
    for (const h::Operation& op : h::operations()) {
        std::cout << op.id() << ": " << op.summary << "\n";
        for (const h::ParamDef& d : op.schema) std::cout << "  " << d.key << " = " << d.fallback.dump() << "  (" << d.help << ")\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical lab for plurisubharmonic functions on almost complex manifolds"};
    app.require_subcommand(1);
    std::string root;
    app.add_option("--output-root", root, "output root (default: $ACLAB_OUTPUT_ROOT or ./aclab_out)");
    std::function<int()> action;

    // solve-disc
    Common disc_c;
    std::string disc_structure = "example_part3";
    std::vector<double> center, deriv;
    double disc_radius = 0.05, disc_tol = 1e-8;
    int disc_grid = 256;
    auto* disc = app.add_subcommand("solve-disc", "J-holomorphic disc with a prescribed 1-jet");
    add_common(disc, disc_c);
    disc->add_option("--structure", disc_structure, "builtin name or structure JSON file");
    disc->add_option("--center", center, "u(0) as re,im pairs")->delimiter(',');
    disc->add_option("--deriv", deriv, "u_zeta(0) as re,im pairs")->delimiter(',');
    disc->add_option("--radius", disc_radius, "disc radius");
    disc->add_option("--grid", disc_grid, "cells per side");
    disc->add_option("--tol", disc_tol, "Picard tolerance");
    disc->callback([&] {
        action = [&] {
            json p = {{"structure", disc_structure}, {"radius", disc_radius}, {"grid", disc_grid}, {"tol", disc_tol}};
            if (!center.empty()) p["center"] = center;
            if (!deriv.empty()) p["derivative"] = deriv;
            if (!disc_c.out.empty()) p["export_json"] = true;
            return run_single("disc", "solve", p, disc_c, root, "solution.json");
        };
    });

    // certify-psh
    Common cert_c;
    std::string cert_structure = "prop1_test", cert_candidate = "prop1", cert_k = "auto", cert_jets, cert_expect = "psh", cert_expr;
    int cert_grid = 64;
    auto* cert = app.add_subcommand("certify-psh", "sign of the disc Laplacian of a candidate over sampled discs");
    add_common(cert, cert_c);
    cert->add_option("--structure", cert_structure, "builtin name or structure JSON file");
    cert->add_option("--candidate", cert_candidate, "prop1, prop3, chirka, loglog, log_norm, log_abs_z2, lambda0, or an expression");
    cert->add_option("--expr", cert_expr, "expression when --candidate is custom-expr");
    cert->add_option("--K", cert_k, "weight K or auto");
    cert->add_option("--jets", cert_jets, "jets CSV file, or count / sampler spec key=value,...");
    cert->add_option("--grid", cert_grid, "disc grid cells per side");
    cert->add_option("--expect", cert_expect, "psh, violations or report");
    cert->callback([&] {
        action = [&] {
            std::string expression = cert_expr;
            json p = {{"structure", cert_structure},
                      {"candidate", candidate_name(cert_candidate, expression)},
                      {"k", parse_value(cert_k)},
                      {"grid", cert_grid},
                      {"expect", cert_expect}};
            if (!expression.empty()) p["expression"] = expression;
            apply_jets(p, cert_jets);
            return run_single("psh", "certify", p, cert_c, root, "discs");
        };
    });

    // counterexample
    Common ce_c;
    std::string ce_candidate = "builtin:log-z2", ce_decades = "1e-2:1e-8", ce_mask;
    double ce_k2 = 8.0;
    int ce_angles = 64, ce_per_decade = 1;
    auto* ce = app.add_subcommand("counterexample", "aligned jets against the threshold 1 - (K2/8)|log|z2||");
    add_common(ce, ce_c);
    ce->add_option("--candidate", ce_candidate, "expression in z1, z2, or builtin:log-z2");
    ce->add_option("--K2", ce_k2, "K2");
    ce->add_option("--decades", ce_decades, "|z2| range hi:lo");
    ce->add_option("--per-decade", ce_per_decade, "radii per decade");
    ce->add_option("--angles", ce_angles, "angles per radius");
    ce->add_option("--mask", ce_mask, "fat-set JSON restricting z2");
    ce->callback([&] {
        action = [&] {
            std::string expression;
            const std::vector<double> d = parse_decades(ce_decades);
            json p = {{"candidate", candidate_name(ce_candidate, expression)},
                      {"k2", ce_k2},
                      {"r_hi", d[0]},
                      {"r_lo", d[1]},
                      {"per_decade", ce_per_decade},
                      {"angles", ce_angles},
                      {"mask", ce_mask}};
            if (!expression.empty()) p["expression"] = expression;
            return run_single("counterexample", "attack", p, ce_c, root, "attack");
        };
    });

    // measure-lab
    Common ml_c;
    std::string lemma;
    std::vector<std::string> ml_measures;
    int ml_grid = 0;
    auto* ml = app.add_subcommand("measure-lab", "appendix measure experiments");
    add_common(ml, ml_c);
    ml->add_option("lemma", lemma, "a1, a2, a3 or remark1")->required()->check(CLI::IsMember({"a1", "a2", "a3", "remark1"}));
    ml->add_option("--measure", ml_measures, "builtin measure or CSV cell dump x,y,mass (repeatable)");
    ml->add_option("--grid", ml_grid, "cells per side");
    ml->callback([&] {
        action = [&] {
            json p = json::object();
            const bool takes_measure = lemma == "a1" || lemma == "a2";
            if (!ml_measures.empty()) {
                if (!takes_measure) throw CLI::ValidationError("--measure", lemma + " takes no measure");
                p["measures"] = ml_measures;
            }
            if (ml_grid > 0) {
                if (lemma == "a3") throw CLI::ValidationError("--grid", "a3 is computed by quadrature, not on a grid");
                p["grid"] = ml_grid;
            }
            const std::string primary = lemma == "a1" ? "density" : lemma == "a2" ? "weak_l1" : lemma == "a3" ? "a3_annuli" : "remark1_annuli";
            return run_single("measure", lemma, p, ml_c, root, primary);
        };
    });

    // nijenhuis
    Common nj_c;
    std::string nj_structure = "standard", nj_expect = "report";
    std::vector<std::string> nj_points;
    std::vector<double> nj_half;
    double nj_step = 0.0;
    auto* nj = app.add_subcommand("nijenhuis", "Nijenhuis tensor with a step-halving check");
    add_common(nj, nj_c);
    nj->add_option("--structure", nj_structure, "builtin name or structure JSON file");
    nj->add_option("--point", nj_points, "point as comma-separated reals (repeatable)");
    nj->add_option("--half-widths", nj_half, "evaluation box per complex coordinate")->delimiter(',');
    nj->add_option("--step", nj_step, "finite-difference step, 0 for automatic");
    nj->add_option("--expect", nj_expect, "zero, nonzero or report");
    nj->callback([&] {
        action = [&] {
            json p = {{"structure", nj_structure}, {"step", nj_step}, {"expect", nj_expect}, {"half_widths", nj_half}};
            if (!nj_points.empty()) {
                json pts = json::array();
                for (const std::string& s : nj_points) pts.push_back(parse_value("[" + s + "]"));
                p["points"] = pts;
            }
            return run_single("structure", "nijenhuis", p, nj_c, root, "nijenhuis");
        };
    });

    // normalize
    Common nm_c;
    std::string nm_structure = "toy_n0";
    bool nm_no_prop3 = false;
    auto* nm = app.add_subcommand("normalize", "normalizing coordinates and their checks");
    add_common(nm, nm_c);
    nm->add_option("--structure", nm_structure, "builtin name or structure JSON file");
    nm->add_flag("--no-prop3", nm_no_prop3, "skip the prop3 certification");
    nm->callback([&] {
        action = [&] {
            json p = {{"structure", nm_structure}, {"prop3", !nm_no_prop3}};
            return run_single("structure", "normalize", p, nm_c, root, "defect_decay");
        };
    });

    // run
    std::string target;
    bool parallel = false;
    auto* runc = app.add_subcommand("run", "run a spec file, a builtin experiment, or all builtins");
    runc->add_option("target", target, "spec JSON file, builtin name, or 'all'")->required();
    runc->add_flag("--parallel", parallel, "run independent specs concurrently");
    runc->callback([&] {
        action = [&] {
            std::vector<h::ExperimentSpec> specs;
            if (std::filesystem::is_regular_file(target)) {
                specs = h::load_spec_file(target);
            } else if (target == "all") {
                for (const auto& [name, s] : h::builtins()) specs.insert(specs.end(), s.begin(), s.end());
            } else if (h::ends_with(target, ".json")) {
                aclab::fail(ErrorCode::io_error, "missing input file: " + target);
            } else {
                specs = h::builtin(target);
            }
            int code = 0;
            for (const h::RunRecord& r : h::run_all(specs, options(root), parallel)) {
                print_record(r);
                if (r.failed()) code = 1;
            }
            return code;
        };
    });

    app.add_subcommand("list-builtins", "list builtin experiments")->callback([&] { action = list_builtins; });
    app.add_subcommand("list-ops", "list operations and their parameters")->callback([&] { action = list_operations; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return action();
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const LabError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return h::is_input_error(e) ? 2 : 1;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
