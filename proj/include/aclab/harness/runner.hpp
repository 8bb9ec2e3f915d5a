#pragma once

// Experiment specs (one JSON file, explicit schema version), the runner, and the builtin experiments.

#include <cstdlib>
#include <future>

#include "aclab/harness/experiments.hpp"

namespace aclab::harness {

inline constexpr int kSchemaVersion = 1;

struct ExperimentSpec {
    std::string name;
    std::string module, operation;
    std::uint64_t seed = 0;
    json params = json::object();
    std::string outputs;  // directory under the output root; empty means the experiment name
};

inline json spec_to_json(const ExperimentSpec& s) {
    return {{"schema_version", kSchemaVersion}, {"name", s.name},     {"module", s.module}, {"operation", s.operation},
            {"seed", s.seed},                   {"params", s.params}, {"outputs", s.outputs}};
}

inline ExperimentSpec spec_from_json(const json& j) {
    if (!j.is_object()) fail(ErrorCode::schema_error, "experiment: expected an object");
    for (const auto& [key, value] : j.items()) {
        if (key != "schema_version" && key != "name" && key != "module" && key != "operation" && key != "seed" && key != "params" &&
            key != "outputs") {
            fail(ErrorCode::schema_error, key + ": unknown key");
        }
    }
    if (!j.contains("schema_version") || j.at("schema_version") != kSchemaVersion) {
        fail(ErrorCode::schema_error, "schema_version: expected " + std::to_string(kSchemaVersion));
    }
    ExperimentSpec s;
    auto str = [&](const char* key, bool required) {
        if (!j.contains(key)) {
            if (required) fail(ErrorCode::schema_error, std::string(key) + ": missing");
            return std::string();
        }
        if (!j.at(key).is_string()) fail(ErrorCode::schema_error, std::string(key) + ": expected a string");
        return j.at(key).get<std::string>();
    };
    s.name = str("name", true);
    s.module = str("module", true);
    s.operation = str("operation", true);
    s.outputs = str("outputs", false);
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) fail(ErrorCode::schema_error, "seed: expected a nonnegative integer");
        s.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("params")) s.params = j.at("params");
    return s;
}

/// A spec file holds one experiment or {"experiments": [...]}.
inline std::vector<ExperimentSpec> specs_from_json(const json& j) {
    std::vector<ExperimentSpec> out;
    if (j.is_object() && j.contains("experiments")) {
        if (!j.at("experiments").is_array()) fail(ErrorCode::schema_error, "experiments: expected a list");
        for (const auto& e : j.at("experiments")) out.push_back(spec_from_json(e));
    } else {
        out.push_back(spec_from_json(j));
    }
    return out;
}

inline std::vector<ExperimentSpec> load_spec_file(const std::filesystem::path& p) { return specs_from_json(read_json_file(p)); }

inline std::filesystem::path default_output_root() {
    const char* env = std::getenv("ACLAB_OUTPUT_ROOT");
    return env && *env ? std::filesystem::path(env) : std::filesystem::path("aclab_out");
}

struct RunOptions {
    std::filesystem::path output_root = default_output_root();
    bool write_files = true;
};

/// Long-format plot data of a record; tables without plot columns are skipped with a notice.
inline std::string emit_plotdata(const RunRecord& r, std::vector<std::string>* notices = nullptr) { return long_format(r.tables, notices); }

inline void write_file(const std::filesystem::path& p, const std::string& contents) {
    std::ofstream out(p, std::ios::binary);
    if (!out) fail(ErrorCode::io_error, "cannot write " + p.string());
    out << contents;
}

inline bool is_input_error(const LabError& e) {
    return e.code() == ErrorCode::schema_error || e.code() == ErrorCode::io_error || e.code() == ErrorCode::parse_error;
}

/// A finished run before anything is written.
struct Execution {
    ExperimentSpec spec;  // parameters completed with their defaults
    RunRecord record;
    std::string plotdata;
    std::vector<std::pair<std::string, std::string>> files;
};

/// Validates the parameters and runs the operation.
/// Schema, parse and missing-file errors propagate; other domain errors become a failing "error" check.
inline Execution execute(const ExperimentSpec& spec) {
    const Operation& op = find_operation(spec.module, spec.operation);
    Execution ex;
    ex.spec = spec;
    ex.spec.params = validate_params(op.schema, spec.params);
    RunRecord& rec = ex.record;
    rec.name = spec.name;
    rec.module = spec.module;
    rec.operation = spec.operation;
    rec.seed = spec.seed;
    rec.spec_hash = fnv1a_hex(spec_to_json(ex.spec).dump());
    rec.started = utc_timestamp();
    OpOutput out;
    try {
        out = op.run(ex.spec.params, spec.seed);
    } catch (const LabError& e) {
        if (is_input_error(e)) throw;
        out.check("error", Verdict::fail(e.what()));
    }
    rec.checks = std::move(out.checks);
    rec.tables = std::move(out.tables);
    rec.notices = std::move(out.notices);
    ex.files = std::move(out.files);
    ex.plotdata = "# seed: " + std::to_string(spec.seed) + "\n" + emit_plotdata(rec, &rec.notices);
    rec.finished = utc_timestamp();
    return ex;
}

/// Writes tables, plot data, extra files, the completed spec and the verdicts, then appends to the run log.
inline RunRecord persist(Execution ex, const RunOptions& opt) {
    RunRecord& rec = ex.record;
    if (!opt.write_files) return rec;
    const std::filesystem::path dir = opt.output_root / (ex.spec.outputs.empty() ? ex.spec.name : ex.spec.outputs);
    std::filesystem::create_directories(dir);
    auto put = [&](const std::string& name, const std::string& contents) {
        write_file(dir / name, contents);
        rec.artifacts.push_back((dir / name).string());
    };
    for (const Table& t : rec.tables) put(t.name + ".csv", to_csv(t, ex.spec.seed));
    put("plotdata.csv", ex.plotdata);
    for (const auto& [name, contents] : ex.files) put(name, contents);
    json checks = json::array();
    for (const Check& c : rec.checks) checks.push_back({{"name", c.name}, {"verdict", c.verdict.str()}, {"detail", c.detail}});
    put("spec.json", spec_to_json(ex.spec).dump(2) + "\n");
    put("checks.json", checks.dump(2) + "\n");
    append_run_log(opt.output_root / "runs.jsonl", rec);
    return rec;
}

inline RunRecord run(const ExperimentSpec& spec, const RunOptions& opt = {}) { return persist(execute(spec), opt); }

/// Runs specs sequentially, or concurrently with `parallel`; outputs are written in input order either way.
inline std::vector<RunRecord> run_all(const std::vector<ExperimentSpec>& specs, const RunOptions& opt = {}, bool parallel = false) {
    std::vector<RunRecord> out;
    if (!parallel) {
        for (const ExperimentSpec& s : specs) out.push_back(run(s, opt));
        return out;
    }
    for (const ExperimentSpec& s : specs) validate_params(find_operation(s.module, s.operation).schema, s.params);
    std::vector<std::future<Execution>> fs;
    for (const ExperimentSpec& s : specs) fs.push_back(std::async(std::launch::async, [s] { return execute(s); }));
    for (auto& f : fs) out.push_back(persist(f.get(), opt));
    return out;
}

inline ExperimentSpec make_spec(std::string name, std::string module, std::string operation, json params = json::object(),
                                std::uint64_t seed = 20240601) {
    return {std::move(name), std::move(module), std::move(operation), seed, std::move(params), {}};
}

/// Named experiments whose checks are the acceptance checks of each module.
inline std::vector<std::pair<std::string, std::vector<ExperimentSpec>>> builtins() {
    return {
        {"prop0-laplacians", {make_spec("prop0-laplacians", "psh", "laplacians")}},
        {"part3-matrix", {make_spec("part3-matrix", "structure", "matrix")}},
        {"disc-example", {make_spec("disc-example", "disc", "solve")}},
        {"prop1-inequality", {make_spec("prop1-inequality", "psh", "prop1"), make_spec("prop1-discs", "psh", "certify")}},
        {"ll-hessian", {make_spec("ll-hessian", "psh", "hessian")}},
        {"part3-attack-logz2", {make_spec("part3-attack-logz2", "counterexample", "attack")}},
        {"part3-crosscheck", {make_spec("part3-crosscheck", "counterexample", "crosscheck")}},
        {"lelong-H", {make_spec("lelong-H", "counterexample", "lelong")}},
        {"measure-a1", {make_spec("measure-a1", "measure", "a1")}},
        {"measure-a2", {make_spec("measure-a2", "measure", "a2")}},
        {"measure-a3", {make_spec("measure-a3", "measure", "a3")}},
        {"measure-remark1", {make_spec("measure-remark1", "measure", "remark1")}},
        {"nijenhuis-normalization",
         {make_spec("nijenhuis-standard", "structure", "nijenhuis", {{"structure", "standard"}, {"expect", "zero"}}),
          make_spec("nijenhuis-example", "structure", "nijenhuis",
                    {{"structure", "example_part3"},
                     {"points", json::array({json::array({0.0, 0.0, 0.0, 0.5})})},
                     {"half_widths", json::array({4.0, 0.8})},
                     {"expect", "nonzero"}}),
          make_spec("normalization-toy", "structure", "normalize")}},
    };
}

inline std::vector<ExperimentSpec> builtin(const std::string& name) {
    for (auto& [n, specs] : builtins())
        if (n == name) return specs;
    fail(ErrorCode::schema_error, "unknown builtin experiment '" + name + "'");
}

}  // namespace aclab::harness
