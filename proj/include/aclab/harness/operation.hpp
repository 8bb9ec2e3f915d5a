#pragma once

// What an operation returns, and the parameter readers shared by all operations.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "aclab/harness/record.hpp"
#include "aclab/harness/schema.hpp"
#include "aclab/measure/grid_measure.hpp"
#include "aclab/psh/candidate.hpp"
#include "aclab/structure/structure_field.hpp"

namespace aclab::harness {

struct OpOutput {
    std::vector<Table> tables;
    std::vector<Check> checks;
    std::vector<std::string> notices;
    std::vector<std::pair<std::string, std::string>> files;  // (file name, contents)

    void check(std::string name, Verdict v, std::string detail = {}) { checks.push_back({std::move(name), std::move(v), std::move(detail)}); }
};

using OpFn = std::function<OpOutput(const json& params, std::uint64_t seed)>;

struct Operation {
    std::string module, operation, summary;
    Schema schema;
    OpFn run;
    std::string id() const { return module + "." + operation; }
};

inline std::string read_text_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) fail(ErrorCode::io_error, "missing input file: " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json read_json_file(const std::filesystem::path& p) {
    try {
        return json::parse(read_text_file(p));
    } catch (const json::parse_error& e) {
        fail(ErrorCode::parse_error, p.string() + ": " + e.what());
    }
}

inline std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

/// Rows of a numeric CSV; '#' lines and a leading header line are skipped, every row must have between columns_min and columns_max fields.
inline std::vector<std::vector<double>> read_numeric_csv(const std::string& path, std::size_t columns_min, std::size_t columns_max) {
    std::stringstream in(read_text_file(path));
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (first) {
            first = false;
            // A header has no numeric field at all; a data row with a bad field is an error below.
            bool any_number = false;
            std::stringstream hs(line);
            std::string f;
            while (std::getline(hs, f, ',')) {
                char* end = nullptr;
                const std::string t = trim(f);
                std::strtod(t.c_str(), &end);
                any_number = any_number || (!t.empty() && end && *end == '\0');
            }
            if (!any_number) continue;
        }
        std::vector<double> x;
        std::stringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(f, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || !trim(f.substr(used)).empty())
                fail(ErrorCode::parse_error, path + ":" + std::to_string(line_no) + ": not a number: '" + trim(f) + "'");
            x.push_back(v);
        }
        if (x.size() < columns_min || x.size() > columns_max)
            fail(ErrorCode::parse_error, path + ":" + std::to_string(line_no) + ": expected " + std::to_string(columns_min) +
                                             (columns_max > columns_min ? " to " + std::to_string(columns_max) : std::string()) + " columns");
        rows.push_back(std::move(x));
    }
    return rows;
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// A builtin measure name, or a CSV cell dump "x,y,mass[,mass_im]" placed on the nearest nodes.
/// Dumps with negative or complex entries are read as signed/complex cell integrals of a density.
inline GridMeasure measure_param(const std::string& v, const PlaneGrid& g) {
    if (!ends_with(v, ".csv")) return measures::by_name(v, g);
    const auto rows = read_numeric_csv(v, 3, 4);
    bool positive = true;
    for (const auto& r : rows) positive = positive && r[2] >= 0 && (r.size() < 4 || r[3] == 0);
    GridMeasure m(g, positive ? MeasureMode::measure : MeasureMode::density, std::filesystem::path(v).stem().string());
    for (const auto& r : rows) m.add_atom(cplx(r[0], r[1]), cplx(r[2], r.size() > 3 ? r[3] : 0.0));
    m.validate();
    return m;
}

/// Fat sets on disk: {"cells": N, "half_width": R, "mask": ["0110...", ...]} with one string per grid row (j), bottom row first.
inline json fat_set_to_json(const FatSet& e) {
    json rows = json::array();
    for (int j = 0; j < e.grid.size(); ++j) {
        std::string row(static_cast<std::size_t>(e.grid.size()), '0');
        for (int i = 0; i < e.grid.size(); ++i)
            if (e.mask[e.grid.index(i, j)]) row[static_cast<std::size_t>(i)] = '1';
        rows.push_back(row);
    }
    return {{"cells", e.grid.cells()}, {"half_width", e.grid.half_width()}, {"mask", rows}};
}

inline FatSet fat_set_from_json(const json& j) {
    if (!j.is_object() || !j.contains("cells") || !j.contains("half_width") || !j.contains("mask"))
        fail(ErrorCode::parse_error, "fat set: expected cells, half_width and mask");
    const PlaneGrid g(j.at("cells").get<int>(), j.at("half_width").get<double>());
    const auto& rows = j.at("mask");
    if (!rows.is_array() || static_cast<int>(rows.size()) != g.size()) fail(ErrorCode::parse_error, "fat set: mask needs cells + 1 rows");
    FatSet e{g, std::vector<std::uint8_t>(g.count(), 0)};
    for (int r = 0; r < g.size(); ++r) {
        const std::string row = rows[static_cast<std::size_t>(r)].get<std::string>();
        if (static_cast<int>(row.size()) != g.size()) fail(ErrorCode::parse_error, "fat set: row " + std::to_string(r) + " has the wrong length");
        for (int i = 0; i < g.size(); ++i) e.mask[g.index(i, r)] = row[static_cast<std::size_t>(i)] == '1';
    }
    return e;
}

/// A structure from "name", "builtin: name", a path to a JSON file, or an object
///   {"name": ..., "n": 2, "q": ["0", "0", "z2", "0"], "half_widths": [1.0, 0.3]}
/// whose q entries (row-major) use the expression grammar.
inline StructureField structure_param(const json& v) {
    if (v.is_string()) {
        std::string s = trim(v.get<std::string>());
        if (s.rfind("builtin:", 0) == 0) return builtin::by_name(trim(s.substr(8)));
        if (s.size() > 5 && s.substr(s.size() - 5) == ".json") return structure_param(read_json_file(s));
        return builtin::by_name(s);
    }
    if (!v.is_object()) fail(ErrorCode::schema_error, "structure: expected a name or an object");
    if (v.contains("builtin")) return builtin::by_name(v.at("builtin").get<std::string>());
    for (const char* key : {"n", "q", "half_widths"})
        if (!v.contains(key)) fail(ErrorCode::schema_error, std::string("structure.") + key + ": missing");
    const int n = v.at("n").get<int>();
    const auto q = v.at("q").get<std::vector<std::string>>();
    const auto hw = v.at("half_widths").get<std::vector<double>>();
    if (static_cast<int>(hw.size()) != n) fail(ErrorCode::schema_error, "structure.half_widths: expected " + std::to_string(n) + " entries");
    return structure_from_expressions(v.value("name", std::string("custom")), n, q, Box::centered(hw));
}

/// A point of C^n given as 2n reals (re, im, re, im, ...).
inline CVec cvec_param(const json& v, int n, const std::string& key) {
    const auto x = v.get<std::vector<double>>();
    if (static_cast<int>(x.size()) != 2 * n) {
        fail(ErrorCode::schema_error, "params." + key + ": expected " + std::to_string(2 * n) + " reals (re, im pairs)");
    }
    CVec z(n);
    for (int j = 0; j < n; ++j) z(j) = cplx(x[static_cast<std::size_t>(2 * j)], x[static_cast<std::size_t>(2 * j + 1)]);
    return z;
}

inline cplx cplx_param(const json& v, const std::string& key) { return cvec_param(v, 1, key)(0); }

inline std::vector<double> number_list(const json& v) { return v.get<std::vector<double>>(); }

inline long long count_of(std::size_t n) { return static_cast<long long>(n); }

}  // namespace aclab::harness
