#pragma once

// Result tables. Numbers are printed with "%.17g" so identical runs give identical bytes.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include "aclab/core/error.hpp"

namespace aclab::harness {

using Cell = std::variant<double, long long, std::string>;

/// Which columns make a plot: x against each of ys, one series per distinct value of `series` if set.
struct PlotHint {
    std::string x;
    std::vector<std::string> ys;
    std::string series;
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    PlotHint plot;

    Table() = default;
    Table(std::string n, std::vector<std::string> cols, PlotHint hint = {})
        : name(std::move(n)), columns(std::move(cols)), plot(std::move(hint)) {}

    void add(std::vector<Cell> row) {
        if (row.size() != columns.size()) {
            fail(ErrorCode::invalid_argument, "table " + name + ": row has " + std::to_string(row.size()) + " cells, expected " +
                                                  std::to_string(columns.size()));
        }
        rows.push_back(std::move(row));
    }

    std::size_t column(const std::string& c) const {
        for (std::size_t k = 0; k < columns.size(); ++k)
            if (columns[k] == c) return k;
        fail(ErrorCode::invalid_argument, "table " + name + " has no column '" + c + "'");
    }

    bool plottable() const { return !plot.x.empty() && !plot.ys.empty() && !rows.empty(); }
};

inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string quote_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string format_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    return quote_field(std::get<std::string>(c));
}

/// Numeric value of a cell; strings give NaN.
inline double numeric(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* i = std::get_if<long long>(&c)) return static_cast<double>(*i);
    return std::nan("");
}

inline std::string csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k) line += ',';
        line += quote_field(fields[k]);
    }
    return line + '\n';
}

inline std::string to_csv(const Table& t, std::uint64_t seed) {
    std::string out = "# seed: " + std::to_string(seed) + '\n';
    out += csv_line(t.columns);
    for (const auto& row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out += ',';
            out += format_cell(row[k]);
        }
        out += '\n';
    }
    return out;
}

/// Long format (series, x, y) over every plottable table; the others are listed in `skipped`.
inline std::string long_format(const std::vector<Table>& tables, std::vector<std::string>* skipped = nullptr) {
    std::string out = "series,x,y\n";
    for (const Table& t : tables) {
        if (!t.plottable()) {
            if (skipped) skipped->push_back("table " + t.name + " has no plot columns; skipped");
            continue;
        }
        const std::size_t xc = t.column(t.plot.x);
        const bool split = !t.plot.series.empty();
        const std::size_t sc = split ? t.column(t.plot.series) : 0;
        for (const std::string& y : t.plot.ys) {
            const std::size_t yc = t.column(y);
            for (const auto& row : t.rows) {
                std::string label = t.name + "/" + y;
                if (split) label += "/" + t.plot.series + "=" + format_cell(row[sc]);
                out += quote_field(label) + ',' + format_cell(row[xc]) + ',' + format_cell(row[yc]) + '\n';
            }
        }
    }
    return out;
}

}  // namespace aclab::harness
