#pragma once

// Verdicts, run records and the append-only run log (one JSON object per line).

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "aclab/harness/csv.hpp"
#include "json.hpp"

namespace aclab::harness {

using json = nlohmann::json;

enum class Outcome { pass, fail, skipped };

struct Verdict {
    Outcome outcome = Outcome::pass;
    std::string reason;

    static Verdict pass() { return {Outcome::pass, {}}; }
    static Verdict fail(std::string why) { return {Outcome::fail, std::move(why)}; }
    static Verdict skipped(std::string why) { return {Outcome::skipped, std::move(why)}; }
    static Verdict of(bool ok, std::string why_not = {}) { return ok ? pass() : fail(std::move(why_not)); }

    std::string str() const {
        switch (outcome) {
            case Outcome::pass: return "pass";
            case Outcome::fail: return "fail";
            case Outcome::skipped: return "skipped(" + reason + ")";
        }
        return "?";
    }
};

struct Check {
    std::string name;
    Verdict verdict;
    std::string detail;
};

struct RunRecord {
    std::string name, module, operation;
    std::uint64_t seed = 0;
    std::string spec_hash;
    std::string started, finished;
    std::vector<Check> checks;
    std::vector<Table> tables;
    std::vector<std::string> artifacts;
    std::vector<std::string> notices;

    bool failed() const {
        for (const Check& c : checks)
            if (c.verdict.outcome == Outcome::fail) return true;
        return false;
    }

    json to_json() const {
        json checks_json = json::array();
        for (const Check& c : checks) {
            checks_json.push_back({{"name", c.name}, {"verdict", c.verdict.str()}, {"detail", c.detail}});
        }
        return {{"name", name},         {"module", module},         {"operation", operation},
                {"seed", seed},         {"spec_hash", spec_hash},   {"started", started},
                {"finished", finished}, {"checks", checks_json},    {"artifacts", artifacts},
                {"notices", notices},   {"status", failed() ? "fail" : "pass"}};
    }
};

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[40];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    char out[48];
    std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
    return out;
}

inline void append_run_log(const std::filesystem::path& file, const RunRecord& r) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::app);
    if (!out) fail(ErrorCode::io_error, "cannot open run log " + file.string());
    out << r.to_json().dump() << '\n';
}

}  // namespace aclab::harness
