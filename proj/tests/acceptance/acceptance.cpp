// One line per acceptance criterion: PASS/FAIL, wall time and the deciding numbers.
// Criteria 1-8 run the builtin experiments with their pinned defaults; criterion 9 reruns every builtin
// into a second output root and compares the CSV bytes.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "aclab/aclab.hpp"

using namespace aclab;
using namespace aclab::harness;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> builtins;
    double limit_s;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "model Laplacians vs finite differences", {"prop0-laplacians"}, 1.0},
        {2, "example J matrix and action rows", {"part3-matrix"}, 1.0},
        {3, "disc solver on the example structure", {"disc-example"}, 60.0},
        {4, "log-log inequality and psh on discs", {"prop1-inequality"}, 300.0},
        {5, "counterexample mechanism", {"part3-attack-logz2", "part3-crosscheck"}, 120.0},
        {6, "LL Hessian bound", {"ll-hessian"}, 10.0},
        {7, "measure lab", {"measure-a1", "measure-a2", "measure-a3", "measure-remark1"}, 300.0},
        {8, "Nijenhuis tensor and normalization", {"nijenhuis-normalization"}, 300.0},
    };

    const fs::path base = fs::temp_directory_path() / ("aclab_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(base);
    const RunOptions first{base / "first", true}, second{base / "second", true};

    int failures = 0;
    std::vector<std::string> done;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        std::vector<std::string> details, notes;
        std::vector<Execution> runs;
        try {
            for (const std::string& b : c.builtins)
                for (const ExperimentSpec& s : harness::builtin(b)) runs.push_back(execute(s));
        } catch (const std::exception& e) {
            ok = false;
            details.push_back(std::string("error: ") + e.what());
        }
        const double elapsed = seconds_since(t0);
        std::size_t passed = 0, total = 0;
        for (const Execution& ex : runs) {
            for (const Check& k : ex.record.checks) {
                if (k.verdict.outcome == Outcome::skipped) {
                    notes.push_back(ex.record.name + "/" + k.name + " " + k.verdict.str());
                    continue;
                }
                ++total;
                if (k.verdict.outcome == Outcome::pass) {
                    ++passed;
                } else {
                    ok = false;
                    details.push_back(ex.record.name + "/" + k.name + ": " + k.verdict.reason);
                }
            }
        }
        if (total == 0) ok = false;
        if (elapsed > c.limit_s) {
            ok = false;
            details.push_back("runtime limit " + format_number(c.limit_s) + " s exceeded");
        }
        std::printf("%s  criterion %d  %-42s %8.3f s  (%zu/%zu checks)\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), elapsed,
                    passed, total);
        for (const Execution& ex : runs)
            for (const Check& k : ex.record.checks)
                if (k.verdict.outcome != Outcome::skipped) std::printf("      %s/%s: %s\n", ex.record.name.c_str(), k.name.c_str(), k.detail.c_str());
        for (const std::string& d : details) std::printf("      FAILED %s\n", d.c_str());
        for (const std::string& n : notes) std::printf("      NOTE %s\n", n.c_str());
        std::fflush(stdout);
        failures += !ok;
        for (Execution& ex : runs) persist(std::move(ex), first);
        for (const std::string& b : c.builtins) done.push_back(b);
    }

    // Criterion 9: every builtin twice with the same seed, byte-identical CSVs.
    {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        std::size_t compared = 0;
        std::vector<std::string> details;
        try {
            for (const auto& [name, specs] : builtins()) {
                if (std::find(done.begin(), done.end(), name) == done.end()) run_all(specs, first);
                run_all(specs, second);
                for (const ExperimentSpec& s : specs) {
                    const fs::path a = first.output_root / s.name, b = second.output_root / s.name;
                    for (const auto& e : fs::directory_iterator(a)) {
                        if (e.path().extension() != ".csv") continue;
                        ++compared;
                        const fs::path other = b / e.path().filename();
                        if (!fs::exists(other) || slurp(e.path()) != slurp(other)) {
                            ok = false;
                            details.push_back(s.name + "/" + e.path().filename().string() + " differs");
                        }
                    }
                }
            }
        } catch (const std::exception& e) {
            ok = false;
            details.push_back(std::string("error: ") + e.what());
        }
        if (compared == 0) ok = false;
        std::printf("%s  criterion 9  %-42s %8.3f s  (%zu CSV files compared)\n", ok ? "PASS" : "FAIL",
                    "determinism of builtin CSV outputs", seconds_since(t0), compared);
        for (const std::string& d : details) std::printf("      FAILED %s\n", d.c_str());
        failures += !ok;
    }

    fs::remove_all(base);
    std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
