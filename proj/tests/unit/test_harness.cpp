#include <fstream>
#include <sstream>

#include "test_util.hpp"

using namespace aclab;
using namespace aclab::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("aclab_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

}  // namespace

TEST(Schema, UnknownParameterNamesTheKey) {
    try {
        validate_params(find_operation("psh", "prop1").schema, {{"bogus", 1}});
        FAIL() << "no error";
    } catch (const LabError& e) {
        EXPECT_EQ(e.code(), ErrorCode::schema_error);
        EXPECT_NE(std::string(e.what()).find("params.bogus"), std::string::npos);
    }
}

TEST(Schema, WrongTypeAndUnknownOperation) {
    EXPECT_LAB_ERROR(validate_params(find_operation("counterexample", "attack").schema, {{"k2", "eight"}}), schema_error);
    EXPECT_LAB_ERROR(find_operation("psh", "nope"), schema_error);
}

TEST(Schema, DefaultsAreFilledIn) {
    const json p = validate_params(find_operation("counterexample", "attack").schema, json::object());
    EXPECT_TRUE(p.contains("k2"));
    EXPECT_TRUE(p.contains("mask"));
}

TEST(Spec, RoundTripAndErrors) {
    const ExperimentSpec s = make_spec("x", "psh", "laplacians", {{"radii", 5}}, 7);
    const ExperimentSpec back = spec_from_json(spec_to_json(s));
    EXPECT_EQ(back.name, "x");
    EXPECT_EQ(back.seed, 7u);
    EXPECT_EQ(back.params, s.params);
    json j = spec_to_json(s);
    j["extra"] = 1;
    EXPECT_LAB_ERROR(spec_from_json(j), schema_error);
    j = spec_to_json(s);
    j["schema_version"] = 99;
    EXPECT_LAB_ERROR(spec_from_json(j), schema_error);
    j = spec_to_json(s);
    j.erase("module");
    EXPECT_LAB_ERROR(spec_from_json(j), schema_error);
    EXPECT_EQ(specs_from_json({{"experiments", {spec_to_json(s), spec_to_json(s)}}}).size(), 2u);
}

TEST(Builtins, NamesResolve) {
    EXPECT_EQ(builtins().size(), 13u);
    EXPECT_EQ(harness::builtin("nijenhuis-normalization").size(), 3u);
    EXPECT_LAB_ERROR(harness::builtin("nope"), schema_error);
    for (const auto& [name, specs] : builtins())
        for (const ExperimentSpec& s : specs) EXPECT_NO_THROW(find_operation(s.module, s.operation)) << name;
}

TEST(PlotData, EmptyRecordHasHeaderOnly) { EXPECT_EQ(emit_plotdata(RunRecord{}), "series,x,y\n"); }

TEST(PlotData, LongFormatAndSkippedTables) {
    Table t("tab", {"r", "v", "kind"}, {"r", {"v"}, "kind"});
    t.add({1.0, 2.5, std::string("a")});
    t.add({2.0, 3.5, std::string("b")});
    Table bare("bare", {"x"});
    bare.add({1.0});
    RunRecord r;
    r.tables = {t, bare};
    std::vector<std::string> notes;
    EXPECT_EQ(emit_plotdata(r, &notes), "series,x,y\ntab/v/kind=a,1,2.5\ntab/v/kind=b,2,3.5\n");
    ASSERT_EQ(notes.size(), 1u);
    EXPECT_NE(notes[0].find("bare"), std::string::npos);
}

TEST(Csv, FormattingIsExactAndQuoted) {
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(format_number(-INFINITY), "-inf");
    Table t("t", {"a", "b"});
    t.add({std::string("x,y"), 3LL});
    EXPECT_EQ(to_csv(t, 5), "# seed: 5\na,b\n\"x,y\",3\n");
    EXPECT_LAB_ERROR(t.add({1.0}), invalid_argument);
}

TEST(Verdict, SkippedCarriesReason) {
    EXPECT_EQ(Verdict::skipped("why").str(), "skipped(why)");
    EXPECT_EQ(Verdict::of(false, "no").outcome, Outcome::fail);
}

TEST(Files, NumericCsvReader) {
    const fs::path d = scratch_dir("csv");
    spit(d / "ok.csv", "# comment\nx,y,mass\n0.5,0.25,1\n-0.5,0,2\n");
    const auto rows = read_numeric_csv((d / "ok.csv").string(), 3, 4);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1][0], -0.5);
    spit(d / "bad.csv", "0.5,abc,1\n");
    EXPECT_LAB_ERROR(read_numeric_csv((d / "bad.csv").string(), 3, 4), parse_error);
    spit(d / "short.csv", "0.5,1\n");
    EXPECT_LAB_ERROR(read_numeric_csv((d / "short.csv").string(), 3, 4), parse_error);
    EXPECT_LAB_ERROR(read_numeric_csv((d / "missing.csv").string(), 3, 4), io_error);
    fs::remove_all(d);
}

TEST(Files, MeasureDumpsChooseTheirMode) {
    const fs::path d = scratch_dir("measure");
    const PlaneGrid g(64, 1.0);
    spit(d / "pos.csv", "x,y,mass\n0.5,0.25,1\n-0.5,0,2\n");
    const GridMeasure m = measure_param((d / "pos.csv").string(), g);
    EXPECT_EQ(m.mode, MeasureMode::measure);
    EXPECT_EQ(m.name, "pos");
    EXPECT_NEAR(m.total_mass(), 3.0, 1e-15);
    spit(d / "signed.csv", "0.5,0.25,1\n-0.5,0,-2\n");
    EXPECT_EQ(measure_param((d / "signed.csv").string(), g).mode, MeasureMode::density);
    EXPECT_EQ(measure_param("circle", g).name, "circle");
    fs::remove_all(d);
}

TEST(Files, FatSetJsonRoundTrip) {
    const PlaneGrid g(16, 1.0);
    const FatSet e = FatSet::from_predicate(g, [](cplx z) { return z.real() > 0.1 * z.imag(); });
    const FatSet back = fat_set_from_json(json::parse(fat_set_to_json(e).dump()));
    EXPECT_EQ(back.grid.cells(), 16);
    EXPECT_EQ(back.mask, e.mask);
    EXPECT_LAB_ERROR(fat_set_from_json(json{{"cells", 16}}), parse_error);
}

TEST(Files, JetsFromCsv) {
    const fs::path d = scratch_dir("jets");
    spit(d / "jets.csv", "c1_re,c1_im,c2_re,c2_im,v1_re,v1_im,v2_re,v2_im,radius\n0,0,0.01,0,1,0,0.1,0,0.05\n");
    const auto jets = jets_from_csv((d / "jets.csv").string(), 2);
    ASSERT_EQ(jets.size(), 1u);
    EXPECT_EQ(jets[0].center(1), cplx(0.01));
    EXPECT_EQ(jets[0].derivative(1), cplx(0.1));
    EXPECT_EQ(jets[0].radius, 0.05);
    fs::remove_all(d);
}

TEST(Runner, WritesArtifactsAndRunLog) {
    const fs::path root = scratch_dir("run");
    const RunRecord r = run(make_spec("matrix", "structure", "matrix"), {root, true});
    EXPECT_FALSE(r.failed());
    for (const char* f : {"plotdata.csv", "spec.json", "checks.json"}) EXPECT_TRUE(fs::exists(root / "matrix" / f)) << f;
    const json logged = json::parse(slurp(root / "runs.jsonl"));
    EXPECT_EQ(logged.at("name"), "matrix");
    EXPECT_EQ(logged.at("status"), "pass");
    const json spec = json::parse(slurp(root / "matrix" / "spec.json"));
    EXPECT_EQ(spec_from_json(spec).module, "structure");
    fs::remove_all(root);
}

TEST(Runner, DomainErrorsBecomeFailingChecks) {
    const RunRecord r = run(make_spec("narrow", "psh", "prop1", {{"c", 1.0}, {"k", 2.0}}), {"unused", false});
    EXPECT_TRUE(r.failed());
    EXPECT_EQ(r.checks.back().name, "error");
}

TEST(Runner, InputErrorsPropagate) {
    EXPECT_LAB_ERROR(run(make_spec("bad", "psh", "prop1", {{"bogus", 1}}), {"unused", false}), schema_error);
    EXPECT_LAB_ERROR(run(make_spec("bad", "counterexample", "attack", {{"mask", "/nonexistent/mask.json"}}), {"unused", false}),
                     io_error);
}

TEST(Runner, DeterministicCsvAcrossRunsAndModes) {
    const fs::path a = scratch_dir("det_a"), b = scratch_dir("det_b");
    const std::vector<ExperimentSpec> specs{make_spec("p0", "psh", "laplacians"), make_spec("atk", "counterexample", "attack"),
                                            make_spec("rm", "measure", "remark1")};
    run_all(specs, {a, true}, false);
    run_all(specs, {b, true}, true);
    for (const ExperimentSpec& s : specs) {
        for (const auto& entry : fs::directory_iterator(a / s.name)) {
            if (entry.path().extension() != ".csv") continue;
            EXPECT_EQ(slurp(entry.path()), slurp(b / s.name / entry.path().filename())) << entry.path();
        }
    }
    fs::remove_all(a);
    fs::remove_all(b);
}
