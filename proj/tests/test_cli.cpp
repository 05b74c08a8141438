#include <doctest.h>

#include "cli.hpp"

#include "birkhoff/json_io.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>
#include <unistd.h>

using namespace birkhoff;
using birkhoff::cli::run_cli;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const char* name)
        : path(std::filesystem::temp_directory_path() / (std::string(name) + "_" + std::to_string(::getpid()))) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void check_error_json(const Run& r, const std::string& kind) {
    CHECK(r.out.empty());
    const Json j = Json::parse(r.err);
    CHECK(j.size() == 2);
    CHECK(j.at("error") == kind);
    CHECK(j.at("message").is_string());
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help and exit codes") {
    const Run help = invoke({"--help"});
    CHECK(help.code == cli::kExitOk);
    CHECK(help.out.find("Exit codes") != std::string::npos);
    CHECK(help.err.empty());

    check_error_json(invoke({}), "parse");
    CHECK(invoke({}).code == cli::kExitParse);
    CHECK(invoke({"frobnicate"}).code == cli::kExitParse);
    CHECK(invoke({"preset", "no_such_preset"}).code == cli::kExitParse);
    CHECK(invoke({"divisors", "--K", "five"}).code == cli::kExitParse);

    const Run missing = invoke({"average", "/nonexistent/spec.json"});
    CHECK(missing.code == cli::kExitIo);
    check_error_json(missing, "io");

    const Run module = invoke({"shells", "--eta", "0"});
    CHECK(module.code == cli::kExitModule);
    check_error_json(module, "invalid_argument");

    const Run cex = invoke({"counterexample", "--n-min", "0"});
    CHECK(cex.code == cli::kExitModule);
}

TEST_CASE("malformed and inconsistent spec files") {
    TempDir dir("birkhoff_cli_spec");
    write_file_atomic(dir.file("bad.json"), "{\"observables\": [");
    const Run bad = invoke({"average", dir.file("bad.json")});
    CHECK(bad.code == cli::kExitParse);
    check_error_json(bad, "parse");

    write_file_atomic(dir.file("mismatch.json"),
                      R"({"observables": [{"kind": "sin"}], "rotations": ["golden", "one"]})");
    const Run mm = invoke({"average", dir.file("mismatch.json")});
    CHECK(mm.code == cli::kExitModule);
    check_error_json(mm, "dimension_mismatch");
}

TEST_CASE("average and sweep") {
    TempDir dir("birkhoff_cli_avg");
    write_file_atomic(dir.file("spec.json"), R"({"weight": "bump", "observables": [{"kind": "sin"}, {"kind": "sin"}],
        "rotations": ["golden", "one"], "theta0": [0.1], "N": 100})");
    const Run avg = invoke({"average", dir.file("spec.json")});
    REQUIRE(avg.code == 0);
    CHECK(avg.err.empty());
    const Json j = Json::parse(avg.out);
    CHECK(read_double(j.at("abs_error")) <= 1e-8);
    CHECK(read_double(j.at("scale")) == 100.0);

    const Run sweep = invoke({"sweep", dir.file("spec.json"), "--scales", "10,20,50"});
    REQUIRE(sweep.code == 0);
    const auto rows = parse_curve_csv(sweep.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[2].scale == 50.0);

    CHECK(invoke({"sweep", dir.file("spec.json"), "--scales", "50,20"}).code == cli::kExitModule);
}

TEST_CASE("equal speeds give an error column that does not decay") {
    TempDir dir("birkhoff_cli_equal");
    write_file_atomic(dir.file("equal.json"), R"({"name": "equal", "output": ")" + dir.path.string() + R"(",
        "spec": {"weight": "bump", "observables": [{"kind": "sin"}, {"kind": "sin"}],
                 "rotations": ["golden", "golden"], "theta0": [0.1]},
        "scales": [100, 200, 400, 800, 1600, 3200]})");
    const Run r = invoke({"run", dir.file("equal.json")});
    REQUIRE(r.code == 0);
    const auto rows = parse_curve_csv(read_file(dir.file("equal.csv")));
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows) CHECK(row.abs_error == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("preset config round-trips through run byte-identically") {
    TempDir dir("birkhoff_cli_preset");
    const Run printed = invoke({"--out", dir.path.string(), "preset", "fig1_golden", "--print-config"});
    REQUIRE(printed.code == 0);
    const Json configs = Json::parse(printed.out);
    REQUIRE(configs.size() == 2);

    const Run ran = invoke({"preset", "fig1_golden", "--out", dir.path.string()});
    REQUIRE(ran.code == 0);
    const std::string bump_csv = read_file(dir.file("fig1_golden_bump.csv"));
    const auto rows = parse_curve_csv(bump_csv);
    bool seen = false;
    for (const auto& row : rows) {
        if (row.scale == 100.0) {
            seen = true;
            CHECK(row.abs_error <= 1e-8);
        }
    }
    CHECK(seen);
    const Json fits = parse_json_text(read_file(dir.file("fig1_golden_bump_fits.json")));
    CHECK(fits.contains("fits"));

    const auto again = dir.path / "again";
    std::filesystem::create_directories(again);
    write_file_atomic(dir.file("config.json"), configs.at(0).dump());
    const Run rerun = invoke({"run", dir.file("config.json"), "--out", again.string()});
    REQUIRE(rerun.code == 0);
    CHECK(read_file((again / "fig1_golden_bump.csv").string()) == bump_csv);
}

TEST_CASE("resonant preset approaches one half") {
    TempDir dir("birkhoff_cli_resonant");
    REQUIRE(invoke({"preset", "cex_resonant", "--out", dir.path.string()}).code == 0);
    const auto rows = parse_curve_csv(read_file(dir.file("cex_resonant.csv")));
    REQUIRE(!rows.empty());
    CHECK(std::abs(rows.back().value - 0.5) < 1e-6);
    const auto quad = parse_curve_csv(read_file(dir.file("cex_resonant_quadrature.csv")));
    REQUIRE(!quad.empty());
    CHECK(std::abs(quad.back().value - 0.5) < 1e-6);
}

TEST_CASE("counterexample curve and fit") {
    TempDir dir("birkhoff_cli_cex");
    const Run curve = invoke({"counterexample", "--n-min", "5", "--n-max", "200"});
    REQUIRE(curve.code == 0);
    write_file_atomic(dir.file("cex.csv"), curve.out);
    const Run fitted = invoke({"fit", dir.file("cex.csv"), "--model", "power"});
    REQUIRE(fitted.code == 0);
    const Json j = Json::parse(fitted.out);
    CHECK(j.at("params").at("m").get<double>() == doctest::Approx(3.0).epsilon(0.1 / 3.0));

    const Run both = invoke({"fit", dir.file("cex.csv"), "--model", "power,stretched_exp"});
    REQUIRE(both.code == 0);
    CHECK(Json::parse(both.out).size() == 2);

    write_file_atomic(dir.file("headless.csv"), "1,2,3,4,5\n");
    CHECK(invoke({"fit", dir.file("headless.csv")}).code == cli::kExitParse);
}

TEST_CASE("divisors and shells") {
    const Run d = invoke({"divisors", "--rho", "golden,one", "--K", "5"});
    REQUIRE(d.code == 0);
    const Json j = Json::parse(d.out);
    CHECK(read_double(j.at("min_divisor")) == doctest::Approx(0.0901699).epsilon(1e-6));

    const Run s = invoke({"shells", "--eta", "2", "--max", "4"});
    REQUIRE(s.code == 0);
    CHECK(s.out == "nu,count\n1,4\n2,8\n3,12\n4,18\n");
}

TEST_CASE("audits") {
    const Run b = invoke({"audit", "boundedness", "--delta", "power:3", "--decay", "exp:3.14159", "--decay",
                          "exp:3.14159", "--m", "3"});
    REQUIRE(b.code == 0);
    CHECK(Json::parse(b.out).at("verdict") == "plateauing");

    const Run d = invoke({"audit", "boundedness", "--delta", "power:1", "--decay", "power:2", "--m", "3"});
    REQUIRE(d.code == 0);
    CHECK(Json::parse(d.out).at("verdict") == "diverging");

    CHECK(invoke({"audit", "boundedness", "--delta", "cubic", "--decay", "exp:1"}).code == cli::kExitParse);
    CHECK(invoke({"audit", "boundedness", "--delta", "power:1", "--decay", "exp:1", "--space", "hilbert"}).code ==
          cli::kExitParse);
}

}
