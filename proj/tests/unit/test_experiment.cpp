#include "kse/experiment.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace ex = kse::experiment;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("kse_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("minimal configs parse") {
    const auto c = ex::parse_config(R"({"problem": 1, "mode": "solve", "N": 201, "k": 0.01, "T": 2})");
    CHECK(c.mode == ex::Mode::kSolve);
    CHECK(c.problem == 1);
    CHECK(c.n == std::vector<std::size_t>{201});
    CHECK(c.k == std::vector<double>{0.01});
    CHECK(c.final_time == 2.0);

    const auto s = ex::parse_config(R"({"mode": "stability", "y": "-20i"})");
    REQUIRE(s.y.size() == 1);
    CHECK(s.y[0] == ex::Complex(0.0, -20.0));

    const auto g = ex::parse_config(R"({"mode": "gre-table", "problem": 1, "N": 200, "k": 0.01})");
    CHECK(g.times == std::vector<double>{6.0, 8.0, 10.0, 12.0});
    CHECK(g.final_time == 12.0);
}

TEST_CASE("invalid configs are rejected") {
    auto bad = [](const char* text) { CHECK_THROWS_AS(ex::parse_config(text), ex::ConfigError); };
    bad(R"({"mode": "converge-time", "problem": 2, "N": 256, "k": [0.025, 0.01], "T": 10})");
    bad(R"({"mode": "solve", "problem": 1, "N": 201, "k": 0.01, "T": 2, "colour": 1})");
    bad(R"({"mode": "solve", "problem": 1, "N": 201, "k": 0.3, "T": 1})");
    bad(R"({"mode": "solve", "problem": 7, "N": 201, "k": 0.01, "T": 2})");
    bad(R"({"mode": "solve", "problem": 2, "N": 64, "k": 0.01, "T": 2, "beta": 0.5})");
    bad(R"({"mode": "solve", "problem": 1, "N": 201, "h": 0.5, "k": 0.01, "T": 2})");
    bad(R"({"mode": "solve", "problem": 1, "h": 0.3, "k": 0.01, "T": 2})");
    bad(R"({"mode": "fly", "problem": 1})");
    bad(R"({"problem": 1})");
    bad(R"({"mode": "stability", "y": "-20i", "resolution": 8})");
    bad(R"({"mode": "stability", "y": "abc"})");
    bad(R"({"mode": "stability"})");
    bad(R"({"mode": "stability", "y": 1, "problem": 2})");
    bad(R"({"mode": "converge-space-time", "problem": 2, "N": 64, "k": [0.1, 0.05], "T": 1})");
    bad(R"({"mode": "converge-space-time", "problem": 1, "h": [4, 2], "k": [0.1], "T": 1})");
    bad(R"({"mode": "solve", "problem": 1, "N": 201, "k": 0.01, "T": 2, "times": [3]})");
    bad("not json");
    bad("[1, 2]");
}

TEST_CASE("complex parsing") {
    CHECK(ex::parse_complex("-20i") == ex::Complex(0.0, -20.0));
    CHECK(ex::parse_complex("5i") == ex::Complex(0.0, 5.0));
    CHECK(ex::parse_complex("i") == ex::Complex(0.0, 1.0));
    CHECK(ex::parse_complex("-i") == ex::Complex(0.0, -1.0));
    CHECK(ex::parse_complex("-2") == ex::Complex(-2.0, 0.0));
    CHECK(ex::parse_complex("1-3i") == ex::Complex(1.0, -3.0));
    CHECK(ex::parse_complex("1e-2+2.5e1i") == ex::Complex(0.01, 25.0));
    CHECK(ex::parse_complex(" 3 + 4i ") == ex::Complex(3.0, 4.0));
    CHECK_THROWS_AS(ex::parse_complex(""), ex::ConfigError);
    CHECK_THROWS_AS(ex::parse_complex("2x"), ex::ConfigError);
    for (ex::Complex y : {ex::Complex(0.1, -0.3), ex::Complex(0, 5), ex::Complex(-2, 0), ex::Complex(1.0 / 3.0, 2.0 / 7.0)}) {
        CHECK(ex::parse_complex(ex::format_complex(y)) == y);
    }
    CHECK(ex::format_complex({0.0, -20.0}) == "-20i");
    CHECK(ex::format_complex({-2.0, 0.0}) == "-2");
}

TEST_CASE("configs round-trip through serialization") {
    for (const auto& name : ex::preset_names()) {
        const auto c = ex::preset(name);
        CHECK_MESSAGE(ex::parse_config(ex::serialize_config(c)) == c, name);
    }
    auto c = ex::parse_config(R"({"mode": "stability", "y": ["-5i", 0.25], "window": [-3, 1, -2, 2],
                                  "resolution": 40, "output": "o"})");
    CHECK(ex::parse_config(ex::serialize_config(c)) == c);
    CHECK_THROWS_AS(ex::preset("nope"), ex::ConfigError);
}

TEST_CASE("overrides") {
    const auto text = ex::apply_overrides(R"({"mode": "solve", "problem": 1})",
                                          {"N=51", "k=0.01", "T=0.1", "output=runs/a"});
    const auto c = ex::parse_config(text);
    CHECK(c.n == std::vector<std::size_t>{51});
    CHECK(c.output == "runs/a");
    CHECK_THROWS_AS(ex::apply_overrides("{}", {"novalue"}), ex::ConfigError);
    const auto y = ex::parse_config(ex::apply_overrides("{}", {"mode=stability", "y=-20i"}));
    CHECK(y.y[0] == ex::Complex(0.0, -20.0));
}

TEST_CASE("runs write deterministic reports and tables") {
    const auto c = ex::parse_config(
        R"({"mode": "converge-space-time", "problem": 1, "h": [4, 2], "k": [0.05, 0.025], "T": 0.5})");
    const auto d1 = scratch("det1");
    const auto d2 = scratch("det2");
    const auto r1 = ex::run(c, d1);
    const auto r2 = ex::run(c, d2);
    CHECK(r1.exit_code == ex::kExitOk);
    CHECK(r1.report_json == r2.report_json);
    CHECK(slurp(d1 / "report.json") == slurp(d2 / "report.json"));
    CHECK(fs::exists(d1 / "timings.json"));
    const auto table = slurp(d1 / "table.csv");
    CHECK(table.rfind("h,N,k,T,max_error,order,cpu_loop_s\n", 0) == 0);
    CHECK(table.find("\n4,26,0.05,0.5,") != std::string::npos);
}

TEST_CASE("solve writes field snapshots") {
    const auto c = ex::parse_config(
        R"({"mode": "solve", "problem": 1, "h": 2, "k": 0.05, "T": 0.5, "snapshots": 0.25})");
    const auto d = scratch("solve");
    CHECK(ex::run(c, d).exit_code == 0);
    CHECK(fs::exists(d / "field_t0.csv"));
    CHECK(fs::exists(d / "field_t0.25.csv"));
    CHECK(fs::exists(d / "field_t0.5.csv"));
    CHECK(slurp(d / "field_t0.5.csv").rfind("x,u,exact\n", 0) == 0);
}

TEST_CASE("time convergence, GRE table and stability modes") {
    const auto d = scratch("modes");
    const auto t = ex::parse_config(
        R"({"mode": "converge-time", "problem": 3, "N": 41, "k": [0.02, 0.01], "T": 0.2})");
    CHECK(ex::run(t, d / "t").exit_code == 0);
    CHECK(slurp(d / "t" / "table.csv").rfind("N,h,k,T,E_k,order,cpu_loop_s\n", 0) == 0);

    const auto g = ex::parse_config(
        R"({"mode": "gre-table", "problem": 1, "N": 51, "k": 0.05, "times": [0.5, 1]})");
    CHECK(ex::run(g, d / "g").exit_code == 0);
    CHECK(slurp(d / "g" / "report.json").find("\"gre\"") != std::string::npos);

    const auto s = ex::parse_config(R"({"mode": "stability", "y": ["-2", "5i"], "resolution": 24})");
    CHECK(ex::run(s, d / "s").exit_code == 0);
    CHECK(fs::exists(d / "s" / "stability_y-2.csv"));
    CHECK(fs::exists(d / "s" / "boundary_y5i.csv"));
}

TEST_CASE("unwritable output is an I/O error") {
    const auto blocker = scratch("blocker");
    std::ofstream(blocker) << "x";
    const auto c = ex::parse_config(R"({"mode": "stability", "y": "0", "resolution": 16})");
    CHECK_THROWS_AS(ex::run(c, blocker / "sub"), ex::IoError);
}
