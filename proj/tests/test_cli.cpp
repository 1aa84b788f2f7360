// End-to-end tests for the parenc command-line tool.
//
// Each case invokes the installed binary through popen(), captures combined
// stdout/stderr, and checks exit codes and printed certificates against the
// library-level results that the unit suites already pin down.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef PARENC_BIN
#error "PARENC_BIN must point at the parenc executable"
#endif
#ifndef PROBLEMS_DIR
#error "PROBLEMS_DIR must point at the bundled problem files"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(PARENC_BIN) + " " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.output.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string problem_path(const char* name) {
    return std::string(PROBLEMS_DIR) + "/" + name;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

// Writes a scratch file into the test working directory and returns its path.
std::string write_file(const std::string& name, const std::string& text) {
    std::ofstream out(name);
    REQUIRE(out.good());
    out << text;
    return name;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

double to_double(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

}  // namespace

TEST_CASE("contract refines the circle box and proves existence") {
    const std::string csv = "cli_contract_trace.csv";
    RunResult r = run_cli("contract --problem " + problem_path("example1.prob") +
                          " --csv " + csv);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "existence step: 3"));
    CHECK(contains(r.output, "status: existence proved"));
    CHECK(contains(r.output, "final enclosure: ([-0.078,0.078], [0.826,0.906])"));

    auto lines = read_lines(csv);
    REQUIRE(lines.size() >= 5);
    CHECK(lines[0] == "k,x1_lo,x1_hi,x2_lo,x2_hi,width_norm,existence");
    CHECK(split_csv(lines[1])[0] == "0");

    // The last recorded box must settle onto the known tight enclosure.
    auto last = split_csv(lines.back());
    REQUIRE(last.size() == 7);
    CHECK(std::fabs(to_double(last[1]) - (-0.074)) < 5e-3);
    CHECK(std::fabs(to_double(last[2]) - 0.075) < 5e-3);
    CHECK(std::fabs(to_double(last[3]) - 0.831) < 5e-3);
    CHECK(std::fabs(to_double(last[4]) - 0.901) < 5e-3);

    bool saw_existence = false;
    for (std::size_t i = 1; i < lines.size(); ++i)
        if (split_csv(lines[i]).back() == "1") saw_existence = true;
    CHECK(saw_existence);
    std::remove(csv.c_str());
}

TEST_CASE("the krawczyk operator proves existence one step earlier") {
    RunResult r = run_cli("contract --operator krawczyk --problem " +
                          problem_path("example1.prob"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "existence step: 2"));
    CHECK(contains(r.output, "status: existence proved"));

    RunResult ri = run_cli("contract --operator krawczyk --krawczyk-intersect --problem " +
                           problem_path("example1.prob"));
    CHECK(ri.exit_code == 0);
    CHECK(contains(ri.output, "status: existence proved"));
}

TEST_CASE("an empty intersection is reported with exit code 2") {
    const std::string path = write_file("cli_empty_case.prob",
                                        "vars x;\n"
                                        "params a in [0.9, 1.1];\n"
                                        "box x in [5, 6];\n"
                                        "eq x - a;\n");
    RunResult r = run_cli("contract --problem " + path);
    CHECK(r.exit_code == 2);
    CHECK(contains(r.output, "status: empty"));
    CHECK(contains(r.output, "final enclosure: (empty)"));
    std::remove(path.c_str());
}

TEST_CASE("contract requires a box declaration") {
    RunResult r = run_cli("contract --problem " + problem_path("example2.prob"));
    CHECK(r.exit_code == 64);
    CHECK(contains(r.output, "no box declaration"));
}

TEST_CASE("compare emits the width table") {
    const std::string csv = "cli_compare.csv";
    RunResult r = run_cli("compare --problem " + problem_path("example1.prob") +
                          " --csv " + csv);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "peak ratio"));

    auto lines = read_lines(csv);
    REQUIRE(lines.size() == 22);  // header + steps 0..20
    CHECK(lines[0] == "k,hs_width,kr_width,ratio");

    double peak = 0.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto f = split_csv(lines[i]);
        REQUIRE(f.size() == 4);
        CHECK(to_double(f[0]) == doctest::Approx(double(i - 1)));
        const double hs = to_double(f[1]);
        const double kr = to_double(f[2]);
        const double ratio = to_double(f[3]);
        CHECK(hs <= kr);           // the sharper operator never loses
        CHECK(ratio >= -1e-12);    // nonnegative up to roundoff
        if (i == 1) CHECK(ratio == 0.0);
        peak = std::max(peak, ratio);
    }
    CHECK(peak >= 0.15);
    CHECK(peak <= 0.25);
    CHECK(to_double(split_csv(lines.back())[3]) < 1e-10);  // both converged
    std::remove(csv.c_str());
}

TEST_CASE("sensitivity certifies the circle problem from its nominal point") {
    RunResult r = run_cli("sensitivity --problem " + problem_path("example2.prob"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "existence first proved at iteration 4"));
    CHECK(contains(r.output, "certified enclosure: ([-0.078,0.078], [0.826,0.906])"));
}

TEST_CASE("sensitivity fails honestly when the budget is too small") {
    RunResult r = run_cli("sensitivity --problem " + problem_path("example2.prob") +
                          " --kmax 2");
    CHECK(r.exit_code == 1);
    CHECK(contains(r.output, "FAILED (returned whole space)"));
}

TEST_CASE("sensitivity requires a nominal declaration") {
    RunResult r = run_cli("sensitivity --problem " + problem_path("example1.prob"));
    CHECK(r.exit_code == 64);
    CHECK(contains(r.output, "no nominal declaration"));
}

TEST_CASE("check echoes the parsed system and its derivatives") {
    RunResult r = run_cli("check --problem " + problem_path("example1.prob"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "2 equations, 2 variables, 3 parameters"));
    CHECK(contains(r.output, "df1/dx1 = 2*(x1 + a1)"));
    CHECK(contains(r.output, "df2/da3 = -(2*a3)"));
    CHECK(contains(r.output, "a3 in [0.975,1.025]"));
    CHECK(contains(r.output, "x1 in [-0.22,0.22]"));
}

TEST_CASE("syntax errors carry line and column information") {
    const std::string path = write_file("cli_bad.prob",
                                        "vars x;\n"
                                        "params a in [0,1];\n"
                                        "eq x +;\n");
    RunResult r = run_cli("check --problem " + path);
    CHECK(r.exit_code == 64);
    CHECK(contains(r.output, "(line 3, column 7)"));
    std::remove(path.c_str());
}

TEST_CASE("empty and missing problem files are diagnosed") {
    const std::string path = write_file("cli_nothing.prob", "");
    RunResult r = run_cli("check --problem " + path);
    CHECK(r.exit_code == 64);
    CHECK(contains(r.output, "no equations declared"));
    std::remove(path.c_str());

    RunResult m = run_cli("check --problem cli_does_not_exist.prob");
    CHECK(m.exit_code == 64);
    CHECK(contains(m.output, "cannot open problem file"));
}

TEST_CASE("--precision widens the printed enclosure outward") {
    RunResult r = run_cli("contract --problem " + problem_path("example1.prob") +
                          " --precision 6");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "([-0.077257,0.077257], [0.826673,0.905378])"));
}

TEST_CASE("usage errors are rejected") {
    CHECK(run_cli("contract").exit_code != 0);           // --problem is required
    CHECK(run_cli("bogus-subcommand").exit_code != 0);
    CHECK(run_cli("contract --problem x --operator newton").exit_code != 0);
    CHECK(run_cli("sensitivity --problem x --delta 0.5").exit_code != 0);
}
