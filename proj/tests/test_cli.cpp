#include "doctest.h"

#include "sge/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace sge;

namespace {

std::string problem_path(const std::string& name) { return std::string(SGE_PROBLEM_DIR) + "/" + name + ".problem"; }

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const SolveResult& solved(const std::string& name) {
    static std::map<std::string, SolveResult> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, run_solve_file(problem_path(name))).first;
    return it->second;
}

int branch_with_label(const Json& report, const std::string& label) {
    for (const auto& b : report.at("branches"))
        if (b.at("label") == label) return b.at("id").get<int>();
    return 0;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(SGE_CLI) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "sge_test_cli";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("problem files round trip") {
    for (const char* name : {"ytsf", "rd"}) {
        Problem p = load_problem(problem_path(name));
        std::string text = serialize_problem(p);
        Problem q = parse_problem(text);
        CHECK(q == p);
        CHECK(serialize_problem(q) == text);
    }
    Problem rd = load_problem(problem_path("rd"));
    CHECK(rd.parameters == std::vector<std::string>{"alpha", "beta", "gamma"});
    CHECK(rd.steps.empty());
    CHECK(rd.reference.size() == 3);
    CHECK(rd.reference[2].second.size() == 4);
}

TEST_CASE("problem file errors") {
    const std::string good = read_text(problem_path("rd"));
    auto error_line = [](const std::string& text) {
        try {
            parse_problem(text);
        } catch (const ProblemError& e) {
            return e.line;
        }
        return -1;
    };
    CHECK(error_line("[problem]\npde = u\n[nonsense]\n") == 3);
    CHECK(error_line("[problem]\npde = u\npde = u\n") == 3);
    CHECK(error_line("[options]\nseed = twelve\n") == 2);
    CHECK(error_line("name = x\n") == 1);
    CHECK(error_line("[problem]\nno equals sign\n") == 2);
    CHECK_THROWS_AS(parse_problem("[problem]\npde = D(u,x) + u^2\ncoordinates = x, x\n[frame]\ncoefficients = x:1\n"),
                    ProblemError);
    CHECK_THROWS_AS(parse_problem("[problem]\npde = D(u,x) + u^2\ncoordinates = x\n[frame]\ncoefficients = y:1\n"),
                    ProblemError);
    CHECK_THROWS_AS(parse_problem("[problem]\npde = D(u,x) + (u^2\ncoordinates = x\n[frame]\ncoefficients = x:1\n"),
                    ProblemError);
    CHECK_THROWS_AS(parse_problem("[problem]\npde = u\ncoordinates = x\n[frame]\ncoefficients = x:1\n[pipeline]\nsteps = "
                                  "integrate_twice\n"),
                    ProblemError);
}

TEST_CASE("solve reports") {
    const SolveResult& y = solved("ytsf");
    CHECK(y.exit_code == kExitOk);
    CHECK(y.report["balance"]["n"] == 2);
    CHECK(y.report["system"].size() == 9);
    int nontrivial = 0;
    for (const auto& b : y.report["branches"]) nontrivial += b["label"] != "trivial";
    CHECK(nontrivial >= 4);
    for (const char* c : {"case1", "case2", "case3", "case4"}) CHECK(branch_with_label(y.report, c) > 0);
    CHECK(y.report["verification"]["passed"] == true);

    const SolveResult& r = solved("rd");
    CHECK(r.exit_code == kExitOk);
    CHECK(r.report["balance"]["n"] == 1);
    CHECK(r.report["system"].size() == 7);
    for (const char* c : {"case1", "case2", "case3"}) CHECK(branch_with_label(r.report, c) > 0);
    for (const auto& b : r.report["branches"]) CHECK(b["symbolic_check"] == true);

    // byte-identical on a rerun
    CHECK(run_solve_file(problem_path("ytsf")).report.dump(2) == y.report.dump(2));
    CHECK(run_solve_file(problem_path("rd")).text == r.text);
}

TEST_CASE("golden reports") {
    for (const char* name : {"ytsf", "rd"}) {
        std::string golden = read_text(std::string(SGE_GOLDEN_DIR) + "/" + name + ".json");
        CHECK_MESSAGE(solved(name).report.dump(2) + "\n" == golden, name);
    }
}

TEST_CASE("failure classes map to exit codes") {
    SolveResult heat = run_solve_file(std::string(SGE_DATA_DIR) + "/heat.problem");
    CHECK(heat.exit_code == kExitInapplicable);
    CHECK(heat.report["status"] == "method-inapplicable");

    RunOptions tiny;
    tiny.max_pairs = 1;
    SolveResult capped = run_solve_file(problem_path("ytsf"), tiny);
    CHECK(capped.exit_code == kExitCapExceeded);
    CHECK(capped.report["status"] == "cap-exceeded");

    auto bad = scratch_dir() / "bad.problem";
    std::ofstream(bad) << "[problem]\npde = D(u,x) +\n";
    CHECK(run_solve_file(bad.string()).exit_code == kExitParse);

    CHECK(run_cli("solve " + std::string(SGE_DATA_DIR) + "/heat.problem --out " + scratch_dir().string()) ==
          kExitInapplicable);
    CHECK(run_cli("solve " + bad.string()) == kExitParse);
    CHECK(run_cli("solve " + problem_path("ytsf") + " --max-pairs 1 --out " + scratch_dir().string()) ==
          kExitCapExceeded);
    CHECK(run_cli("frobnicate") == kExitUsage);
    CHECK(run_cli("verify " + (scratch_dir() / "missing.json").string()) == kExitUsage);
}

TEST_CASE("verify") {
    const Json& rd = solved("rd").report;
    VerifyResult real = run_verify(rd);
    CHECK(real.exit_code == kExitOk);
    VerifyResult complex = run_verify(rd, {{"alpha", "1"}, {"beta", "1"}, {"gamma", "1"}});
    CHECK(complex.exit_code == kExitOk);
    for (const auto& b : complex.branches) {
        CHECK_FALSE(b.skipped);
        CHECK(b.report.max_residual <= 1e-8);
    }
    CHECK(run_verify(solved("ytsf").report).exit_code == kExitOk);

    // bindings missing from both the problem and the command line
    Problem unbound = load_problem(problem_path("rd"));
    unbound.bindings.clear();
    SolveResult s = run_solve(unbound);
    CHECK(s.report["verification"].is_null());
    try {
        run_verify(s.report);
        FAIL("expected a usage error");
    } catch (const UsageError& e) {
        CHECK(std::string(e.what()).find("alpha, beta, gamma") != std::string::npos);
    }

    // corrupted branch: B1 of a case-2 branch off by a factor
    Json broken = rd;
    int id = branch_with_label(rd, "case2");
    broken["branches"][id - 1]["assignment"]["B1"] = "3*gamma^-1*sqrt(-2*beta*gamma)";
    VerifyResult v = run_verify(broken);
    CHECK(v.exit_code == kExitVerifyFailed);
    CHECK(v.text.find("#" + std::to_string(id) + " case2: FAIL") != std::string::npos);
    int failed = 0;
    for (const auto& b : v.branches) failed += !b.skipped && !b.report.passed();
    CHECK(failed == 1);

    auto path = scratch_dir() / "broken.json";
    std::ofstream(path) << broken.dump(2);
    CHECK(run_cli("verify " + path.string()) == kExitVerifyFailed);
}

TEST_CASE("plot files") {
    const Json& y = solved("ytsf").report;
    int case1 = branch_with_label(y, "case1");
    std::string csv = run_plot(y, case1, parse_grid("eta:-5:5:201"));
    CHECK(csv == run_plot(y, case1, parse_grid("eta:-5:5:201")));
    CHECK(csv == read_text(std::string(SGE_GOLDEN_DIR) + "/ytsf_case1_eta.csv"));
    CHECK(csv.substr(0, 14) == "eta,re_u,im_u\n");
    CHECK(csv.back() == '\n');
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 202);

    int case3 = branch_with_label(y, "case3");
    CHECK(run_plot(y, case3, parse_grid("x:-3:3:31,t:-2:2:21,y=0,z=0")) ==
          read_text(std::string(SGE_GOLDEN_DIR) + "/ytsf_case3_surface.csv"));

    const Json& rd = solved("rd").report;
    int case2 = branch_with_label(rd, "case2");
    std::string peak = run_plot(rd, case2, parse_grid("x:-5:5:101,t=0"));
    CHECK(peak == read_text(std::string(SGE_GOLDEN_DIR) + "/rd_case2_x.csv"));
    CHECK(peak.find("\n0,2,0\n") != std::string::npos);

    CHECK_THROWS_AS(parse_grid("eta:-5:5:0"), UsageError);
    CHECK_THROWS_AS(parse_grid("eta:-5:5"), UsageError);
    CHECK_THROWS_AS(parse_grid("eta:a:5:3"), UsageError);
    CHECK_THROWS_AS(parse_grid("eta:-1:1:3,x:-1:1:3"), UsageError);
    CHECK_THROWS_AS(run_plot(rd, case2, parse_grid("q:-1:1:3")), UsageError);
    CHECK_THROWS_AS(run_plot(rd, 999, parse_grid("x:-1:1:3")), UsageError);

    auto out = scratch_dir() / "p.csv";
    auto report = scratch_dir() / "ytsf.json";
    std::ofstream(report) << y.dump(2);
    CHECK(run_cli("plot " + report.string() + " --branch " + std::to_string(case1) + " --grid eta:-5:5:201 --out " +
                  out.string()) == kExitOk);
    CHECK(read_text(out.string()) == csv);
    CHECK(run_cli("plot " + report.string() + " --branch 1 --grid eta:-5:5:0 --out " + out.string()) == kExitUsage);
}
