#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace {

std::string cli_path() {
    const char* env = std::getenv("SKYSHARE_CLI");
    REQUIRE(env != nullptr);
    return env;
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string out_path = "cli_test_stdout.txt";
    const std::string cmd =
        cli_path() + " " + args + " > " + out_path + " 2> cli_test_stderr.txt";
    const int status = std::system(cmd.c_str());
    std::ifstream f(out_path);
    std::stringstream ss;
    ss << f.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

std::string field(const std::string& csv_line, int index) {
    std::stringstream ss(csv_line);
    std::string cell;
    for (int i = 0; i <= index; ++i) std::getline(ss, cell, ',');
    return cell;
}

}  // namespace

TEST_CASE("eval with the ground tier only reproduces the closed form") {
    const auto r = run("eval --set uav.density=0 --target p1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("0.8555") != std::string::npos);
}

TEST_CASE("unknown scenario keys exit with the configuration code") {
    {
        std::ofstream f("cli_bad_key.json");
        f << R"({"lamda_u": 1e-4})";
    }
    CHECK(run("eval -f cli_bad_key.json").exit_code == 2);
    CHECK(run("eval --set uav.dansity=1").exit_code == 2);
    CHECK(run("eval --set beta=-1").exit_code == 2);
    CHECK(run("eval -f no_such_file.json").exit_code == 2);
    CHECK(run("bogus-subcommand").exit_code == 2);
    std::remove("cli_bad_key.json");
}

TEST_CASE("altitude sweep emits one well-formed row per grid point") {
    const auto r = run(
        "sweep --param uav.altitude --start 50 --stop 500 --step 50 "
        "--estimator analytic --out cli_sweep.csv");
    REQUIRE(r.exit_code == 0);
    const auto rows = lines(slurp("cli_sweep.csv"));
    REQUIRE(rows.size() == 11);
    CHECK(rows[0] ==
          "param,p1_analytic,p1_mc,p1_mc_stderr,p2_analytic,p2_mc,p2_mc_stderr,"
          "tc,feasible");
    double prev = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double h = std::strtod(field(rows[i], 0).c_str(), nullptr);
        CHECK(h > prev);
        prev = h;
        CHECK_FALSE(field(rows[i], 1).empty());   // p1_analytic present
        CHECK(field(rows[i], 2).empty());          // MC columns left blank
        CHECK_FALSE(field(rows[i], 8).empty());    // feasible column present
    }
    std::remove("cli_sweep.csv");
}

TEST_CASE("density sweep produces a nonincreasing ground-coverage column") {
    const auto r = run(
        "sweep --param uav.density --start 1e-5 --stop 1e-4 --step 1e-5 "
        "--estimator analytic --out cli_density.csv");
    REQUIRE(r.exit_code == 0);
    const auto rows = lines(slurp("cli_density.csv"));
    REQUIRE(rows.size() == 11);
    double prev = 2.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double p1 = std::strtod(field(rows[i], 1).c_str(), nullptr);
        CHECK(p1 <= prev);
        prev = p1;
    }
    std::remove("cli_density.csv");
}

TEST_CASE("thinning the slab under fixed projected density approaches 2D") {
    const auto r = run(
        "sweep --param uav.vertical_range --start 0.1 --stop 100.1 --step 20 "
        "--density-mode projected --estimator analytic "
        "--set uav.kind=3d --set uav.density=1e-6 --set uav.vertical_range=100 "
        "--out cli_slab.csv");
    REQUIRE(r.exit_code == 0);
    const auto rows = lines(slurp("cli_slab.csv"));
    REQUIRE(rows.size() >= 3);
    const auto p2_eval = run(
        "eval --set uav.altitude=100 --set uav.density=1e-4 --target p2");
    const double p2_2d =
        std::strtod(p2_eval.output.substr(p2_eval.output.rfind(' ')).c_str(),
                    nullptr);
    const double p2_thin = std::strtod(field(rows[1], 4).c_str(), nullptr);
    CHECK(std::abs(p2_thin - p2_2d) <= 1e-3);
    std::remove("cli_slab.csv");
}

TEST_CASE("optimize reports the best altitude and any vacant interval") {
    const auto open = run(
        "optimize --set search.h_min=50 --set search.h_max=200 "
        "--set search.h_step=50");
    CHECK(open.exit_code == 0);
    CHECK(open.output.find("best_altitude") != std::string::npos);

    const auto closed = run(
        "optimize --set search.h_min=50 --set search.h_max=200 "
        "--set search.h_step=50 --set search.coverage_floor=0.99");
    CHECK(closed.exit_code == 0);
    CHECK(closed.output.find("no feasible altitude") != std::string::npos);
    CHECK(closed.output.find("vacant_interval 50 200") != std::string::npos);
}

TEST_CASE("validate produces byte-identical CSV under a fixed seed") {
    const std::string args =
        "validate --n 2000 --rmax 2000 --set ground_density=1e-4";
    const auto a = run(args + " --seed 7 --out cli_val_a.csv");
    const auto b = run(args + " --seed 7 --out cli_val_b.csv");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    const std::string csv_a = slurp("cli_val_a.csv");
    CHECK(!csv_a.empty());
    CHECK(csv_a == slurp("cli_val_b.csv"));
    CHECK(a.output.find("agree") != std::string::npos);

    const auto c = run(args + " --seed 8 --out cli_val_c.csv");
    REQUIRE(c.exit_code == 0);
    CHECK(csv_a != slurp("cli_val_c.csv"));
    std::remove("cli_val_a.csv");
    std::remove("cli_val_b.csv");
    std::remove("cli_val_c.csv");
}
