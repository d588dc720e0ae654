#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "hypflow/builders.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

std::string bin_path() {
    const char* p = std::getenv("HYPFLOW_BIN");
    REQUIRE_MESSAGE(p != nullptr, "HYPFLOW_BIN must point at the hypflow binary");
    return p;
}

std::string tmp_dir() {
    const char* p = std::getenv("HYPFLOW_TMP");
    return p ? p : "/tmp";
}

RunResult run(const std::string& args) {
    const std::string cmd = bin_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof(buf), pipe)) res.output.append(buf, n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool exists(const std::string& path) { return std::ifstream(path).good(); }

}  // namespace

TEST_CASE("cli delta: tripod file is 0-hyperbolic, the 4-cycle is 1") {
    const std::string tripod_file = tmp_dir() + "/tripod.json";
    {
        std::ofstream f(tripod_file);
        f << hypflow::build_tripod(2, 3, 4)->to_json().dump();
    }
    const auto tri = run("delta --space " + tripod_file + " --exact");
    CHECK(tri.exit_code == 0);
    CHECK(tri.output.find("delta_hat = 0 ") != std::string::npos);

    const auto c4 = run("delta --space cycle --cycle-n 4 --cycle-w 1 --exact");
    CHECK(c4.exit_code == 0);
    CHECK(c4.output.find("delta_hat = 1 ") != std::string::npos);
}

TEST_CASE("cli delta: half-plane sampling is byte-deterministic per seed") {
    const std::string args =
        "delta --space halfplane --box -5,5,0.1,5 --points 200 --samples 200 --seed 42";
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("delta_hat = ") != std::string::npos);

    const auto c = run("delta --space halfplane --box -5,5,-1,5 --samples 10 --seed 1");
    CHECK(c.exit_code == 2);  // invalid box (v_min <= 0)
}

TEST_CASE("cli prox: path examples and saturation") {
    const auto r = run("prox --space path --x 3 --tau 1");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["y"]["offset"].get<double>() == doctest::Approx(2).epsilon(1e-6));

    const auto sat = run("prox --space path --x 3 --tau 50");
    CHECK(sat.exit_code == 0);
    const auto js = nlohmann::json::parse(sat.output);
    CHECK(js["y"] == nlohmann::json{{"vertex", 0}});

    const auto bad = run("prox --space path --x 3 --tau 1 --objective '{\"type\":\"nope\"}'");
    CHECK(bad.exit_code == 2);
    const auto bad2 = run("prox --space path --x 3 --tau 1 --objective '{\"type\":"
                          "\"distance\",\"p\":{\"vertex\":0}}'");
    CHECK(bad2.exit_code == 2);  // missing field "a"
}

TEST_CASE("cli flow: contraction trace and degenerate budgets") {
    const auto r = run(
        "flow --space path --objective '{\"type\":\"sqdist\",\"p\":{\"vertex\":0},\"K\":1.0,"
        "\"R\":10.0}' --x0 3 --tau 2 --epsilon 0.05 --max-iter 8");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.output);
    std::string header, row0, row1, row2;
    std::getline(lines, header);
    std::getline(lines, row0);
    std::getline(lines, row1);
    std::getline(lines, row2);
    CHECK(header == "iter,f_value,dist_to_p,displacement,moreau_value");
    CHECK(row0.rfind("0,4.5,3,0,", 0) == 0);
    CHECK(row1.find(",0.99999998") != std::string::npos);   // dist_to_p ~ 1
    CHECK(row2.find(",0.33333332") != std::string::npos);   // dist_to_p ~ 1/3

    const auto single = run("flow --space path --x0 0 --tau 1 --epsilon 0.5 --max-iter 10");
    CHECK(single.exit_code == 0);
    CHECK(single.output.find("\n1,") == std::string::npos);  // single row

    const auto budget = run("flow --space path --x0 3 --tau 1 --epsilon 0.5 --max-iter 0");
    CHECK(budget.exit_code == 0);
}

TEST_CASE("cli verify: tree suite passes, unknown suite exits 2") {
    const std::string bundle = tmp_dir() + "/verify_bundle.json";
    const std::string csv = tmp_dir() + "/verify.csv";
    std::remove(bundle.c_str());
    std::remove(csv.c_str());

    const auto ok = run("verify --suite conv --space tree --trials 10 --seed 7 --out " + bundle +
                        " --csv " + csv);
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("fail=0") != std::string::npos);
    REQUIRE(exists(bundle));
    const auto j = nlohmann::json::parse(slurp(bundle));
    CHECK(j["format"] == 1);
    CHECK(j["reports"].size() == 10);
    CHECK(slurp(csv).find("trial,theorem,pass") == 0);

    // identical invocation reproduces identical bytes
    const std::string bundle2 = tmp_dir() + "/verify_bundle2.json";
    const auto again = run("verify --suite conv --space tree --trials 10 --seed 7 --out " +
                           bundle2 + " --csv " + csv);
    CHECK(again.exit_code == 0);
    CHECK(slurp(bundle) == slurp(bundle2));

    // unknown suite: exit 2, no bundle written
    const std::string nope = tmp_dir() + "/nope_bundle.json";
    std::remove(nope.c_str());
    const auto bad = run("verify --suite nope --trials 5 --out " + nope);
    CHECK(bad.exit_code == 2);
    CHECK(!exists(nope));
}

TEST_CASE("cli verify: perturbed contraction suite") {
    const auto r = run(
        "verify --suite contraction --space perturbed --delta-build 0.05 --trials 10 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("fail=0") != std::string::npos);
}
