// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>

#include "pcsimp/cli.hpp"
#include "pcsimp/io.hpp"

namespace fs = std::filesystem;
using pcsimp::cli::run;

namespace {

fs::path temp_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("pcsimp_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::map<std::string, double> read_report(const fs::path& p) {
    std::map<std::string, double> out;
    std::ifstream in(p);
    std::string key;
    double value;
    while (in >> key >> value) out[key] = value;
    return out;
}

std::string path(const std::string& name) { return (temp_dir() / name).string(); }

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("gen produces identical bytes for identical seeds") {
    REQUIRE(run({"gen", "--shape", "cube", "--count", "2000", "--seed", "7", "--output",
                 path("gen_a.ply")}) == 0);
    REQUIRE(run({"gen", "--shape", "cube", "--count", "2000", "--seed", "7", "--output",
                 path("gen_b.ply")}) == 0);
    CHECK(slurp(path("gen_a.ply")) == slurp(path("gen_b.ply")));
    CHECK(slurp(path("gen_a.ply.labels")) == slurp(path("gen_b.ply.labels")));

    REQUIRE(run({"gen", "--shape", "cube", "--count", "2000", "--seed", "8", "--output",
                 path("gen_c.ply")}) == 0);
    CHECK(slurp(path("gen_a.ply")) != slurp(path("gen_c.ply")));
}

TEST_CASE("gen label contracts per shape") {
    REQUIRE(run({"gen", "--shape", "sphere", "--count", "3000", "--seed", "1", "--output",
                 path("sphere.ply")}) == 0);
    const std::string sphere_labels = slurp(path("sphere.ply.labels"));
    CHECK(sphere_labels.find('1') == std::string::npos);

    REQUIRE(run({"gen", "--shape", "cube", "--count", "20000", "--seed", "2", "--output",
                 path("cube.ply")}) == 0);
    const std::string cube_labels = slurp(path("cube.ply.labels"));
    const auto edge = static_cast<double>(std::count(cube_labels.begin(), cube_labels.end(), '1'));
    CHECK(edge / 20000.0 >= 0.02);
    CHECK(edge / 20000.0 <= 0.10);

    CHECK(run({"gen", "--shape", "torus", "--count", "10", "--output", path("t.ply")}) != 0);
}

TEST_CASE("simplify at rate one returns the input") {
    REQUIRE(run({"gen", "--shape", "sphere", "--count", "1200", "--seed", "3", "--output",
                 path("in.xyz")}) == 0);
    REQUIRE(run({"simplify", "--input", path("in.xyz"), "--output", path("out.xyz"), "--rate",
                 "1.0", "--k", "6"}) == 0);
    const auto in = pcsimp::read_cloud(path("in.xyz"));
    const auto out = pcsimp::read_cloud(path("out.xyz"));
    REQUIRE(out.size() == in.size());
    for (int i = 0; i < in.size(); ++i) CHECK(out[i] == in[i]);

    const auto report = read_report(path("out.xyz.stats"));
    CHECK(report.at("input_points") == 1200);
    CHECK(report.at("output_points") == 1200);
    CHECK(report.count("feature_mass_retained") == 1);
    CHECK(report.count("wall_time_s") == 1);
}

TEST_CASE("simplify writes the requested rate and stats") {
    REQUIRE(run({"gen", "--shape", "cube", "--count", "2500", "--seed", "4", "--output",
                 path("c.ply")}) == 0);
    for (const char* method : {"proposed", "uniform", "contour"}) {
        const std::string out = path(std::string("c_") + method + ".ply");
        REQUIRE(run({"simplify", "--input", path("c.ply"), "--output", out, "--rate", "0.2",
                     "--method", method, "--k", "8", "--stats", out + ".report"}) == 0);
        CHECK(pcsimp::read_cloud(out).size() == 500);
        const auto report = read_report(out + ".report");
        CHECK(report.at("output_points") == 500);
        CHECK(report.count("degree_variance") == 1);
    }
}

TEST_CASE("invalid rates are usage errors") {
    CHECK(run({"simplify", "--input", path("in.xyz"), "--output", path("x.xyz"), "--rate",
               "1.5"}) != 0);
    CHECK(run({"simplify", "--input", path("in.xyz"), "--output", path("x.xyz"), "--rate",
               "0"}) != 0);
    CHECK(run({"simplify", "--input", path("missing_file.xyz"), "--output", path("x.xyz")}) != 0);
    CHECK(run({"frobnicate"}) != 0);
}

TEST_CASE("register reports one rmse per method and is seed-stable") {
    REQUIRE(run({"gen", "--shape", "cube", "--count", "1500", "--seed", "5", "--output",
                 path("r.ply")}) == 0);
    const std::vector<std::string> args = {
        "register", "--input", path("r.ply"),  "--rate",  "0.25", "--k", "6",
        "--seed",   "11",      "--stats",      path("r.stats")};
    REQUIRE(run(args) == 0);
    const auto report = read_report(path("r.stats"));
    REQUIRE(report.size() == 3);
    CHECK(report.count("rmse_original") == 1);
    CHECK(report.count("rmse_uniform") == 1);
    CHECK(report.count("rmse_proposed") == 1);

    const std::string first = slurp(path("r.stats"));
    REQUIRE(run(args) == 0);
    CHECK(slurp(path("r.stats")) == first);
}

TEST_CASE("register with the identity transform gives zero error") {
    REQUIRE(run({"gen", "--shape", "sphere", "--count", "900", "--seed", "6", "--output",
                 path("z.ply")}) == 0);
    REQUIRE(run({"register", "--input", path("z.ply"), "--rate", "0.5", "--k", "5", "--method",
                 "original", "--method", "uniform", "--stats", path("z.stats"), "--transform",
                 "1", "0", "0", "0", "1", "0", "0", "0", "1", "0", "0", "0"}) == 0);
    for (const auto& [key, value] : read_report(path("z.stats"))) CHECK(value < 1e-9);
}

TEST_CASE("compare writes one row per lambda plus monotonicity flags") {
    REQUIRE(run({"gen", "--shape", "cube", "--count", "2000", "--seed", "9", "--output",
                 path("sweep.ply")}) == 0);
    REQUIRE(run({"compare", "--input", path("sweep.ply"), "--output", path("sweep.txt"),
                 "--lambdas", "1e-3", "--rate", "0.2", "--k", "6"}) == 0);
    {
        std::istringstream table(slurp(path("sweep.txt")));
        std::string line;
        int lines = 0;
        while (std::getline(table, line))
            if (!line.empty()) ++lines;
        CHECK(lines == 1 + 1 + 2);  // header + one row + two flags
    }

    REQUIRE(run({"compare", "--input", path("sweep.ply"), "--output", path("sweep3.txt"),
                 "--lambdas", "1e-1,1e-3,1e-5", "--rate", "0.2", "--k", "6"}) == 0);
    const std::string table = slurp(path("sweep3.txt"));
    CHECK(std::count(table.begin(), table.end(), '\n') == 1 + 3 + 2);
    CHECK(table.find("flag_degree_variance_nonincreasing") != std::string::npos);
}

TEST_CASE("stats subcommand summarizes a cloud") {
    REQUIRE(run({"gen", "--shape", "cube", "--count", "800", "--seed", "10", "--output",
                 path("s.ply")}) == 0);
    REQUIRE(run({"stats", "--input", path("s.ply"), "--k", "6", "--stats", path("s.stats")}) == 0);
    const auto report = read_report(path("s.stats"));
    CHECK(report.at("points") == 800);
    CHECK(report.at("bbox_diagonal") > 1.6);
    CHECK(report.count("sigma") == 1);
}

TEST_CASE("config files supply defaults that flags override") {
    const fs::path cfg = temp_dir() / "run.ini";
    {
        std::ofstream out(cfg);
        out << "[simplify]\nrate=0.5\nk=6\n";
    }
    REQUIRE(run({"gen", "--shape", "sphere", "--count", "1000", "--seed", "12", "--output",
                 path("cfg.xyz")}) == 0);
    REQUIRE(run({"--config", cfg.string(), "simplify", "--input", path("cfg.xyz"), "--output",
                 path("cfg_out.xyz")}) == 0);
    CHECK(pcsimp::read_cloud(path("cfg_out.xyz")).size() == 500);

    REQUIRE(run({"--config", cfg.string(), "simplify", "--input", path("cfg.xyz"), "--output",
                 path("cfg_out2.xyz"), "--rate", "0.1"}) == 0);
    CHECK(pcsimp::read_cloud(path("cfg_out2.xyz")).size() == 100);
}

TEST_SUITE_END();
