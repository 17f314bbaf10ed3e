// Copyright 2026 The qobath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qob/cli/commands.hpp"

using namespace qob;
using namespace qob::cli;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qobath");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("qobath_test_" + name);
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("scenario presets") {
    SUBCASE("fig2a-zeta0") {
        const auto c = scenario_preset("fig2a-zeta0");
        CHECK(c.scenario == "fig2a-zeta0");
        CHECK(c.params.epsilon == 0.0);
        CHECK(c.params.gamma == 0.5);
        CHECK(c.params.delta == 0.5);
        CHECK(c.params.g0 == 0.0);
        CHECK(c.params.lambda == 0.25);
        CHECK(c.params.alpha == 2.0);
        CHECK(c.params.t_max == 100.0);
        CHECK(c.params.n_osc == 8);
    }
    SUBCASE("fig3a-lam0.1") {
        const auto c = scenario_preset("fig3a-lam0.1");
        CHECK(c.params.epsilon == 0.0);
        CHECK(c.params.delta == 2.0);
        CHECK(c.params.gamma == 0.5);
        CHECK(c.params.g0 == 0.02);
        CHECK(c.params.omega0 == 0.2);
        CHECK(c.params.zeta() == doctest::Approx(0.1));
        CHECK(c.params.alpha == 2.0);
        CHECK(c.params.lambda == doctest::Approx(0.05));
    }
    SUBCASE("families share their fixed parameters") {
        for (const auto& name : scenario_names()) {
            CAPTURE(name);
            const auto c = scenario_preset(name);
            CHECK_NOTHROW(c.params.validate());
            CHECK(c.params.gamma == 0.5);
            CHECK(c.params.alpha == 2.0);
            if (name.rfind("fig2", 0) == 0) {
                CHECK(c.params.delta == 0.5);
                CHECK(c.params.lambda == 0.25);
                CHECK(c.params.epsilon == (name[4] == 'a' ? 0.0 : 0.1));
                const double zeta = std::stod(name.substr(name.find("zeta") + 4));
                CHECK(c.params.zeta() == doctest::Approx(zeta));
                if (zeta > 0.0) CHECK(c.params.g0 == 0.02);
            } else {
                CHECK(c.params.delta == 2.0);
                CHECK(c.params.g0 == 0.02);
                CHECK(c.params.zeta() == doctest::Approx(0.1));
                const char panel = name[4];
                CHECK(c.params.epsilon == ((panel == 'a' || panel == 'c') ? 0.0 : 0.3));
                const double r = std::stod(name.substr(name.find("lam") + 3));
                CHECK(c.params.lambda == doctest::Approx(r * 0.5));
                if (panel == 'c' || panel == 'd') {
                    CHECK(c.params.n_osc == 4);
                    CHECK(c.t_c == 50.0);
                }
            }
        }
    }
    CHECK_THROWS_AS(scenario_preset("fig9"), ConfigError);
}

TEST_CASE("apply_overrides") {
    RunConfig c = scenario_preset("fig2a-zeta1");
    SUBCASE("derived keys resolve last, whatever their position") {
        apply_overrides(c, {{"zeta", "4"}, {"g0", "0.04"}, {"lambda_over_gamma", "2"}, {"gamma", "0.3"}});
        CHECK(c.params.g0 == 0.04);
        CHECK(c.params.omega0 == doctest::Approx(0.01));
        CHECK(c.params.gamma == 0.3);
        CHECK(c.params.lambda == doctest::Approx(0.6));
    }
    SUBCASE("zeta = 0 decouples the oscillator") {
        apply_overrides(c, {{"zeta", "0"}});
        CHECK(c.params.g0 == 0.0);
        CHECK(c.params.zeta() == 0.0);
    }
    SUBCASE("plain keys") {
        apply_overrides(c, {{"depth", "auto"}, {"seed", "7"}, {"n_osc", "3"}, {"simulate", "true"}});
        CHECK(c.auto_depth);
        CHECK(c.seed == 7);
        CHECK(c.params.n_osc == 3);
        CHECK(c.simulate);
        apply_overrides(c, {{"depth", "5"}});
        CHECK_FALSE(c.auto_depth);
        CHECK(c.params.hierarchy_depth == 5);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(apply_overrides(c, {{"colour", "1"}}), ConfigError);
        CHECK_THROWS_AS(apply_overrides(c, {{"dt", "fast"}}), ConfigError);
        CHECK_THROWS_AS(apply_overrides(c, {{"n_osc", "2.5"}}), ConfigError);
        CHECK_THROWS_AS(apply_overrides(c, {{"seed", "-1"}}), ConfigError);
        CHECK_THROWS_AS(apply_overrides(c, {{"zeta", "-1"}}), ConfigError);
        CHECK_THROWS_AS(parse_assignment("dt"), ConfigError);
        CHECK(parse_assignment("dt=0.1=x") == std::pair<std::string, std::string>{"dt", "0.1=x"});
    }
}

TEST_CASE("config files and precedence") {
    const auto path = temp_file("cfg.json", R"({"scenario": "fig2c-zeta2", "dt": 0.02, "t_max": 0.1, "record_every": 1})");
    const auto file = read_config_file(path.string());
    CHECK(file.scenario == "fig2c-zeta2");
    CHECK(file.entries.size() == 3);

    // file over preset, --set over file, dedicated flags over --set
    const auto r = run_cli({"dynamics", "--config", path.string(), "--set", "dt=0.05", "--t-max", "0.2"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    CHECK(l[1].find("\"scenario\":\"fig2c-zeta2\"") != std::string::npos);
    CHECK(l[1].find("\"dt\":0.05") != std::string::npos);
    CHECK(l[1].find("\"t_max\":0.2") != std::string::npos);
    CHECK(l.size() == 3 + 5);

    CHECK_THROWS_AS(read_config_file("/nonexistent/cfg.json"), ConfigError);
    CHECK_THROWS_AS(read_config_file(temp_file("bad.json", "{not json").string()), ConfigError);
    CHECK_THROWS_AS(read_config_file(temp_file("arr.json", "[1, 2]").string()), ConfigError);
    std::filesystem::remove(path);
}

TEST_CASE("emitted config block reads back to the same run") {
    const auto first = run_cli({"dynamics", "--scenario", "fig2a-zeta4", "--t-max", "0.3", "--set",
                                "zeta=3", "--set", "record_every=3"});
    REQUIRE(first.code == 0);
    const std::string header = lines(first.out)[1];
    const auto path = temp_file("roundtrip.json", header.substr(header.find('{')));
    const auto second = run_cli({"dynamics", "--config", path.string()});
    REQUIRE(second.code == 0);
    CHECK(second.out == first.out);
    std::filesystem::remove(path);
}

TEST_CASE("cmd_dynamics output format") {
    SUBCASE("--t-max 0 gives exactly one data row") {
        const auto r = run_cli({"dynamics", "--scenario", "fig2a-zeta0", "--t-max", "0"});
        REQUIRE(r.code == 0);
        const auto l = lines(r.out);
        REQUIRE(l.size() == 4);
        CHECK(l[0].rfind("#", 0) == 0);
        CHECK(l[1].rfind("# config: {", 0) == 0);
        CHECK(l[2] == "t,sigma_z,trace_err,purity");
        CHECK(l[3] == "0,1,0,1");
    }
    SUBCASE("rows follow the recording stride") {
        const auto r = run_cli({"dynamics", "--t-max", "1", "--set", "record_every=25"});
        REQUIRE(r.code == 0);
        const auto l = lines(r.out);
        REQUIRE(l.size() == 3 + 5);
        CHECK(l[4].rfind("0.25,", 0) == 0);
        CHECK(l.back().rfind("1,", 0) == 0);
    }
}

TEST_CASE("cmd_steady") {
    auto r = run_cli({"steady", "--scenario", "fig2c-zeta0"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["prediction"].get<double>() == doctest::Approx(-0.19612).epsilon(1e-4));
    CHECK(j["eta"].get<double>() == 1.0);
    CHECK_FALSE(j.contains("gap"));

    r = run_cli({"steady", "--scenario", "fig2a-zeta1"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["prediction"].get<double>() == 0.0);

    r = run_cli({"steady", "--scenario", "fig2c-zeta0", "--simulate", "--t-max", "2",
                 "--n-osc", "1"});
    REQUIRE(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["config"]["simulate"].get<bool>());
    CHECK(j["window"][0].get<double>() == doctest::Approx(1.6));
    CHECK(j["gap"].get<double>() ==
          doctest::Approx(std::abs(j["simulated_mean"].get<double>() - j["prediction"].get<double>())));
}

TEST_CASE("cmd_nonmarkov and sweep: deterministic JSON") {
    const std::vector<std::string> args{"nonmarkov", "--scenario", "fig3c-lam1", "--t-c", "2",
                                        "--samples", "5", "--seed", "11", "--n-osc", "2",
                                        "--depth", "2"};
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["seed"].get<int>() == 11);
    CHECK(j["t_c"].get<double>() == 2.0);
    REQUIRE(j["samples"].size() == 5);
    double best = 0.0;
    for (const auto& s : j["samples"]) best = std::max(best, s["N"].get<double>());
    CHECK(j["N"].get<double>() == best);
    CHECK(j["best"]["N"].get<double>() == best);

    const auto s = run_cli({"sweep", "--scenario", "fig3c-lam1", "--t-c", "2", "--samples", "3",
                            "--n-osc", "2", "--depth", "2", "--values", "0.1,2"});
    REQUIRE(s.code == 0);
    const auto sj = nlohmann::json::parse(s.out);
    CHECK(sj["key"] == "lambda_over_gamma");
    REQUIRE(sj["points"].size() == 2);
    CHECK(sj["points"][1]["config"]["lambda"].get<double>() == doctest::Approx(1.0));
    const bool expect = sj["points"][1]["N"].get<double>() <= sj["points"][0]["N"].get<double>();
    CHECK(sj["non_increasing"].get<bool>() == expect);
}

TEST_CASE("exit codes") {
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({"scenarios"}).code == 0);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"dynamics", "--scenario", "nope"}).code == 2);
    CHECK(run_cli({"dynamics", "--set", "gamma=-1"}).code == 2);
    CHECK(run_cli({"dynamics", "--dt", "zero"}).code == 2);
    CHECK(run_cli({"dynamics", "--t-max", "0", "--out", "/nonexistent/dir/x.csv"}).code == 2);

    const auto breach = run_cli({"dynamics", "--dt", "5", "--t-max", "500", "--n-osc", "6",
                                 "--set", "omega0=3", "--set", "g0=0.5"});
    CHECK(breach.code == 3);
    CHECK(breach.err.find("invariant breach") != std::string::npos);

    // strong coupling: the hierarchy is still moving at L = 30
    const auto conv = run_cli({"dynamics", "--n-osc", "1", "--depth", "auto", "--t-max", "10",
                               "--set", "gamma=8", "--set", "converge_tol=1e-6"});
    CHECK(conv.code == 4);
    CHECK(conv.err.find("did not converge") != std::string::npos);
}

TEST_CASE("--out writes the same bytes as stdout") {
    const auto path = std::filesystem::temp_directory_path() / "qobath_test_out.csv";
    const auto to_file = run_cli({"dynamics", "--t-max", "0.5", "--out", path.string()});
    REQUIRE(to_file.code == 0);
    CHECK(to_file.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == run_cli({"dynamics", "--t-max", "0.5"}).out);
    std::filesystem::remove(path);
}
