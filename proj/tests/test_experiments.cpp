// Copyright 2026 The coolsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "coolsim/cli.hpp"
#include "coolsim/error.hpp"
#include "coolsim/experiments.hpp"

using namespace coolsim;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch_dir(const std::string &name) {
    fs::path dir = fs::temp_directory_path() / ("coolsim_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

std::string config_error(std::string_view text) {
    try {
        parse_config(text, "cfg.toml");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::kConfigError);
        return e.what();
    }
    FAIL("expected a config error");
    return {};
}

std::vector<std::string> split_lines(const std::string &s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

constexpr const char *kScan = R"([experiment]
kind = "tsac_scan"
name = "scan"
p = [1e-3, 1e-4]
n_min = 2
n_max = 4
p_initial = 0.85
)";

}  // namespace

TEST_CASE("config parsing") {
    auto cfg = parse_config(kScan);
    CHECK(cfg.kind == ExperimentKind::kTsacScan);
    CHECK(cfg.name == "scan");
    CHECK(cfg.p == std::vector<double>{1e-4, 1e-3});
    CHECK(cfg.n == std::vector<int>{2, 3, 4});
    CHECK(cfg.epsilon == doctest::Approx(0.5 * std::log(17.0 / 3.0)));

    auto log = parse_config("[experiment]\nkind = \"dc_grid\"\np_logspace = [1e-5, 1e-3, 5]\nn = [2, 3]\n");
    REQUIRE(log.p.size() == 5);
    CHECK(log.p.front() == doctest::Approx(1e-5));
    CHECK(log.p[2] == doctest::Approx(1e-4));
    CHECK(log.p.back() == doctest::Approx(1e-3));
    CHECK(log.name == "dc_grid");
    CHECK(log.t_initial == 0.163);

    auto two = parse_config("[experiment]\nkind = \"twodesign\"\np = [1e-3]\np_initial = 0.8\nrepetitions = [2, 0, 1]\n");
    CHECK(two.repetitions == std::vector<int>{0, 1, 2});
    CHECK(two.n == std::vector<int>{3});
}

TEST_CASE("config errors carry line and field") {
    CHECK(config_error("[experiment]\nkind = \"tsac_scan\"\np = [1e-3]\nn = [2]\np_initial = 1.5\n")
              .find("cfg.toml:5: field 'p_initial'") != std::string::npos);
    CHECK(config_error("[experiment]\nkind = \"bogus\"\n").find("cfg.toml:2: field 'kind'") != std::string::npos);
    CHECK(config_error("[experiment]\nkind = \"tsac_scan\"\np = [1e-3]\nn = [2]\nepsilon = 0.5\ncolour = 1\n")
              .find("field 'colour'") != std::string::npos);
    CHECK(config_error("[experiment]\nkind = \"tsac_scan\"\np = [1e-3]\nn = [12]\nepsilon = 0.5\n").find("field 'n'") !=
          std::string::npos);
    CHECK(config_error("[experiment]\nkind = \"tsac_scan\"\np = []\nn = [2]\nepsilon = 0.5\n").find("field 'p'") !=
          std::string::npos);
    CHECK(config_error("kind = 3\n").find("cfg.toml:1") != std::string::npos);
    CHECK(config_error("[experiment\n").find("cfg.toml:1") != std::string::npos);
    CHECK(config_error("[experiment]\nkind = \"dc_grid\"\np = [1e-3]\nn = [2]\nt_initial = -1.0\n")
              .find("field 't_initial'") != std::string::npos);
    CHECK_THROWS_AS(load_config("/nonexistent/coolsim.toml"), Error);
}

TEST_CASE("tsac scan records") {
    auto cfg = parse_config(kScan);
    cfg.physical_max_n = 3;
    auto records = run_experiment(cfg);
    int physical_pn = 0, gda_pn = 0, ideal_pn = 0, nopt = 0;
    for (const auto &r : records) {
        CHECK(r.experiment == "scan");
        CHECK((r.provenance == "gda" || r.provenance == "physical" || r.provenance == "ideal"));
        if (r.metric == "P_n") {
            if (r.provenance == "physical") ++physical_pn;
            if (r.provenance == "gda") ++gda_pn;
            if (r.provenance == "ideal") ++ideal_pn;
        }
        if (r.metric == "n_opt") ++nopt;
        if (r.metric == "n_opt" && r.p == 1e-3) CHECK(r.value == 3.0);
    }
    CHECK(ideal_pn == 3);
    CHECK(gda_pn == 3 * 2);
    CHECK(physical_pn == 2 * 2);
    CHECK(nopt == 2 * 2);
}

TEST_CASE("csv schema") {
    auto cfg = parse_config("[experiment]\nkind = \"eta_table\"\nname = \"eta\"\np = [1e-3, 1e-4]\nn = [2, 3]\n");
    auto records = run_experiment(cfg);
    CHECK(records.size() == 2 * 2 * 4);
    const std::string csv = to_csv(records);
    CHECK(csv.find('\r') == std::string::npos);
    auto lines = split_lines(csv);
    REQUIRE(lines.size() == records.size() + 1);
    CHECK(lines[0] == kCsvHeader);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 7);
    }
    CHECK(csv.find("eta,gda,3,0.001,0,0.015238095238095238,eta,0.015238095238095238\n") != std::string::npos);
    const std::string json = to_json(cfg, records);
    CHECK(json.find("\"experiment\": \"eta\"") != std::string::npos);
    CHECK(json.find("\"records\"") != std::string::npos);
}

TEST_CASE("every experiment kind runs") {
    const char *configs[] = {
        "[experiment]\nkind = \"dc_grid\"\nname = \"dc\"\np = [1e-4]\nn = [2, 3]\n",
        "[experiment]\nkind = \"dynamics\"\nname = \"dyn\"\np = [1e-4]\nn = [3]\np_initial = 0.85\nrounds = 5\n",
        "[experiment]\nkind = \"twodesign\"\nname = \"two\"\np = [1e-3]\np_initial = 0.8\nrepetitions = [0, 1]\n",
        "[experiment]\nkind = \"cooling_limit\"\nname = \"lim\"\np = [1e-4]\nn = [2, 8]\np_initial = 0.85\n",
    };
    for (const char *text : configs) {
        auto cfg = parse_config(text);
        auto records = run_experiment(cfg);
        CHECK_FALSE(records.empty());
        for (const auto &r : records) CHECK(std::isfinite(r.value));
    }
    auto dyn = run_experiment(parse_config(configs[1]));
    int physical = 0;
    for (const auto &r : dyn) {
        if (r.provenance == "physical") {
            ++physical;
            CHECK(r.metric == "population@round=" + std::to_string(r.index));
        }
    }
    CHECK(physical == 6);
}

TEST_CASE("determinism: byte-identical CSV across runs and thread counts") {
    auto cfg = parse_config(
        "[experiment]\nkind = \"tsac_scan\"\nname = \"det\"\np = [1e-3, 1e-5]\nn = [2, 3, 4]\np_initial = 0.85\n"
        "physical_max_n = 3\n");
    cfg.threads = 1;
    const std::string a = to_csv(run_experiment(cfg));
    cfg.threads = 3;
    const std::string b = to_csv(run_experiment(cfg));
    const std::string c = to_csv(run_experiment(cfg));
    CHECK(a == b);
    CHECK(b == c);

    fs::path d1 = scratch_dir("det1"), d2 = scratch_dir("det2");
    write_outputs(cfg, run_experiment(cfg), d1);
    write_outputs(cfg, run_experiment(cfg), d2);
    CHECK(read_file(d1 / "det.csv") == read_file(d2 / "det.csv"));
    CHECK(read_file(d1 / "det.json") == read_file(d2 / "det.json"));
    CHECK(read_file(d1 / "det.csv") == a);
}

TEST_CASE("cli eta") {
    auto r = cli({"eta", "--model", "timekeeping", "--p", "1e-3", "--n", "3"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("n_TG=20\n") != std::string::npos);
    CHECK(r.out.find("eta=0.015238095238095238\n") != std::string::npos);
    const auto q = r.out.find("q=");
    REQUIRE(q != std::string::npos);
    CHECK(std::stod(r.out.substr(q + 2)) == doctest::Approx(15.0 / 63.0).epsilon(1e-14));

    auto b = cli({"eta", "--model", "bitflip", "--p", "0.01", "--n", "2"});
    CHECK(b.code == kExitOk);
    CHECK(b.out.find("n_TG=3\n") != std::string::npos);

    CHECK(cli({"eta", "--model", "amplitude", "--p", "1e-3", "--n", "3"}).code == kExitConfigError);
    auto bad = cli({"eta", "--p", "1.5", "--n", "3"});
    CHECK(bad.code == kExitNumericFailure);
    CHECK_FALSE(bad.err.empty());
}

TEST_CASE("cli limit and describe") {
    auto r = cli({"limit", "--nc", "1", "--eps", "0.8673", "--eta", "0"});
    CHECK(r.code == kExitOk);
    const auto pos = r.out.find("P=");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(r.out.substr(pos + 2)) == doctest::Approx(0.85).epsilon(1e-4));
    CHECK(r.out.find("lambda1=1\n") != std::string::npos);

    auto d = cli({"describe", "--protocol", "tsac", "--n", "3"});
    CHECK(d.code == kExitOk);
    CHECK(d.out.find("MCX 1,2 0\n") != std::string::npos);
    CHECK(d.out.find("cx_count=20\n") != std::string::npos);
    auto t = cli({"describe", "--protocol", "tsac", "--n", "3", "--transpiled"});
    CHECK(t.out.find("MCX") == std::string::npos);
    CHECK(t.out.find("cx_count=20\n") != std::string::npos);
    CHECK(cli({"describe", "--protocol", "dc", "--n", "2"}).out == "cx_count=0\n");

    auto v = cli({"--version"});
    CHECK(v.code == kExitOk);
    CHECK(v.out.find("coolsim 0.1.0") != std::string::npos);
    CHECK(cli({}).code == kExitConfigError);
}

TEST_CASE("cli run") {
    fs::path dir = scratch_dir("run");
    fs::path good = dir / "eta.toml";
    std::ofstream(good) << "[experiment]\nkind = \"eta_table\"\nname = \"table\"\np = [1e-3]\nn = [3]\n";
    fs::path out = dir / "out";
    auto r = cli({"run", "--config", good.string(), "--out", out.string()});
    CHECK(r.code == kExitOk);
    CHECK(fs::exists(out / "table.csv"));
    CHECK(fs::exists(out / "table.json"));

    fs::path bad = dir / "bad.toml";
    std::ofstream(bad) << "[experiment]\nkind = \"eta_table\"\nname = \"broken\"\np = [1e-3]\nn = [\"three\"]\n";
    fs::path out2 = dir / "out2";
    auto e = cli({"run", "--config", bad.string(), "--out", out2.string()});
    CHECK(e.code == kExitConfigError);
    CHECK(e.err.find("bad.toml:5") != std::string::npos);
    CHECK_FALSE(fs::exists(out2 / "broken.csv"));
    CHECK_FALSE(fs::exists(out2 / "broken.json"));

    auto missing = cli({"run", "--config", (dir / "nope.toml").string(), "--out", out2.string()});
    CHECK(missing.code == kExitConfigError);
}

TEST_CASE("shipped presets parse") {
    const fs::path configs = fs::path(COOLSIM_SOURCE_DIR) / "configs";
    int count = 0;
    for (const auto &entry : fs::directory_iterator(configs)) {
        if (entry.path().extension() != ".toml") continue;
        ++count;
        CAPTURE(entry.path().string());
        CHECK_NOTHROW(load_config(entry.path()));
    }
    CHECK(count >= 6);
}
