#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "lrgf/io.hpp"

#ifndef LRGF_CLI_PATH
#define LRGF_CLI_PATH "lrgf"
#endif

namespace {

namespace fs = std::filesystem;
using lrgf::io::Json;

struct Sandbox {
    fs::path dir;
    Sandbox() {
        dir = fs::temp_directory_path() /
              ("lrgf_cli_" + std::to_string(::getpid()) + "_" +
               std::to_string(counter()++));
        fs::create_directories(dir);
    }
    ~Sandbox() { fs::remove_all(dir); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    fs::path file(const std::string& name, const std::string& content) const {
        const fs::path p = dir / name;
        std::ofstream(p) << content;
        return p;
    }
};

int run_cli(const std::string& args) {
    const std::string cmd = std::string(LRGF_CLI_PATH) + " " + args +
                            " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("covariance subcommand writes a parsable table") {
    Sandbox sb;
    sb.file("model.json",
            R"({"dimension":1,"kind":"isotropic","alpha":-0.3,"l1":{"type":"const","value":1.0}})");
    const int rc = run_cli("covariance --config " +
                           (sb.dir / "model.json").string() + " --radius 2 " +
                           "--out " + sb.dir.string());
    CHECK(rc == 0);
    const auto csv = lrgf::io::read_text_file((sb.dir / "covariance.csv").string());
    CHECK(csv.rfind("h1,r\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);  // header + 5 lags
}

TEST_CASE("simulate writes field plus sidecar that round-trips") {
    Sandbox sb;
    sb.file("model.json",
            R"({"dimension":1,"kind":"white_noise"})");
    const int rc = run_cli("simulate --config " +
                           (sb.dir / "model.json").string() +
                           " --n 16 --margin 1 --seed 5 --out " +
                           sb.dir.string());
    CHECK(rc == 0);
    const auto sidecar = Json::parse(
        lrgf::io::read_text_file((sb.dir / "field.json").string()));
    const auto meta = lrgf::io::field_meta_from_json(sidecar);
    CHECK(meta.n == 16);
    CHECK(meta.margin == 1);
    CHECK(meta.seed == 5);
    CHECK(meta.method == "spectral");
    const auto csv = lrgf::io::read_text_file((sb.dir / "field.csv").string());
    CHECK(csv.rfind("i1,value\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 19);  // header + 18 rows
}

TEST_CASE("check-h emits the verdict json") {
    Sandbox sb;
    sb.file("in.json", R"({
      "model": {"dimension":1,"kind":"isotropic","alpha":-0.35,
                "l1":{"type":"const","value":1.0}},
      "spec": {"dimension":1,"support":[[0,1.0]]}
    })");
    const int rc = run_cli("check-h --config " + (sb.dir / "in.json").string() +
                           " --mode analytic --out " + sb.dir.string());
    CHECK(rc == 0);
    const auto verdict = Json::parse(
        lrgf::io::read_text_file((sb.dir / "verdict.json").string()));
    CHECK(verdict.at("status").get<std::string>() == "holds_by_lemma");
}

TEST_CASE("experiment subcommand: success, refusal and config errors") {
    Sandbox sb;
    sb.file("good.json", R"({
      "model": {"dimension":1,"kind":"white_noise"},
      "statistic": "empirical_covariance",
      "lag": [0],
      "ladder": [32],
      "replicates": 120,
      "margin": 0,
      "oversample": 1,
      "sampler": "spectral",
      "seed": 11,
      "nu": 0.5
    })");
    CHECK(run_cli("experiment --config " + (sb.dir / "good.json").string() +
                  " --out " + sb.dir.string()) == 0);
    const auto report = Json::parse(
        lrgf::io::read_text_file((sb.dir / "report.json").string()));
    CHECK(report.at("per_n").size() == 1);
    CHECK(report.at("reference").at("kind").get<std::string>() ==
          "clt_variance");
    CHECK(fs::exists(sb.dir / "per_n.csv"));
    CHECK(fs::exists(sb.dir / "samples.csv"));

    // admissibility refusal -> exit 2
    sb.file("refuse.json", R"({
      "model": {"dimension":1,"kind":"isotropic","alpha":-0.35,
                "l1":{"type":"const","value":1.0}},
      "statistic": "empirical_covariance",
      "lag": [0], "ladder": [32], "replicates": 120,
      "sampler": "spectral", "seed": 1, "nu": 0.5
    })");
    CHECK(run_cli("experiment --config " + (sb.dir / "refuse.json").string() +
                  " --out " + sb.dir.string()) == 2);

    // invalid config -> exit 4
    sb.file("bad.json", R"({
      "model": {"dimension":1,"kind":"white_noise"},
      "statistic": "empirical_covariance",
      "lag": [0], "ladder": [64, 32], "replicates": 120,
      "sampler": "spectral", "seed": 1, "nu": 0.5
    })");
    CHECK(run_cli("experiment --config " + (sb.dir / "bad.json").string() +
                  " --out " + sb.dir.string()) == 4);

    // unparsable json -> exit 4
    sb.file("broken.json", "{nope");
    CHECK(run_cli("experiment --config " + (sb.dir / "broken.json").string() +
                  " --out " + sb.dir.string()) == 4);
}

TEST_CASE("default seeds make cli runs reproducible") {
    Sandbox sb;
    sb.file("cfg.json", R"({
      "model": {"dimension":1,"kind":"white_noise"},
      "statistic": "empirical_covariance",
      "lag": [0], "ladder": [24], "replicates": 100,
      "sampler": "spectral", "seed": 9, "nu": 0.5
    })");
    REQUIRE(run_cli("experiment --config " + (sb.dir / "cfg.json").string() +
                    " --out " + (sb.dir / "a").string()) == 0);
    REQUIRE(run_cli("experiment --config " + (sb.dir / "cfg.json").string() +
                    " --threads 2 --out " + (sb.dir / "b").string()) == 0);
    CHECK(lrgf::io::read_text_file((sb.dir / "a" / "report.json").string()) ==
          lrgf::io::read_text_file((sb.dir / "b" / "report.json").string()));
}
