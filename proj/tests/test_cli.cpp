#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "qsec/cli/experiments.hpp"
#include "qsec/cli/report.hpp"

using namespace qsec;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("qsec_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path / name) << text; }
  static inline int counter = 0;
};

ExperimentOutcome run(const std::string& name, std::uint64_t trials, std::uint64_t seed,
                      nlohmann::json overrides = nlohmann::json::object()) {
  ExperimentConfig cfg;
  cfg.name = name;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.overrides = std::move(overrides);
  return run_experiment(cfg);
}

}  // namespace

TEST_CASE("catalog lists every experiment once with a description") {
  std::set<std::string> names;
  for (const auto& e : experiment_registry()) {
    CHECK(names.insert(e.name).second);
    CHECK_FALSE(e.description.empty());
    CHECK_FALSE(e.thesis_ref.empty());
    CHECK(e.defaults.is_object());
    CHECK(e.default_trials > 0);
  }
  for (const char* n : {"hadamard-impossibility", "qind-construction-bound", "otp-reuse", "cca1-counterexample",
                        "cca2-flip", "bm-oram-separation", "leaf-frequency", "qap-tag-only", "qap-payload-only",
                        "euf-cma-random-forger", "euf-cma-replay-forger", "ind-qcpa-superposition",
                        "fair-coin-calibration"}) {
    CHECK(names.count(n) == 1);
  }
  CHECK_THROWS_AS(find_experiment("no-such-experiment"), std::invalid_argument);
}

TEST_CASE("every experiment runs with its defaults at a small trial count") {
  for (const auto& e : experiment_registry()) {
    CAPTURE(e.name);
    ExperimentOutcome o = run(e.name, 8, 3);
    CHECK(o.result.game == e.name);
    CHECK(o.result.trials == 8);
    CHECK(o.result.successes <= 8);
    nlohmann::json defaults = resolve_params(e, nlohmann::json::object());
    for (const auto& [key, value] : defaults.items()) CHECK(o.result.params.at(key) == value);
  }
}

TEST_CASE("hadamard impossibility at seed 7 wins every trial") {
  ExperimentOutcome o = run("hadamard-impossibility", 100, 7);
  CHECK(o.result.successes == 100);
  CHECK(o.result.advantage == doctest::Approx(0.5));
  CHECK(o.pass);
  ExperimentOutcome otp = run("hadamard-impossibility", 100, 7, {{"scheme", "otp"}});
  CHECK(otp.result.advantage == doctest::Approx(0.5));
}

TEST_CASE("fair coin stays within three null sigmas") {
  ExperimentOutcome o = run("fair-coin-calibration", 10000, 11);
  CHECK(std::abs(o.result.advantage) <= 3.0 * null_sigma(10000));
  CHECK(o.pass);
}

TEST_CASE("runs are deterministic in the seed") {
  for (const char* name : {"qind-construction-bound", "leaf-frequency", "qap-tag-only", "ind-qcpa-superposition"}) {
    CAPTURE(name);
    ExperimentOutcome a = run(name, 40, 99);
    ExperimentOutcome b = run(name, 40, 99);
    CHECK(a.result.successes == b.result.successes);
    CHECK(outcome_to_json(a, "", false) == outcome_to_json(b, "", false));
  }
}

TEST_CASE("hardened targets fall back to the null") {
  CHECK(run("otp-reuse", 200, 5, {{"target", "goldreich"}}).pass);
  CHECK(run("cca1-counterexample", 200, 5, {{"target", "goldreich"}}).pass);
  CHECK(run("cca2-flip", 200, 5, {{"target", "etm"}}).pass);
}

TEST_CASE("parameter parsing and validation") {
  CHECK(parse_param("n=8").second == 8);
  CHECK(parse_param("flag=true").second == true);
  CHECK(parse_param("x=0.25").second == doctest::Approx(0.25));
  CHECK(parse_param("target=etm").second == "etm");
  CHECK(parse_param("empty=").second == "");
  CHECK_THROWS_AS(parse_param("novalue"), std::invalid_argument);
  CHECK_THROWS_AS(parse_param("=3"), std::invalid_argument);

  const ExperimentSpec& spec = find_experiment("otp-reuse");
  CHECK(resolve_params(spec, {{"n", 4}})["n"] == 4);
  CHECK_THROWS_AS(resolve_params(spec, {{"bogus", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(resolve_params(spec, {{"n", "eight"}}), std::invalid_argument);
  CHECK_THROWS_AS(run("otp-reuse", 10, 1, {{"target", "rsa"}}), std::invalid_argument);
  CHECK_THROWS_AS(run("otp-reuse", 10, 1, {{"n", 0}}), std::invalid_argument);
  CHECK_THROWS_AS(run("otp-reuse", 0, 1), std::invalid_argument);
}

TEST_CASE("config files fill fields and overrides") {
  TempDir dir;
  dir.write("run.cfg", "# comment\nexperiment=otp-reuse\n\ntrials=12\nseed=4\nformat=csv\nn=6\n");
  ExperimentConfig cfg = parse_config_file((dir.path / "run.cfg").string());
  CHECK(cfg.name == "otp-reuse");
  CHECK(cfg.trials == 12u);
  CHECK(cfg.seed == 4u);
  CHECK(cfg.format == ReportFormat::Csv);
  CHECK(cfg.overrides == nlohmann::json{{"n", 6}});
  CHECK_THROWS_AS(parse_config_file((dir.path / "missing.cfg").string()), std::invalid_argument);
}

TEST_CASE("outcome serialization carries pass and the reference") {
  ExperimentOutcome o = run("otp-reuse", 20, 2);
  nlohmann::json j = outcome_to_json(o, "ref", false);
  CHECK(j["pass"] == true);
  CHECK(j["thesis_ref"] == "ref");
  CHECK_FALSE(j.contains("runtime_ms"));
  CHECK(outcome_to_csv(o) ==
        "experiment,trials,successes,advantage,ci95,pass,seed\notp-reuse,20,20,0.500000,0.000000,true,2\n");
}

TEST_CASE("suite report over an empty directory") {
  TempDir dir;
  SuiteSummary s = report_suite(dir.path.string());
  CHECK(s.rows.empty());
  CHECK(s.passed() == 0);
  CHECK(s.to_csv() == "file,experiment,advantage,ci95,pass,error\n");
  CHECK_THROWS_AS(report_suite((dir.path / "absent").string()), std::invalid_argument);
}

TEST_CASE("suite report mixes formats and counts passes") {
  TempDir dir;
  ExperimentOutcome good = run("otp-reuse", 20, 2);
  ExperimentOutcome bad = good;
  bad.pass = false;
  bad.result.game = "other";
  dir.write("a.json", outcome_to_json(good, "ref").dump());
  dir.write("b.csv", outcome_to_csv(bad));
  dir.write("notes.txt", "ignored");
  SuiteSummary s = report_suite(dir.path.string());
  REQUIRE(s.rows.size() == 2);
  CHECK(s.rows[0].file == "a.json");
  CHECK(s.rows[0].experiment == "otp-reuse");
  CHECK(s.rows[0].pass);
  CHECK(s.rows[1].experiment == "other");
  CHECK_FALSE(s.rows[1].pass);
  CHECK(s.passed() == 1);
  CHECK(s.to_markdown().find("1/2 passed") != std::string::npos);

  dir.write("c.json", "{not json");
  SuiteSummary broken = report_suite(dir.path.string());
  REQUIRE(broken.rows.size() == 3);
  CHECK_FALSE(broken.rows[2].error.empty());
  CHECK(broken.passed() == 1);
}
