#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsec/cli/experiments.hpp"
#include "qsec/cli/report.hpp"

namespace {

int list_experiments() {
  for (const auto& e : qsec::experiment_registry()) {
    std::cout << e.name << "\n  " << e.description << "\n  exercises: " << e.thesis_ref
              << "\n  default trials: " << e.default_trials << "\n  params: " << e.defaults.dump() << "\n";
  }
  return 0;
}

int run_report(const std::string& dir, const std::string& format) {
  qsec::SuiteSummary s = qsec::report_suite(dir);
  std::cout << (format == "csv" ? s.to_csv() : s.to_markdown());
  return s.passed() == s.rows.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runs security-game experiments and reports estimated advantages."};
  std::string experiment;
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  std::vector<std::string> params;
  std::string config;
  bool list = false;
  std::string report_dir;

  app.add_option("-e,--experiment", experiment, "Experiment name (see --list)");
  app.add_option("-t,--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("-s,--seed", seed, "Master seed");
  auto* out_opt = app.add_option("-o,--out", out, "Write the report to this file instead of stdout");
  auto* fmt_opt = app.add_option("-f,--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-p,--param", params, "Experiment parameter key=value (repeatable)");
  app.add_option("-c,--config", config, "File of key=value lines")->check(CLI::ExistingFile);
  app.add_flag("-l,--list", list, "List experiments and their parameters");
  app.add_option("--report", report_dir, "Summarize every report in a directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (list) return list_experiments();
    if (!report_dir.empty()) return run_report(report_dir, format);

    qsec::ExperimentConfig cfg;
    if (!config.empty()) cfg = qsec::parse_config_file(config);
    if (!experiment.empty()) cfg.name = experiment;
    if (trials) cfg.trials = trials;
    if (seed_opt->count() > 0) cfg.seed = seed;
    if (out_opt->count() > 0) cfg.out = out;
    if (fmt_opt->count() > 0) cfg.format = format == "csv" ? qsec::ReportFormat::Csv : qsec::ReportFormat::Json;
    for (const auto& kv : params) {
      auto [key, value] = qsec::parse_param(kv);
      cfg.overrides[key] = value;
    }
    if (cfg.name.empty()) {
      std::cerr << "error: --experiment is required (use --list to see the catalog)\n";
      return 2;
    }

    const qsec::ExperimentSpec& spec = qsec::find_experiment(cfg.name);
    qsec::ExperimentOutcome outcome = qsec::run_experiment(cfg);
    std::string text = cfg.format == qsec::ReportFormat::Csv
                           ? qsec::outcome_to_csv(outcome)
                           : qsec::outcome_to_json(outcome, spec.thesis_ref).dump(2) + "\n";
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(cfg.out);
      if (!f) {
        std::cerr << "error: cannot write " << cfg.out << "\n";
        return 2;
      }
      f << text;
      std::cerr << cfg.name << ": advantage " << outcome.result.advantage << (outcome.pass ? " PASS" : " FAIL") << "\n";
    }
    return outcome.pass ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
