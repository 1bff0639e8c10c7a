#include "qsec/cli/experiments.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qsec/attacks/bm_oram.hpp"
#include "qsec/attacks/classical.hpp"
#include "qsec/attacks/hadamard.hpp"
#include "qsec/attacks/qap_distinguishers.hpp"
#include "qsec/games/ap.hpp"
#include "qsec/games/euf.hpp"
#include "qsec/games/ind.hpp"
#include "qsec/games/qap.hpp"
#include "qsec/games/qind.hpp"

namespace qsec {

namespace {

using nlohmann::json;

std::size_t get_size(const json& p, const char* key, std::size_t lo, std::size_t hi) {
  auto v = p.at(key).get<std::uint64_t>();
  if (v < lo || v > hi) {
    throw std::invalid_argument(std::string("parameter ") + key + " must lie in [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  }
  return static_cast<std::size_t>(v);
}

std::string get_choice(const json& p, const char* key, const std::vector<std::string>& allowed) {
  std::string v = p.at(key).get<std::string>();
  for (const auto& a : allowed) {
    if (a == v) return v;
  }
  throw std::invalid_argument(std::string("parameter ") + key + " has unsupported value " + v);
}

ExperimentOutcome outcome(ExperimentResult r, bool pass) { return ExperimentOutcome{std::move(r), pass}; }

ExperimentOutcome null_outcome(ExperimentResult r) {
  bool pass = within_null(r);
  return outcome(std::move(r), pass);
}

std::vector<ExperimentSpec> build_registry() {
  std::vector<ExperimentSpec> reg;

  reg.push_back({"hadamard-impossibility",
                 "Hadamard distinguisher against the type-2 lift of a quasi-length-preserving scheme",
                 "qIND impossibility for quasi-length-preserving schemes",
                 json{{"m", 4}, {"scheme", "goldreich"}}, 100, [](const json& p, std::uint64_t trials, std::uint64_t seed) {
                   std::size_t m = get_size(p, "m", 1, 6);
                   std::string scheme = get_choice(p, "scheme", {"goldreich", "otp"});
                   SkesFactory inner = scheme == "otp" ? otp_factory(m) : goldreich_factory(m, m, PrfBackend::Ideal);
                   Rng probe(seed);
                   CoreSplit split = core_function_split(*inner(probe));
                   ExperimentResult r =
                       run_qind("hadamard-impossibility", lift_factory(inner), hadamard_distinguisher(split), trials, seed,
                                false, p);
                   bool pass = r.successes == r.trials;
                   return outcome(std::move(r), pass);
                 }});

  reg.push_back({"qind-construction-bound",
                 "Hadamard distinguisher against the expanding ideal-permutation scheme",
                 "expanding permutation construction, qIND advantage bound",
                 json{{"m", 2}, {"r", 3}}, 1000, [](const json& p, std::uint64_t trials, std::uint64_t seed) {
                   std::size_t m = get_size(p, "m", 1, 3);
                   std::size_t rb = get_size(p, "r", 1, 4);
                   SkesFactory prp = prp_factory(m, rb);
                   Rng probe(seed);
                   CoreSplit split = core_function_split(*prp(probe));
                   ExperimentResult r = run_qind("qind-construction-bound", lift_factory(prp),
                                                 hadamard_distinguisher(split), trials, seed, false, p);
                   double bound = std::pow(2.0, -static_cast<double>(rb) + 2.0);
                   bool pass = r.advantage <= bound + 3.0 * null_sigma(r.trials);
                   return outcome(std::move(r), pass);
                 }});

  reg.push_back({"otp-reuse", "Encrypt-and-compare adversary in the IND-CPA game",
                 "IND does not imply IND-CPA", json{{"target", "otp"}, {"n", 8}}, 200,
                 [](const json& p, std::uint64_t trials, std::uint64_t seed) {
                   std::size_t n = get_size(p, "n", 1, 32);
                   bool hardened = get_choice(p, "target", {"otp", "goldreich"}) == "goldreich";
                   SkesFactory f = hardened ? goldreich_factory(n) : otp_factory(n);
                   ExperimentResult r = run_ind("otp-reuse", f, otp_reuse_attack(), IndVariant::Cpa, trials, seed, p);
                   if (hardened) return null_outcome(std::move(r));
                   bool pass = r.successes == r.trials;
                   return outcome(std::move(r), pass);
                 }});

  reg.push_back({"cca1-counterexample", "Swap, decrypt and read the key from the paired-ciphertext scheme",
                 "IND-CPA does not imply IND-CCA1", json{{"target", "cca1-sep"}, {"n", 8}}, 200,
                 [](const json& p, std::uint64_t trials, std::uint64_t seed) {
                   std::size_t n = get_size(p, "n", 1, 16);
                   bool hardened = get_choice(p, "target", {"cca1-sep", "goldreich"}) == "goldreich";
                   SkesFactory f = hardened ? goldreich_factory(n) : cca1_sep_factory(n);
                   ExperimentResult r =
                       run_ind("cca1-counterexample", f, cca1_counterexample_attack(), IndVariant::Cca1, trials, seed, p);
                   if (hardened) return null_outcome(std::move(r));
                   bool pass = r.successes == r.trials;
                   return outcome(std::move(r), pass);
                 }});

  reg.push_back({"cca2-flip", "Flip the challenge payload and ask the restricted decryption oracle",
                 "IND-CCA1 does not imply IND-CCA2", json{{"target", "goldreich"}, {"n", 8}}, 200,
                 [](const json& p, std::uint64_t trials, std::uint64_t seed) {
                   std::size_t n = get_size(p, "n", 1, 16);
                   bool hardened = get_choice(p, "target", {"goldreich", "etm"}) == "etm";
                   SkesFactory f = hardened ? etm_factory(n) : goldreich_factory(n);
                   ExperimentResult r = run_ind("cca2-flip", f, cca2_flip_attack(), IndVariant::Cca2, trials, seed, p);
                   if (hardened) return null_outcome(std::move(r));
                   bool pass = r.successes == r.trials;
                   return outcome(std::move(r), pass);
                 }});

  reg.push_back({"bm-oram-separation", "Leaf-history predictor against PathORAM over the Blum-Micali generator",
                 "PathORAM separation under a quantum-predictable generator",
                 json{{"prng", "blum-micali"}, {"history", 16}, {"n_db", 16}, {"threshold", 0.95}}, 200,
                 [](const json& p, std::uint64_t trials, std::uint64_t seed) {
                   bool secure = get_choice(p, "prng", {"blum-micali", "secure"}) == "secure";
                   BmModulus mod = bm_default_modulus();
                   BmAttackParams prm;
                   prm.p = mod.p;
                   prm.g = mod.g;
                   prm.history = get_size(p, "history", 0, 48);
                   prm.n_db = get_size(p, "n_db", 2, 16);
                   ApGameConfig cfg;
                   cfg.oram.n_max = 16;
                   cfg.oram.snapshots = false;
                   cfg.oram.prng = secure ? secure_prng_factory() : blum_micali_prng_factory(mod.p, mod.g);
                   ExperimentResult r = run_ap("bm-oram-separation", cfg, bm_oram_attack(prm), trials, seed, p);
                   if (secure) return null_outcome(std::move(r));
                   double rate = static_cast<double>(r.successes) / static_cast<double>(r.trials);
                   bool pass = rate >= p.at("threshold").get<double>();
                   return outcome(std::move(r), pass);
                 }});

  reg.push_back({"leaf-frequency", "Leaf-parity distinguisher against PathORAM with a secure generator",
                 "PathORAM security with a secure generator", json{{"n_db", 16}}, 1000,
                 [](const json& p, std::uint64_t trials, std::uint64_t seed) {
                   ApGameConfig cfg;
                   cfg.oram.n_max = 16;
                   cfg.oram.snapshots = false;
                   ExperimentResult r =
                       run_ap("leaf-frequency", cfg, leaf_parity_adversary(get_size(p, "n_db", 2, 16)), trials, seed, p);
                   return null_outcome(std::move(r));
                 }});

  auto qap_runner = [](const std::string& name, QapAdversaryFactory adv) {
    return [name, adv](const json& p, std::uint64_t trials, std::uint64_t seed) {
      QapGameConfig cfg;
      cfg.qoram.n_db = get_size(p, "n_db", 2, 4);
      cfg.qoram.n_dat = get_size(p, "n_dat", 1, 2);
      return null_outcome(run_qap(name, cfg, adv, trials, seed, p));
    };
  };
  reg.push_back({"qap-tag-only", "Ids differ, payloads equal; PathQORAM with the default safe extractor",
                 "PathQORAM access-pattern security", json{{"n_db", 2}, {"n_dat", 1}}, 500,
                 qap_runner("qap-tag-only", qap_tag_only_distinguisher())});
  reg.push_back({"qap-payload-only", "Same id, orthogonal payloads; PathQORAM with the default safe extractor",
                 "PathQORAM access-pattern security", json{{"n_db", 2}, {"n_dat", 1}}, 500,
                 qap_runner("qap-payload-only", qap_payload_only_distinguisher())});

  auto euf_runner = [](const std::string& name, bool replay) {
    return [name, replay](const json& p, std::uint64_t trials, std::uint64_t seed) {
      std::string form = get_choice(p, "form", {"sigma", "lambda"});
      SignatureScheme s = form == "sigma" ? fs_sigma_scheme() : fs_lambda_scheme();
      ForgerFactory f = replay ? replay_forger() : random_forger(s.form);
      ExperimentResult r = run_euf(name, s, f, trials, seed, get_size(p, "q_s", 1, 64), false, p);
      bool pass = r.successes == 0;
      return outcome(std::move(r), pass);
    };
  };
  reg.push_back({"euf-cma-random-forger", "Uniformly random signatures against Fiat-Shamir signatures",
                 "Fiat-Shamir unforgeability", json{{"form", "sigma"}, {"q_s", 4}}, 1000,
                 euf_runner("euf-cma-random-forger", false)});
  reg.push_back({"euf-cma-replay-forger", "Signature replayed on a different message",
                 "Fiat-Shamir unforgeability", json{{"form", "sigma"}, {"q_s", 4}}, 1000,
                 euf_runner("euf-cma-replay-forger", true)});

  reg.push_back({"ind-qcpa-superposition", "Superposition encryption query against the Goldreich scheme",
                 "Goldreich scheme in the IND-qCPA game", json{{"m", 2}}, 1000,
                 [](const json& p, std::uint64_t trials, std::uint64_t seed) {
                   std::size_t m = get_size(p, "m", 1, 4);
                   SkesFactory f = goldreich_factory(m, m, PrfBackend::Ideal);
                   QcpaAdversaryFactory adv = superposition_cpa_adversary();
                   ExperimentResult r = estimate_advantage(
                       "ind-qcpa-superposition",
                       [&](std::uint64_t s) {
                         auto a = adv();
                         return game_ind_qcpa(f, *a, s);
                       },
                       trials, seed, p);
                   return null_outcome(std::move(r));
                 }});

  reg.push_back({"fair-coin-calibration", "A fair coin as the win bit; checks the estimator", "estimator calibration",
                 json::object(), 10000, [](const json& p, std::uint64_t trials, std::uint64_t seed) {
                   ExperimentResult r = estimate_advantage(
                       "fair-coin-calibration", [](std::uint64_t s) { return Rng(s).bit(); }, trials, seed, p);
                   return null_outcome(std::move(r));
                 }});
  return reg;
}

}  // namespace

const std::vector<ExperimentSpec>& experiment_registry() {
  static const std::vector<ExperimentSpec> reg = build_registry();
  return reg;
}

const ExperimentSpec& find_experiment(const std::string& name) {
  for (const auto& e : experiment_registry()) {
    if (e.name == name) return e;
  }
  throw std::invalid_argument("unknown experiment: " + name);
}

std::pair<std::string, nlohmann::json> parse_param(const std::string& kv) {
  auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw std::invalid_argument("parameter must look like key=value: " + kv);
  std::string key = kv.substr(0, eq);
  std::string val = kv.substr(eq + 1);
  if (val == "true") return {key, true};
  if (val == "false") return {key, false};
  if (!val.empty() && val.find_first_not_of("0123456789") == std::string::npos && val.size() < 20) {
    return {key, std::stoull(val)};
  }
  if (!val.empty()) {
    char* end = nullptr;
    double d = std::strtod(val.c_str(), &end);
    if (end == val.c_str() + val.size()) return {key, d};
  }
  return {key, val};
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  ExperimentConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    auto [key, value] = parse_param(line.substr(first, last - first + 1));
    if (key == "experiment") {
      cfg.name = value.is_string() ? value.get<std::string>() : value.dump();
    } else if (key == "trials") {
      if (!value.is_number_unsigned()) throw std::invalid_argument("trials must be a positive integer");
      cfg.trials = value.get<std::uint64_t>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw std::invalid_argument("seed must be a non-negative integer");
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "out") {
      cfg.out = value.is_string() ? value.get<std::string>() : value.dump();
    } else if (key == "format") {
      std::string f = value.is_string() ? value.get<std::string>() : "";
      if (f != "json" && f != "csv") throw std::invalid_argument("format must be json or csv");
      cfg.format = f == "json" ? ReportFormat::Json : ReportFormat::Csv;
    } else {
      cfg.overrides[key] = value;
    }
  }
  return cfg;
}

nlohmann::json resolve_params(const ExperimentSpec& spec, const nlohmann::json& overrides) {
  nlohmann::json out = spec.defaults.is_null() ? nlohmann::json::object() : spec.defaults;
  for (const auto& [key, value] : overrides.items()) {
    if (!out.contains(key)) throw std::invalid_argument(spec.name + ": unknown parameter " + key);
    const auto& def = out[key];
    bool ok = (def.is_string() && value.is_string()) || (def.is_boolean() && value.is_boolean()) ||
              (def.is_number_integer() && value.is_number_integer() && value.get<std::int64_t>() >= 0) || (def.is_number_float() && value.is_number());
    if (!ok) throw std::invalid_argument(spec.name + ": parameter " + key + " has the wrong type");
    out[key] = def.is_number_float() ? nlohmann::json(value.get<double>()) : value;
  }
  return out;
}

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
  const ExperimentSpec& spec = find_experiment(config.name);
  nlohmann::json params = resolve_params(spec, config.overrides);
  std::uint64_t trials = config.trials.value_or(spec.default_trials);
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  try {
    return spec.run(params, trials, config.seed);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(spec.name + ": bad parameter: " + e.what());
  }
}

nlohmann::json outcome_to_json(const ExperimentOutcome& outcome, const std::string& thesis_ref, bool include_runtime) {
  nlohmann::json j = result_to_json(outcome.result, include_runtime);
  j["thesis_ref"] = thesis_ref;
  j["pass"] = outcome.pass;
  return j;
}

std::string outcome_to_csv(const ExperimentOutcome& outcome) {
  return result_csv_header() + "\n" + result_to_csv_row(outcome.result, outcome.pass) + "\n";
}

}  // namespace qsec
