// Acceptance battery. Prints one PASS/FAIL line per criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <tuple>

#include "qsec/cli/experiments.hpp"
#include "qsec/core/schemes.hpp"
#include "qsec/fs/oracle.hpp"
#include "qsec/fs/schnorr.hpp"
#include "qsec/fs/signatures.hpp"
#include "qsec/oram/soundness.hpp"
#include "qsec/qoram/path_qoram.hpp"
#include "qsec/qsim/channels.hpp"
#include "qsec/qsim/gates.hpp"
#include "qsec/qsim/oracles.hpp"

using namespace qsec;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

StateVector random_state(std::size_t n, Rng& rng) {
  Vector v(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
  v.normalize();
  return StateVector::from_amplitudes(v);
}

StateVector plus_state(std::size_t n) {
  StateVector s(n);
  for (std::size_t w = 0; w < n; ++w) s = apply_gate(s, Gate::H, {w});
  return s;
}

ExperimentOutcome run(const std::string& name, std::uint64_t trials, std::uint64_t seed,
                      nlohmann::json overrides = nlohmann::json::object()) {
  ExperimentConfig cfg;
  cfg.name = name;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.overrides = std::move(overrides);
  return run_experiment(cfg);
}

std::string summary(const ExperimentOutcome& o) {
  std::ostringstream os;
  os << o.result.game << " " << o.result.successes << "/" << o.result.trials << " adv=" << o.result.advantage;
  return os.str();
}

bool within_3sigma(const ExperimentOutcome& o) { return std::abs(o.result.advantage) <= 3.0 * null_sigma(o.result.trials); }

void hadamard_impossibility(Verdict& v) {
  for (const char* scheme : {"otp", "goldreich"}) {
    for (int m = 2; m <= 6; ++m) {
      ExperimentOutcome o = run("hadamard-impossibility", 100, 100 + m, {{"m", m}, {"scheme", scheme}});
      v.require(o.result.successes == 100, summary(o) + " m=" + std::to_string(m) + " " + scheme);
    }
  }
  v.detail << "otp and goldreich, m=2..6: 100/100 each";
}

void construction_bound(Verdict& v) {
  StateVector plus = plus_state(2);
  for (std::size_t r : {3u, 4u}) {
    double bound = std::pow(2.0, 2.0 - static_cast<double>(r));
    DensityMatrix closed = avg_perm_channel(DensityMatrix::pure(plus), r);
    double td = trace_distance(closed, maximally_mixed(2 + r));
    v.require(td <= bound + 1e-12, "trace distance " + std::to_string(td) + " exceeds bound");

    // Monte-Carlo over 10^3 sampled permutations: two scalar overlaps, each within 3 sigma of the closed form.
    Rng rng(500 + r);
    StateVector probe_plus = plus_state(2 + r);
    StateVector probe_zero(2 + r);
    const int samples = 1000;
    for (const StateVector* probe : {&probe_plus, &probe_zero}) {
      double sum = 0.0, sum_sq = 0.0;
      for (int i = 0; i < samples; ++i) {
        double x = fidelity(perm_channel_sample(DensityMatrix::pure(plus), r, rng), *probe);
        sum += x;
        sum_sq += x * x;
      }
      double mean = sum / samples;
      double sd = std::sqrt(std::max(0.0, sum_sq / samples - mean * mean));
      double expect = fidelity(closed, *probe);
      v.require(std::abs(mean - expect) <= 3.0 * sd / std::sqrt(samples) + 1e-12, "monte-carlo overlap");
    }

    ExperimentOutcome o = run("qind-construction-bound", 1000, 40 + r, {{"m", 2}, {"r", r}});
    v.require(o.pass, summary(o));
    v.detail << "r=" << r << ": td=" << td << " <= " << bound << ", adv=" << o.result.advantage << "; ";
  }
}

void qotp_marginal(Verdict& v) {
  Rng rng(3);
  double worst = 0.0;
  for (std::size_t n : {1u, 2u}) {
    for (int i = 0; i < 10; ++i) {
      // Even inputs are purifications of the message register against an n-qubit environment.
      bool entangled = i % 2 == 0;
      std::size_t env = entangled ? n : 0;
      DensityMatrix rho = DensityMatrix::pure(random_state(env + n, rng));
      std::uint64_t dim = std::uint64_t{1} << (env + n);
      Matrix avg = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
      std::uint64_t keys = std::uint64_t{1} << (2 * n);
      for (std::uint64_t k = 0; k < keys; ++k) {
        avg += qotp_apply(BitString::from_uint(k, 2 * n), rho, wire_range(env, n)).matrix();
      }
      avg /= static_cast<double>(keys);
      DensityMatrix averaged = DensityMatrix::from_matrix(avg);
      DensityMatrix msg = partial_trace(averaged, wire_range(env, n));
      worst = std::max(worst, max_abs_diff(msg.matrix(), maximally_mixed(n).matrix()));
      if (entangled) {
        DensityMatrix expect = partial_trace(rho, wire_range(0, env)).tensor(maximally_mixed(n));
        worst = std::max(worst, max_abs_diff(avg, expect.matrix()));
      }
    }
  }
  v.require(worst <= 1e-10, "entrywise deviation");
  v.detail << "max deviation " << worst;
}

void oracle_equivalence(Verdict& v) {
  Rng rng(17);
  std::vector<std::unique_ptr<Skes>> schemes;
  for (std::size_t m = 1; m <= 3; ++m) {
    for (int key = 0; key < 2; ++key) {
      schemes.push_back(otp_factory(m)(rng));
      schemes.push_back(goldreich_factory(1, m, PrfBackend::Ideal)(rng));
      if (m <= 2) schemes.push_back(prp_factory(m, 1)(rng));
    }
  }
  double worst = 0.0;
  std::size_t checked = 0;
  for (const auto& s : schemes) {
    std::size_t m = s->msg_bits(), c = s->ct_bits();
    UnitaryOp dec1 = type1_oracle(decryption_table(*s), c, m);
    for (std::uint64_t rv = 0; rv < (std::uint64_t{1} << s->rand_bits()); ++rv) {
      BitString r = BitString::from_uint(rv, s->rand_bits());
      UnitaryOp enc2 = type2_oracle(type2_permutation(*s, r));
      UnitaryOp direct1 = type1_oracle(encryption_table(*s, r), m, c);
      worst = std::max(worst, max_abs_diff(type1_from_type2(enc2, enc2.adjoint(), m).matrix, direct1.matrix));
      worst = std::max(worst, type2_conversion_deviation(type2_from_type1(direct1, dec1, m), enc2, m));
      ++checked;
    }
  }
  v.require(worst <= 1e-8, "conversion deviation");
  v.detail << checked << " pinned (key, r) pairs, max deviation " << worst;
}

void separations(Verdict& v) {
  const std::tuple<const char*, const char*, const char*> suite[] = {
      {"otp-reuse", "otp", "goldreich"},
      {"cca1-counterexample", "cca1-sep", "goldreich"},
      {"cca2-flip", "goldreich", "etm"}};
  for (const auto& [name, target, hardened] : suite) {
    ExperimentOutcome attack = run(name, 200, 21, {{"target", target}});
    ExperimentOutcome null = run(name, 1000, 22, {{"target", hardened}});
    v.require(attack.result.successes == 200, summary(attack));
    v.require(within_3sigma(null), summary(null));
    v.detail << name << " " << attack.result.successes << "/200, hardened adv=" << null.result.advantage << "; ";
  }
}

void oram_separation(Verdict& v) {
  ExperimentOutcome bm = run("bm-oram-separation", 200, 31, {{"prng", "blum-micali"}, {"history", 16}, {"n_db", 16}});
  ExperimentOutcome secure = run("bm-oram-separation", 1000, 32, {{"prng", "secure"}});
  v.require(bm.result.successes >= 190, summary(bm));
  v.require(within_3sigma(secure), summary(secure));
  v.detail << "blum-micali " << bm.result.successes << "/200, secure adv=" << secure.result.advantage;
}

void oram_soundness(Verdict& v) {
  OramConfig cfg;
  cfg.n_db = 8;
  SoundnessRun trace = run_random_trace(cfg, 10000, 71);
  v.require(trace.report.ok() && trace.report.accesses == 10000, "minimal soundness");
  v.require(trace.locality_failures == 0, "path locality");

  Rng rng(72);
  double worst = 0.0;
  for (std::size_t n_dat : {1u, 2u}) {
    QoramConfig qc;
    qc.n_db = 2;
    qc.n_dat = n_dat;
    QoramInstance q = qoram_init(qc, rng);
    for (int i = 0; i < 100; ++i) {
      std::uint64_t id = 1 + rng.below(2);
      StateVector phi = random_state(n_dat, rng);
      qoram_access(q.client, q.server, QuantumDataRequest::write(id, phi));
      QAccessResult r = qoram_access(q.client, q.server, QuantumDataRequest::read(id));
      worst = std::max(worst, std::abs(fidelity(r.payload, phi) - 1.0));
    }
  }
  v.require(worst <= 1e-12, "write-then-read fidelity");
  v.detail << "10000 accesses, 0 violations, max stash " << trace.max_stash << "; fidelity deviation " << worst;
}

void qap_null(Verdict& v) {
  for (const char* name : {"qap-tag-only", "qap-payload-only"}) {
    ExperimentOutcome o = run(name, 500, 81);
    v.require(within_3sigma(o), summary(o));
    v.detail << name << " adv=" << o.result.advantage << "; ";
  }
}

void fiat_shamir(Verdict& v) {
  const SchnorrGroup grp = toy_group();
  Rng rng(91);
  int complete = 0, sigma_ok = 0, lambda_ok = 0, extracted = 0;
  RandomOracle oracle = uniform_oracle(grp.q, 92);
  for (int i = 0; i < 1000; ++i) {
    HardInstance inst = inst_gen(grp, rng);
    std::uint64_t a = rng.below(grp.q);
    std::uint64_t c1 = rng.below(grp.q);
    complete += schnorr_verify(grp, inst.x, schnorr_run(inst, a, c1)) ? 1 : 0;

    std::uint64_t c2 = (c1 + 1 + rng.below(grp.q - 1)) % grp.q;
    std::uint64_t w = special_soundness_extract(grp, inst.x, schnorr_run(inst, a, c1), schnorr_run(inst, a, c2));
    extracted += relation_holds(grp, inst.x, w) ? 1 : 0;

    FsPublicKey pk{grp, inst.x};
    std::string m = "m" + std::to_string(i);
    sigma_ok += fs_verify(pk, m, fs_sign(inst, m, oracle, rng), oracle) ? 1 : 0;
    lambda_ok += fs_lambda_verify(pk, m, fs_lambda_sign(inst, m, oracle, rng), oracle) ? 1 : 0;
  }
  v.require(complete == 1000 && sigma_ok == 1000 && lambda_ok == 1000, "completeness");
  v.require(extracted == 1000, "extraction");

  HardInstance inst = inst_from_witness(grp, 3);
  std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>, int> honest, simulated;
  for (std::uint64_t ch = 0; ch < grp.q; ++ch) {
    for (std::uint64_t u = 0; u < grp.q; ++u) {
      SigmaTranscript h = schnorr_run(inst, u, ch);
      SigmaTranscript s = hvzk_simulate(grp, inst.x, ch, u);
      ++honest[{h.com, h.ch, h.resp}];
      ++simulated[{s.com, s.ch, s.resp}];
    }
  }
  v.require(honest == simulated, "hvzk distribution");

  std::uint64_t forgeries = 0;
  for (const char* name : {"euf-cma-random-forger", "euf-cma-replay-forger"}) {
    for (const char* form : {"sigma", "lambda"}) {
      ExperimentOutcome o = run(name, 1000, 93, {{"form", form}});
      forgeries += o.result.successes;
      v.require(o.result.successes == 0, summary(o) + " " + form);
    }
  }

  const int queries = 10000;
  for (double delta : {0.0, 0.25, 1.0}) {
    RandomOracle o = semi_constant_oracle(delta, 4, grp.q, 94);
    for (int i = 0; i < queries; ++i) o.query(encode_u64(static_cast<std::uint64_t>(i)));
    double frac = static_cast<double>(o.pinned_count()) / queries;
    v.require(std::abs(frac - delta) <= 3.0 * std::sqrt(delta * (1 - delta) / queries), "semi-constant fraction");
    v.detail << "delta=" << delta << " frac=" << frac << "; ";
  }
  v.detail << "completeness/extraction 1000/1000, hvzk exact, forgeries " << forgeries;
}

void determinism(Verdict& v) {
  std::size_t n = 0;
  for (const auto& spec : experiment_registry()) {
    ExperimentConfig cfg;
    cfg.name = spec.name;
    cfg.seed = 2024;
    ExperimentOutcome a = run_experiment(cfg);
    ExperimentOutcome b = run_experiment(cfg);
    v.require(outcome_to_json(a, spec.thesis_ref, false).dump(2) == outcome_to_json(b, spec.thesis_ref, false).dump(2),
              spec.name + " json");
    v.require(outcome_to_csv(a) == outcome_to_csv(b), spec.name + " csv");
    ++n;
  }
  v.detail << n << " experiments re-run at default trials";
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<void(Verdict&)> body;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "hadamard impossibility", 5, hadamard_impossibility},
      {2, "qIND construction bound", 30, construction_bound},
      {3, "QOTP perfect secrecy marginal", 5, qotp_marginal},
      {4, "type-1/type-2 oracle equivalence", 5, oracle_equivalence},
      {5, "classical separation suite", 20, separations},
      {6, "PathORAM separation", 60, oram_separation},
      {7, "PathORAM/PathQORAM soundness", 60, oram_soundness},
      {8, "QAP null battery", 60, qap_null},
      {9, "Fiat-Shamir suite", 10, fiat_shamir},
      {10, "determinism", 120, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    auto start = std::chrono::steady_clock::now();
    try {
      c.body(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) {
      v.pass = false;
      v.detail << " [over the " << c.limit_s << " s limit]";
    }
    if (!v.pass) ++failures;
    std::printf("%s criterion %d (%s): %.2f s; %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
