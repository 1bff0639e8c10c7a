#include <doctest.h>

#include <cmath>

#include "qsec/attacks/bm_oram.hpp"
#include "qsec/attacks/classical.hpp"
#include "qsec/attacks/hadamard.hpp"
#include "qsec/attacks/qap_distinguishers.hpp"
#include "qsec/core/numtheory.hpp"
#include "qsec/qsim/gates.hpp"

using namespace qsec;

namespace {

ApGameConfig bm_game(const BmModulus& mod) {
  ApGameConfig cfg;
  cfg.oram.n_max = 16;
  cfg.oram.prng = blum_micali_prng_factory(mod.p, mod.g);
  cfg.oram.snapshots = false;
  return cfg;
}

BmAttackParams bm_params(const BmModulus& mod, std::size_t history) {
  BmAttackParams prm;
  prm.p = mod.p;
  prm.g = mod.g;
  prm.history = history;
  return prm;
}

}  // namespace

TEST_CASE("exhaustive discrete log") {
  CHECK(dlog_bruteforce(23, 5, 10) == 3);
  CHECK(dlog_bruteforce(23, 5, 1) == 0);
  CHECK(dlog_bruteforce(23, 2, 8) == 3);
  CHECK_THROWS_AS(dlog_bruteforce(23, 2, 5), std::domain_error);
  CHECK_THROWS_AS(dlog_bruteforce(24, 5, 1), std::invalid_argument);
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    std::uint64_t x = rng.below(1000);
    CHECK(dlog_bruteforce(1009, 11, nt::powmod(11, x, 1009)) == x);
  }
}

TEST_CASE("core function split") {
  Rng rng(1);
  auto gold = goldreich_factory(3, 3, PrfBackend::Ideal)(rng);
  CoreSplit g = core_function_split(*gold);
  CHECK(g.quasi_length_preserving);
  CHECK(g.core_offset == 3);
  CHECK(g.core_bits == 3);
  const auto& prf = dynamic_cast<const GoldreichScheme&>(*gold).prf();
  BitString r = BitString::from_binary("101");
  BitString x = BitString::from_binary("011");
  CHECK(g.core(r, x) == (x ^ prf.eval(r)));
  CHECK(gold->enc_with(x, r).flatten() == r.concat(g.core(r, x)));

  auto prp = prp_factory(2, 4)(rng);
  CoreSplit p = core_function_split(*prp);
  CHECK_FALSE(p.quasi_length_preserving);
  CHECK(p.core_bits == 6);

  auto otp = otp_factory(4)(rng);
  CoreSplit o = core_function_split(*otp);
  CHECK(o.quasi_length_preserving);
  CHECK(o.rand_bits == 0);
  BitString key = dynamic_cast<const OtpScheme&>(*otp).key();
  CHECK(o.core(BitString(), x.concat(BitString::from_binary("1"))) == (x.concat(BitString::from_binary("1")) ^ key));

  auto etm = etm_factory(4)(rng);
  CHECK_THROWS_AS(core_function_split(*etm), std::invalid_argument);
}

TEST_CASE("hadamard outcome is fixed by the challenge bit") {
  Rng rng(8);
  for (std::size_t m = 2; m <= 6; ++m) {
    for (const SkesFactory& f : {otp_factory(m), goldreich_factory(m, m, PrfBackend::Ideal)}) {
      std::shared_ptr<const Skes> inner(f(rng));
      auto lift = skqes_type2_lift(inner);
      CoreSplit split = core_function_split(*inner);
      CHECK(hadamard_zero_probability(*lift, split, false, rng) == doctest::Approx(1.0));
      CHECK(hadamard_zero_probability(*lift, split, true, rng) == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
  Rng probe(0);
  CoreSplit split = core_function_split(*goldreich_factory(3, 3, PrfBackend::Ideal)(probe));
  ExperimentResult r =
      run_qind("hadamard", lift_factory(goldreich_factory(3, 3, PrfBackend::Ideal)), hadamard_distinguisher(split), 100, 7);
  CHECK(r.successes == 100);
}

TEST_CASE("hadamard against the expanding permutation scheme stays under the bound") {
  Rng probe(0);
  SkesFactory prp = prp_factory(2, 4);
  CoreSplit split = core_function_split(*prp(probe));
  ExperimentResult r = run_qind("hadamard-prp", lift_factory(prp), hadamard_distinguisher(split), 300, 9);
  CHECK(r.advantage <= std::pow(2.0, -4 + 2) + 3 * null_sigma(300));
}

TEST_CASE("classical separations") {
  CHECK(run_ind("otp", otp_factory(8), otp_reuse_attack(), IndVariant::Cpa, 200, 1).successes == 200);
  CHECK(within_null(run_ind("otp-h", goldreich_factory(16), otp_reuse_attack(), IndVariant::Cpa, 1000, 2)));

  CHECK(run_ind("cca1", cca1_sep_factory(8), cca1_counterexample_attack(), IndVariant::Cca1, 200, 3).successes == 200);
  CHECK(within_null(run_ind("cca1-h", goldreich_factory(8), cca1_counterexample_attack(), IndVariant::Cca1, 1000, 4)));
  auto adv = cca1_counterexample_attack()();
  CHECK_THROWS_AS(game_ind(cca1_sep_factory(8), *adv, IndVariant::Cpa, 1), HarnessError);

  CHECK(run_ind("cca2", goldreich_factory(8), cca2_flip_attack(), IndVariant::Cca2, 200, 5).successes == 200);
  CHECK(within_null(run_ind("cca2-h", etm_factory(8), cca2_flip_attack(), IndVariant::Cca2, 1000, 6)));

  Rng rng(3);
  auto gold = goldreich_factory(8)(rng);
  Ciphertext c = gold->enc(BitString::zeros(8), rng);
  CHECK_FALSE(cca2_restricted_dec(*gold, c, c).has_value());
  Ciphertext flipped = c;
  flipped.payload = c.payload ^ BitString::ones(8);
  CHECK(cca2_restricted_dec(*gold, c, flipped) == BitString::ones(8));
}

TEST_CASE("blum-micali tables and state recovery") {
  BmModulus mod = bm_default_modulus();
  CHECK(mod.p == 1048573);
  CHECK(nt::is_primitive_root(mod.g, mod.p));
  auto t = bm_tables(mod.p, mod.g);
  CHECK(t->pow[5] == nt::powmod(mod.g, 5, mod.p));
  CHECK(t->log[nt::powmod(mod.g, 777, mod.p)] == 777);

  // Leaves from the table walk match the PRNG used by the client.
  PrngState st = make_blum_micali(mod.p, mod.g, 4242);
  std::vector<std::uint64_t> leaves = bm_leaf_draws(*t, 4242, 6, 5, 4);
  for (std::size_t d = 0; d < 6; ++d) {
    auto [bits, next] = prng_next_bits(st, 5);
    st = next;
    CHECK(leaves[d] == truncate_leaf(bits, 4));
  }
}

TEST_CASE("bm attack reads exactly the draws the client consumed") {
  BmModulus mod = bm_default_modulus();
  ApGameConfig cfg = bm_game(mod);
  cfg.oram.n_db = 16;
  Rng init(77);
  OramInstance inst = oram_init(cfg.oram, init);
  std::uint64_t seed = init.split(2).range(1, mod.p - 1);
  ApOracle oracle(inst.client, inst.server, 64);

  auto trace = std::make_shared<BmAttackTrace>();
  auto adv = bm_oram_attack(bm_params(mod, 16), trace)();
  Rng rng(5);
  adv->choose(oracle, rng);
  const auto& draws = inst.client.leaf_draws;
  REQUIRE(trace->observed_leaves.size() == 16);
  CHECK(trace->observed_leaves[0] == draws[0]);
  for (std::size_t t = 1; t < 16; ++t) CHECK(trace->observed_leaves[t] == draws[16 + t - 1]);
  REQUIRE(trace->recovered_seed);
  CHECK(*trace->recovered_seed == seed);
  CHECK(*trace->predicted_leaf == inst.client.position_map[1]);
  CHECK(draws[trace->other_id - 1] != *trace->predicted_leaf);
}

TEST_CASE("bm attack wins against the blum-micali instantiation only") {
  BmModulus mod = bm_default_modulus();
  ExperimentResult r = run_ap("bm", bm_game(mod), bm_oram_attack(bm_params(mod, 16)), 60, 1);
  CHECK(r.successes >= 57);

  ApGameConfig secure = bm_game(mod);
  secure.oram.prng = secure_prng_factory();
  ExperimentResult s = run_ap("bm-secure", secure, bm_oram_attack(bm_params(mod, 16)), 200, 2);
  CHECK(within_null(s));

  auto trace = std::make_shared<BmAttackTrace>();
  auto adv = bm_oram_attack(bm_params(mod, 0), trace)();
  game_ap_ind_cqa(bm_game(mod), *adv, 3);
  CHECK(trace->guessed_randomly);
  CHECK(within_null(run_ap("bm-k0", bm_game(mod), bm_oram_attack(bm_params(mod, 0)), 400, 4)));

  CHECK(within_null(run_ap("parity", secure, leaf_parity_adversary(), 1000, 5)));
}

TEST_CASE("qap distinguishers are null") {
  QapGameConfig cfg;
  CHECK(within_null(run_qap("tag", cfg, qap_tag_only_distinguisher(), 500, 1)));
  CHECK(within_null(run_qap("payload", cfg, qap_payload_only_distinguisher(), 500, 2)));
  QapGameConfig wide = cfg;
  wide.qoram.n_dat = 2;
  CHECK(within_null(run_qap("payload2", wide, qap_payload_only_distinguisher(), 300, 3)));
}

TEST_CASE("attack catalog") {
  CHECK(attack_catalog().size() >= 5);
  for (const auto& a : attack_catalog()) {
    CHECK_FALSE(a.name.empty());
    CHECK_FALSE(a.game.empty());
  }
}
