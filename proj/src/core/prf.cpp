#include "qsec/core/prf.hpp"

#include <stdexcept>

#include "qsec/core/rng.hpp"

namespace qsec {

namespace {

std::uint64_t low_mask(std::size_t bits) { return bits >= 64 ? ~0ULL : ((1ULL << bits) - 1); }

}  // namespace

std::uint64_t key_seed(const SecretKey& key) {
  std::uint64_t h = 0x51ed270b27eb1d3bULL ^ key.bits.size();
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < key.bits.size(); ++i) {
    word = (word << 1) | (key.bits[i] ? 1U : 0U);
    if (i % 64 == 63) {
      h = mix_seed(h, word);
      word = 0;
    }
  }
  return mix_seed(h, word);
}

FeistelRound seeded_round_function(std::uint64_t seed) {
  return [seed](std::size_t round, std::uint64_t half) {
    return splitmix64(mix_seed(seed, round) ^ half);
  };
}

FeistelRound zero_round_function() {
  return [](std::size_t, std::uint64_t) { return std::uint64_t{0}; };
}

Feistel::Feistel(std::size_t width, FeistelRound round, std::size_t rounds)
    : width_(width), half_(width / 2), mask_(low_mask(width / 2)), round_(std::move(round)), rounds_(rounds) {
  if (width == 0 || width % 2 != 0 || width > 64) throw std::invalid_argument("Feistel: width must be even and <= 64");
}

std::uint64_t Feistel::forward(std::uint64_t x) const {
  std::uint64_t left = (x >> half_) & mask_;
  std::uint64_t right = x & mask_;
  for (std::size_t i = 0; i < rounds_; ++i) {
    std::uint64_t next_right = left ^ (round_(i, right) & mask_);
    left = right;
    right = next_right;
  }
  return (left << half_) | right;
}

std::uint64_t Feistel::inverse(std::uint64_t y) const {
  std::uint64_t left = (y >> half_) & mask_;
  std::uint64_t right = y & mask_;
  for (std::size_t i = rounds_; i-- > 0;) {
    std::uint64_t prev_left = right ^ (round_(i, left) & mask_);
    right = left;
    left = prev_left;
  }
  return (left << half_) | right;
}

BitString feistel_prp(const SecretKey& key, const BitString& x) {
  Feistel f(x.size(), seeded_round_function(key_seed(key)));
  return BitString::from_uint(f.forward(x.to_uint()), x.size());
}

BitString feistel_prp_inv(const SecretKey& key, const BitString& y) {
  Feistel f(y.size(), seeded_round_function(key_seed(key)));
  return BitString::from_uint(f.inverse(y.to_uint()), y.size());
}

Prf::Prf(SecretKey key, std::size_t in_bits, std::size_t out_bits, PrfBackend backend)
    : key_(std::move(key)), in_bits_(in_bits), out_bits_(out_bits), backend_(backend), seed_(key_seed(key_)) {
  if (in_bits == 0 || out_bits == 0 || in_bits > 64 || out_bits > 64) {
    throw std::invalid_argument("Prf: widths must be in [1, 64]");
  }
  if (backend == PrfBackend::Concrete) {
    if (in_bits != out_bits) throw std::invalid_argument("Prf: concrete backend needs in_bits == out_bits");
    feistel_ = std::make_shared<Feistel>(in_bits, seeded_round_function(seed_));
  }
}

std::uint64_t Prf::eval_uint(std::uint64_t x) const {
  if (in_bits_ < 64 && (x >> in_bits_) != 0) throw std::invalid_argument("Prf: input exceeds width");
  if (backend_ == PrfBackend::Concrete) return feistel_->forward(x);
  auto it = table_.find(x);
  if (it != table_.end()) return it->second;
  std::uint64_t v = mix_seed(seed_, x) & low_mask(out_bits_);
  table_.emplace(x, v);
  return v;
}

BitString Prf::eval(const BitString& x) const {
  if (x.size() != in_bits_) throw std::invalid_argument("Prf: input width mismatch");
  return BitString::from_uint(eval_uint(x.to_uint()), out_bits_);
}

std::size_t Prf::table_size() const { return table_.size(); }

BitString prf_eval(const Prf& prf, const BitString& x) { return prf.eval(x); }

}  // namespace qsec
