#include "qsec/fs/oracle.hpp"

#include <stdexcept>

#include "qsec/core/rng.hpp"

namespace qsec {

namespace {

std::uint64_t input_hash(std::uint64_t seed, const std::string& input) {
  std::uint64_t h = mix_seed(seed, input.size());
  std::uint64_t chunk = 0;
  std::size_t fill = 0;
  for (unsigned char c : input) {
    chunk = (chunk << 8) | c;
    if (++fill == 8) {
      h = mix_seed(h, chunk);
      chunk = 0;
      fill = 0;
    }
  }
  if (fill > 0) h = mix_seed(h, chunk);
  return h;
}

std::string to_hex(const std::string& s) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (unsigned char c : s) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

std::string from_hex(const std::string& s) {
  if (s.size() % 2 != 0) throw std::invalid_argument("oracle dump: odd-length hex key");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw std::invalid_argument("oracle dump: bad hex digit");
  };
  std::string out;
  for (std::size_t i = 0; i < s.size(); i += 2) out.push_back(static_cast<char>(nibble(s[i]) << 4 | nibble(s[i + 1])));
  return out;
}

}  // namespace

RandomOracle::RandomOracle(std::uint64_t range, std::uint64_t seed) : range_(range), seed_(seed) {
  if (range == 0) throw std::invalid_argument("random oracle: range must be positive");
}

std::uint64_t RandomOracle::query(const std::string& input) {
  auto it = table_.find(input);
  if (it != table_.end()) return it->second.value;
  Rng rng(input_hash(seed_, input));
  double coin = rng.uniform01();
  bool pin = mode_ == OracleMode::SemiConstant && coin < delta_;
  std::uint64_t fresh = rng.below(range_);
  Entry e{pin ? pinned_ : fresh, pin};
  table_.emplace(input, e);
  return e.value;
}

std::size_t RandomOracle::pinned_count() const {
  std::size_t n = 0;
  for (const auto& [k, e] : table_) n += e.pinned ? 1 : 0;
  return n;
}

nlohmann::json RandomOracle::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [k, e] : table_) entries.push_back({{"input", to_hex(k)}, {"value", e.value}, {"pinned", e.pinned}});
  return {{"range", range_},
          {"seed", seed_},
          {"mode", mode_ == OracleMode::Uniform ? "uniform" : "semi-constant"},
          {"delta", delta_},
          {"pinned", pinned_},
          {"table", entries}};
}

RandomOracle RandomOracle::from_json(const nlohmann::json& j) {
  try {
    RandomOracle o(j.at("range").get<std::uint64_t>(), j.at("seed").get<std::uint64_t>());
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "semi-constant") {
      o = semi_constant_oracle(j.at("delta").get<double>(), j.at("pinned").get<std::uint64_t>(), o.range_, o.seed_);
    } else if (mode != "uniform") {
      throw std::invalid_argument("oracle dump: unknown mode " + mode);
    }
    for (const auto& e : j.at("table")) {
      std::uint64_t v = e.at("value").get<std::uint64_t>();
      if (v >= o.range_) throw std::invalid_argument("oracle dump: value out of range");
      o.table_[from_hex(e.at("input").get<std::string>())] = Entry{v, e.at("pinned").get<bool>()};
    }
    return o;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("oracle dump: ") + e.what());
  }
}

RandomOracle uniform_oracle(std::uint64_t range, std::uint64_t seed) { return RandomOracle(range, seed); }

RandomOracle semi_constant_oracle(double delta, std::uint64_t pinned, std::uint64_t range, std::uint64_t seed) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("semi-constant oracle: delta must lie in [0, 1]");
  if (pinned >= range) throw std::invalid_argument("semi-constant oracle: pinned output out of range");
  RandomOracle o(range, seed);
  o.mode_ = OracleMode::SemiConstant;
  o.delta_ = delta;
  o.pinned_ = pinned;
  return o;
}

std::string encode_u64(std::uint64_t v) {
  std::string out(8, '\0');
  for (int i = 7; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<char>(v & 0xff);
    v >>= 8;
  }
  return out;
}

std::string length_prefixed(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    out += encode_u64(p.size());
    out += p;
  }
  return out;
}

}  // namespace qsec
