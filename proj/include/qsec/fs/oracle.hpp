#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace qsec {

enum class OracleMode { Uniform, SemiConstant };

// Lazily sampled random oracle from byte strings to [0, range). Answers are a
// deterministic function of (seed, input), so the table contents do not depend
// on query order. In semi-constant mode each fresh input is pinned with
// probability delta.
class RandomOracle {
 public:
  RandomOracle(std::uint64_t range, std::uint64_t seed);

  std::uint64_t query(const std::string& input);
  bool contains(const std::string& input) const { return table_.count(input) != 0; }
  std::size_t size() const { return table_.size(); }
  std::size_t pinned_count() const;

  std::uint64_t range() const { return range_; }
  std::uint64_t seed() const { return seed_; }
  OracleMode mode() const { return mode_; }
  double delta() const { return delta_; }
  std::uint64_t pinned() const { return pinned_; }

  nlohmann::json to_json() const;
  // Throws std::invalid_argument on a malformed dump.
  static RandomOracle from_json(const nlohmann::json& j);

  friend RandomOracle semi_constant_oracle(double delta, std::uint64_t pinned, std::uint64_t range, std::uint64_t seed);

 private:
  struct Entry {
    std::uint64_t value;
    bool pinned;
  };
  std::uint64_t range_;
  std::uint64_t seed_;
  OracleMode mode_ = OracleMode::Uniform;
  double delta_ = 0.0;
  std::uint64_t pinned_ = 0;
  std::map<std::string, Entry> table_;
};

RandomOracle uniform_oracle(std::uint64_t range, std::uint64_t seed);
// Throws std::invalid_argument unless 0 <= delta <= 1 and pinned < range.
RandomOracle semi_constant_oracle(double delta, std::uint64_t pinned, std::uint64_t range, std::uint64_t seed);

// Injective encoding: each part is preceded by its length as 8 big-endian bytes.
std::string length_prefixed(const std::vector<std::string>& parts);
std::string encode_u64(std::uint64_t v);

}  // namespace qsec
