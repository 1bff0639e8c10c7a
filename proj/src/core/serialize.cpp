#include "qsec/core/serialize.hpp"

namespace qsec {

using nlohmann::json;

json bits_to_json(const BitString& b) { return json{{"width", b.size()}, {"hex", b.to_hex()}}; }

BitString bits_from_json(const json& j) {
  return BitString::from_hex(j.at("hex").get<std::string>(), j.at("width").get<std::size_t>());
}

json key_to_json(const std::string& scheme, const SecretKey& key) {
  return json{{"scheme", scheme}, {"key", bits_to_json(key.bits)}};
}

SecretKey key_from_json(const json& j) { return SecretKey{bits_from_json(j.at("key"))}; }

json ciphertext_to_json(const Ciphertext& c) {
  json j{{"scheme", c.scheme}, {"payload", bits_to_json(c.payload)}};
  if (c.r) j["r"] = bits_to_json(*c.r);
  if (!c.aux.empty()) {
    j["aux"] = json::array();
    for (const auto& a : c.aux) j["aux"].push_back(ciphertext_to_json(a));
  }
  return j;
}

Ciphertext ciphertext_from_json(const json& j) {
  Ciphertext c;
  c.scheme = j.at("scheme").get<std::string>();
  c.payload = bits_from_json(j.at("payload"));
  if (j.contains("r")) c.r = bits_from_json(j.at("r"));
  if (j.contains("aux")) {
    for (const auto& a : j.at("aux")) c.aux.push_back(ciphertext_from_json(a));
  }
  return c;
}

json trapdoor_to_json(const TrapdoorKeyPair& kp) {
  return json{{"scheme", "owtp-rsa"},
              {"n", kp.index.n},
              {"e", kp.index.e},
              {"p", kp.trapdoor.p},
              {"q", kp.trapdoor.q},
              {"d", kp.trapdoor.d}};
}

TrapdoorKeyPair trapdoor_from_json(const json& j) {
  TrapdoorKeyPair kp;
  kp.index.n = j.at("n").get<std::uint64_t>();
  kp.index.e = j.at("e").get<std::uint64_t>();
  kp.trapdoor.p = j.at("p").get<std::uint64_t>();
  kp.trapdoor.q = j.at("q").get<std::uint64_t>();
  kp.trapdoor.d = j.at("d").get<std::uint64_t>();
  return kp;
}

}  // namespace qsec
