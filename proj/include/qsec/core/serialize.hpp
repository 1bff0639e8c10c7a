#pragma once

#include <json.hpp>

#include "qsec/core/bitstring.hpp"
#include "qsec/core/owtp.hpp"
#include "qsec/core/prf.hpp"
#include "qsec/core/schemes.hpp"

namespace qsec {

// {"width": n, "hex": "..."}
nlohmann::json bits_to_json(const BitString& b);
BitString bits_from_json(const nlohmann::json& j);

nlohmann::json key_to_json(const std::string& scheme, const SecretKey& key);
SecretKey key_from_json(const nlohmann::json& j);

nlohmann::json ciphertext_to_json(const Ciphertext& c);
Ciphertext ciphertext_from_json(const nlohmann::json& j);

nlohmann::json trapdoor_to_json(const TrapdoorKeyPair& kp);
TrapdoorKeyPair trapdoor_from_json(const nlohmann::json& j);

}  // namespace qsec
