#pragma once

// JSON documents shared by the library and the CLI.
//
//   Word           {"strands": n, "letters": [±i, ...]}
//   CanonicalForm  {"strands": n, "infimum": p, "factors": [[images, 1-based], ...]}
//   Instance       {"strands", "alice_generators", "bob_generators",
//                   "alice_transmission", "bob_transmission",
//                   optional "secret_factor_count", optional "private_fixture"}
//
// Secret factors are written as signed 1-based generator indices, the same
// convention as letters: +2 is s_2, -2 is s_2^{-1}.

#include "json.hpp"

#include "braidlen/attack.hpp"
#include "braidlen/braid.hpp"
#include "braidlen/protocol.hpp"

namespace braidlen {

using json = nlohmann::json;

json to_json(const Word& w);
Word word_from_json(const json& j);

json to_json(const Permutation& p);
Permutation permutation_from_json(const json& j);

json to_json(const CanonicalForm& f);
CanonicalForm canonical_form_from_json(const json& j);

json factors_to_json(const std::vector<SignedFactor>& factors);
std::vector<SignedFactor> factors_from_json(const json& j);

json to_json(const ExchangeInstance& instance);
ExchangeInstance instance_from_json(const json& j);

json to_json(const AttackResult& result);

}  // namespace braidlen
