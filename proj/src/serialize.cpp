#include "braidlen/serialize.hpp"

#include <string>
#include <utility>

#include "braidlen/errors.hpp"

namespace braidlen {

namespace {

constexpr const char* kFixtureFlag = "TEST FIXTURE ONLY: contains private keys";

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw format_error(std::string("missing field '") + name + "'");
  return j.at(name);
}

template <typename T>
T get_as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw format_error(std::string("bad ") + what + ": " + e.what());
  }
}

std::vector<Word> words_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw format_error(std::string(what) + " must be an array");
  std::vector<Word> out;
  out.reserve(j.size());
  for (const auto& w : j) out.push_back(word_from_json(w));
  return out;
}

json words_to_json(const std::vector<Word>& words) {
  json arr = json::array();
  for (const auto& w : words) arr.push_back(to_json(w));
  return arr;
}

}  // namespace

json to_json(const Word& w) { return {{"strands", w.strands()}, {"letters", w.signed_letters()}}; }

Word word_from_json(const json& j) {
  const int n = get_as<int>(field(j, "strands"), "strands");
  const auto letters = get_as<std::vector<int>>(field(j, "letters"), "letters");
  return Word::from_signed(n, letters);
}

json to_json(const Permutation& p) { return p.images(); }

Permutation permutation_from_json(const json& j) {
  return Permutation::from_images(get_as<std::vector<int>>(j, "permutation"));
}

json to_json(const CanonicalForm& f) {
  json factors = json::array();
  for (const auto& x : f.factors()) factors.push_back(to_json(x));
  return {{"strands", f.strands()}, {"infimum", f.infimum()}, {"factors", std::move(factors)}};
}

CanonicalForm canonical_form_from_json(const json& j) {
  const int n = get_as<int>(field(j, "strands"), "strands");
  const auto p = get_as<std::int64_t>(field(j, "infimum"), "infimum");
  const json& fs = field(j, "factors");
  if (!fs.is_array()) throw format_error("factors must be an array");
  std::vector<Permutation> factors;
  for (const auto& x : fs) {
    factors.push_back(permutation_from_json(x));
    if (factors.back().strands() != n) throw invalid_canonical_form("factor size differs from strands");
  }
  return CanonicalForm(n, p, std::move(factors));
}

json factors_to_json(const std::vector<SignedFactor>& factors) {
  json arr = json::array();
  for (const auto& f : factors) arr.push_back(f.sign * static_cast<long long>(f.generator + 1));
  return arr;
}

std::vector<SignedFactor> factors_from_json(const json& j) {
  std::vector<SignedFactor> out;
  for (long long v : get_as<std::vector<long long>>(j, "factor list")) {
    if (v == 0) throw format_error("factor 0 is not a generator reference");
    out.push_back({static_cast<std::size_t>((v > 0 ? v : -v) - 1), v > 0 ? 1 : -1});
  }
  return out;
}

json to_json(const ExchangeInstance& instance) {
  json j = {{"strands", instance.strands()},
            {"alice_generators", words_to_json(instance.alice_generators.words())},
            {"bob_generators", words_to_json(instance.bob_generators.words())},
            {"alice_transmission", words_to_json(instance.alice_transmission.conjugates)},
            {"bob_transmission", words_to_json(instance.bob_transmission.conjugates)}};
  if (instance.secret_factor_count) j["secret_factor_count"] = *instance.secret_factor_count;
  if (instance.fixture) {
    j["private_fixture"] = {{"flag", kFixtureFlag},
                            {"alice_secret", factors_to_json(instance.fixture->alice)},
                            {"bob_secret", factors_to_json(instance.fixture->bob)}};
  }
  return j;
}

ExchangeInstance instance_from_json(const json& j) {
  const int n = get_as<int>(field(j, "strands"), "strands");
  ExchangeInstance inst{SubgroupGenerators(words_from_json(field(j, "alice_generators"), "alice_generators")),
                        SubgroupGenerators(words_from_json(field(j, "bob_generators"), "bob_generators")),
                        PublicTransmission{words_from_json(field(j, "alice_transmission"), "alice_transmission")},
                        PublicTransmission{words_from_json(field(j, "bob_transmission"), "bob_transmission")},
                        std::nullopt,
                        std::nullopt};
  if (inst.strands() != n) throw validation_error("instance strands field disagrees with generators");
  if (j.contains("secret_factor_count")) {
    inst.secret_factor_count = get_as<std::size_t>(j.at("secret_factor_count"), "secret_factor_count");
  }
  if (j.contains("private_fixture")) {
    const json& pf = j.at("private_fixture");
    inst.fixture = PrivateFixture{factors_from_json(field(pf, "alice_secret")),
                                  factors_from_json(field(pf, "bob_secret"))};
  }
  inst.validate();
  return inst;
}

json to_json(const AttackResult& result) {
  json steps = json::array();
  for (const auto& s : result.trace.steps) {
    steps.push_back({{"candidate", factors_to_json(s.candidate.factors)},
                     {"score_before", s.score_before},
                     {"score_after", s.score_after},
                     {"evaluations_so_far", s.evaluations_so_far}});
  }
  return {{"success", result.success},
          {"recovered_factors", factors_to_json(result.recovered_factors)},
          {"recovered", to_json(result.recovered)},
          {"target_score", result.target_score},
          {"steps", std::move(steps)},
          {"evaluations", result.trace.evaluations},
          {"backtracks", result.trace.backtracks},
          {"workload_bound", result.workload_bound},
          {"within_workload_bound", result.trace.evaluations <= result.workload_bound}};
}

}  // namespace braidlen
