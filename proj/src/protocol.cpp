#include "braidlen/protocol.hpp"

#include <string>
#include <utility>

#include "braidlen/errors.hpp"

namespace braidlen {

namespace {

// Product of (conjugates[j])^{±1} along `factors`, multiplied in canonical form.
CanonicalForm assemble_form(const std::vector<Word>& conjugates, std::span<const SignedFactor> factors,
                            int strands) {
  std::vector<std::optional<CanonicalForm>> cache(conjugates.size());
  CanonicalForm out = CanonicalForm::identity(strands);
  for (const auto& f : factors) {
    if (f.generator >= conjugates.size()) {
      throw malformed_key("factor index " + std::to_string(f.generator) + " out of range for " +
                          std::to_string(conjugates.size()) + " conjugates");
    }
    if (f.sign != 1 && f.sign != -1) throw malformed_key("factor sign must be ±1");
    if (conjugates[f.generator].strands() != strands) throw incompatible_words("conjugate strand count mismatch");
    auto& entry = cache[f.generator];
    if (!entry) entry = normal_form(conjugates[f.generator]);
    out = multiply(out, f.sign > 0 ? *entry : inverse(*entry));
  }
  return out;
}

}  // namespace

SubgroupGenerators::SubgroupGenerators(std::vector<Word> words) : words_(std::move(words)) {
  if (words_.empty()) throw validation_error("subgroup needs at least one generator");
  const int n = words_.front().strands();
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i].strands() != n) throw validation_error("generators disagree on strand count");
    if (normal_form(words_[i]) == CanonicalForm::identity(n)) {
      throw validation_error("generator " + std::to_string(i) + " is the identity");
    }
  }
}

Word assemble(std::span<const Word> words, std::span<const SignedFactor> factors, int strands) {
  std::vector<Letter> letters;
  for (const auto& f : factors) {
    if (f.generator >= words.size()) {
      throw malformed_key("factor index " + std::to_string(f.generator) + " out of range for " +
                          std::to_string(words.size()) + " words");
    }
    if (f.sign != 1 && f.sign != -1) throw malformed_key("factor sign must be ±1");
    const Word& w = words[f.generator];
    if (w.strands() != strands) throw incompatible_words("factor word strand count mismatch");
    if (f.sign > 0) {
      letters.insert(letters.end(), w.letters().begin(), w.letters().end());
    } else {
      for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) letters.push_back(it->inverse());
    }
  }
  return Word(strands, std::move(letters));
}

Word assemble(const SubgroupGenerators& gens, std::span<const SignedFactor> factors) {
  return assemble(gens.words(), factors, gens.strands());
}

PrivateKey make_private_key(const SubgroupGenerators& gens, std::vector<SignedFactor> factors) {
  Word element = assemble(gens, factors);
  return {std::move(factors), std::move(element)};
}

PrivateKey keygen(const SubgroupGenerators& gens, std::size_t d, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, 2 * gens.size() - 1);
  std::vector<SignedFactor> factors;
  factors.reserve(d);
  while (factors.size() < d) {
    const std::size_t v = pick(rng);
    SignedFactor f{v / 2, (v % 2 == 0) ? 1 : -1};
    if (!factors.empty() && factors.back() == f.inverse()) continue;
    factors.push_back(f);
  }
  return make_private_key(gens, std::move(factors));
}

PublicTransmission publish(const PrivateKey& secret, const SubgroupGenerators& other) {
  if (secret.element.strands() != other.strands()) {
    throw incompatible_words("secret and generators live on different strand counts");
  }
  const CanonicalForm a = normal_form(secret.element);
  const CanonicalForm a_inv = inverse(a);
  PublicTransmission out;
  out.conjugates.reserve(other.size());
  for (const auto& t : other.words()) {
    out.conjugates.push_back(to_word(multiply(multiply(a_inv, normal_form(t)), a)));
  }
  return out;
}

Word derive_shared_alice(const PrivateKey& a, const PublicTransmission& bob_sent) {
  const int n = a.element.strands();
  // b^{-1} a b = product of (b^{-1} s_j b)^{±1} along a's factor list
  const CanonicalForm conjugated = assemble_form(bob_sent.conjugates, a.factors, n);
  return to_word(multiply(normal_form(inverse(a.element)), conjugated));
}

Word derive_shared_bob(const PrivateKey& b, const PublicTransmission& alice_sent) {
  const int n = b.element.strands();
  const CanonicalForm conjugated = assemble_form(alice_sent.conjugates, b.factors, n);  // a^{-1} b a
  return to_word(multiply(inverse(conjugated), normal_form(b.element)));
}

void ExchangeInstance::validate() const {
  const int n = strands();
  if (bob_generators.strands() != n) throw validation_error("generator lists disagree on strand count");
  if (alice_transmission.conjugates.size() != bob_generators.size()) {
    throw validation_error("alice_transmission must have one entry per Bob generator");
  }
  if (bob_transmission.conjugates.size() != alice_generators.size()) {
    throw validation_error("bob_transmission must have one entry per Alice generator");
  }
  for (const auto* list : {&alice_transmission.conjugates, &bob_transmission.conjugates}) {
    for (const auto& w : *list) {
      if (w.strands() != n) throw validation_error("transmission strand count mismatch");
    }
  }
  if (fixture) {
    for (const auto& f : fixture->alice)
      if (f.generator >= alice_generators.size()) throw validation_error("alice fixture index out of range");
    for (const auto& f : fixture->bob)
      if (f.generator >= bob_generators.size()) throw validation_error("bob fixture index out of range");
  }
}

std::vector<Word> random_generators(int strands, std::size_t count, std::size_t letters, Rng& rng) {
  if (letters == 0) throw validation_error("generators need at least one letter");
  std::vector<Word> out;
  out.reserve(count);
  while (out.size() < count) {
    Word w = random_word(strands, letters, rng);
    if (normal_form(w) == CanonicalForm::identity(strands)) continue;
    out.push_back(std::move(w));
  }
  return out;
}

ExchangeInstance generate_session(const SessionParams& params, Rng& rng) {
  SubgroupGenerators alice_gens(
      random_generators(params.strands, params.alice_generator_count, params.generator_letters, rng));
  SubgroupGenerators bob_gens(
      random_generators(params.strands, params.bob_generator_count, params.generator_letters, rng));
  PrivateKey a = keygen(alice_gens, params.secret_factors, rng);
  PrivateKey b = keygen(bob_gens, params.secret_factors, rng);
  PublicTransmission from_alice = publish(a, bob_gens);
  PublicTransmission from_bob = publish(b, alice_gens);
  return ExchangeInstance{std::move(alice_gens),
                          std::move(bob_gens),
                          std::move(from_alice),
                          std::move(from_bob),
                          params.secret_factors,
                          PrivateFixture{std::move(a.factors), std::move(b.factors)}};
}

// ---- Ko–Lee ----------------------------------------------------------------

void KoLeeParams::validate() const {
  if (left_strands < 1 || right_strands < 1) throw validation_error("Ko-Lee n and m must be positive");
  if (base.strands() != left_strands + right_strands) {
    throw validation_error("Ko-Lee base braid must live on n + m strands");
  }
}

KoLeeKeys kolee_exchange(const KoLeeParams& params, const Word& a, const Word& b) {
  params.validate();
  const int n = params.left_strands;
  const int total = params.left_strands + params.right_strands;
  if (a.strands() != total || b.strands() != total) throw subgroup_violation("secret strand count is not n + m");
  for (const auto& l : a.letters()) {
    if (l.index > n - 1) throw subgroup_violation("left secret uses sigma_" + std::to_string(l.index));
  }
  for (const auto& l : b.letters()) {
    if (l.index < n + 1) throw subgroup_violation("right secret uses sigma_" + std::to_string(l.index));
  }
  const Word& x = params.base;
  const Word alice_sends = canonical_word(concat(a, x, inverse(a)));
  const Word bob_sends = canonical_word(concat(b, x, inverse(b)));
  return {canonical_word(concat(a, bob_sends, inverse(a))), canonical_word(concat(b, alice_sends, inverse(b)))};
}

Word random_left_word(const KoLeeParams& params, std::size_t letters, Rng& rng) {
  params.validate();
  const int total = params.left_strands + params.right_strands;
  if (params.left_strands < 2) return Word(total);
  std::uniform_int_distribution<int> pick(0, 2 * (params.left_strands - 1) - 1);
  std::vector<Letter> out;
  for (std::size_t i = 0; i < letters; ++i) {
    int v = pick(rng);
    out.push_back({v / 2 + 1, v % 2 == 0 ? 1 : -1});
  }
  return Word(total, std::move(out));
}

Word random_right_word(const KoLeeParams& params, std::size_t letters, Rng& rng) {
  params.validate();
  const int total = params.left_strands + params.right_strands;
  if (params.right_strands < 2) return Word(total);
  std::uniform_int_distribution<int> pick(0, 2 * (params.right_strands - 1) - 1);
  std::vector<Letter> out;
  for (std::size_t i = 0; i < letters; ++i) {
    int v = pick(rng);
    out.push_back({params.left_strands + 1 + v / 2, v % 2 == 0 ? 1 : -1});
  }
  return Word(total, std::move(out));
}

}  // namespace braidlen
