#pragma once

// Commutator key exchange over two public subgroups of B_n, and the
// commuting-subgroup exchange on B_{n+m}.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "braidlen/braid.hpp"

namespace braidlen {

/// One factor of a secret: a public generator (0-based index) raised to ±1.
struct SignedFactor {
  std::size_t generator = 0;
  int sign = 1;

  SignedFactor inverse() const { return {generator, -sign}; }
  friend bool operator==(const SignedFactor&, const SignedFactor&) = default;
};

class SubgroupGenerators {
 public:
  /// Throws validation_error when empty, mixed on strands, or containing a
  /// word equal to the identity.
  explicit SubgroupGenerators(std::vector<Word> words);

  int strands() const { return words_.front().strands(); }
  std::size_t size() const { return words_.size(); }
  const Word& operator[](std::size_t i) const { return words_[i]; }
  const std::vector<Word>& words() const { return words_; }

 private:
  std::vector<Word> words_;
};

/// Product of the referenced words with their signs, left to right.
/// Throws malformed_key for an index out of range or a sign other than ±1.
Word assemble(std::span<const Word> words, std::span<const SignedFactor> factors, int strands);
Word assemble(const SubgroupGenerators& gens, std::span<const SignedFactor> factors);

struct PrivateKey {
  std::vector<SignedFactor> factors;
  Word element;
};

PrivateKey make_private_key(const SubgroupGenerators& gens, std::vector<SignedFactor> factors);

/// d i.i.d. uniform signed factors; a draw that would cancel its predecessor
/// is redrawn.
PrivateKey keygen(const SubgroupGenerators& gens, std::size_t d, Rng& rng);

struct PublicTransmission {
  /// Entry r is the canonical spelling of a^{-1} t_r a.
  std::vector<Word> conjugates;
};

PublicTransmission publish(const PrivateKey& secret, const SubgroupGenerators& other);

/// [a, b] from Alice's side: rebuilds b^{-1} a b from Bob's conjugates.
Word derive_shared_alice(const PrivateKey& a, const PublicTransmission& bob_sent);
/// [a, b] from Bob's side: rebuilds a^{-1} b a from Alice's conjugates.
Word derive_shared_bob(const PrivateKey& b, const PublicTransmission& alice_sent);

/// Private factor lists kept alongside an instance for tests and campaigns.
struct PrivateFixture {
  std::vector<SignedFactor> alice;
  std::vector<SignedFactor> bob;
};

struct ExchangeInstance {
  SubgroupGenerators alice_generators;
  SubgroupGenerators bob_generators;
  PublicTransmission alice_transmission;  // a^{-1} t_r a
  PublicTransmission bob_transmission;    // b^{-1} s_j b
  /// Declared secret factor count, used by workload accounting.
  std::optional<std::size_t> secret_factor_count;
  std::optional<PrivateFixture> fixture;

  int strands() const { return alice_generators.strands(); }
  /// Throws validation_error on strand or count mismatches.
  void validate() const;
};

struct SessionParams {
  int strands = 12;
  std::size_t alice_generator_count = 4;
  std::size_t bob_generator_count = 4;
  std::size_t generator_letters = 20;
  std::size_t secret_factors = 4;
};

/// Public generators of `letters` letters each, redrawn if one is trivial.
std::vector<Word> random_generators(int strands, std::size_t count, std::size_t letters, Rng& rng);

/// Full AAG session: generators for both sides, both secrets, both
/// transmissions, with the private fixture attached.
ExchangeInstance generate_session(const SessionParams& params, Rng& rng);

// ---- Ko–Lee ----------------------------------------------------------------

struct KoLeeParams {
  int left_strands = 4;   // n: secrets of Alice use sigma_1..sigma_{n-1}
  int right_strands = 4;  // m: secrets of Bob use sigma_{n+1}..sigma_{n+m-1}
  Word base = Word(8);

  void validate() const;
};

struct KoLeeKeys {
  Word alice_key;
  Word bob_key;
};

/// Throws subgroup_violation if `a` leaves LB_n or `b` leaves RB_m.
KoLeeKeys kolee_exchange(const KoLeeParams& params, const Word& a, const Word& b);

Word random_left_word(const KoLeeParams& params, std::size_t letters, Rng& rng);
Word random_right_word(const KoLeeParams& params, std::size_t letters, Rng& rng);

}  // namespace braidlen
