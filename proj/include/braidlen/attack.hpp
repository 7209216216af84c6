#pragma once

// Length attack on the commutator exchange: peel the secret conjugator one
// candidate at a time, keeping a candidate only when conjugating every public
// conjugate by it shortens their total canonical length.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "braidlen/braid.hpp"
#include "braidlen/protocol.hpp"

namespace braidlen {

enum class Side { alice, bob };

const char* to_string(Side side);
Side side_from_string(const std::string& name);

struct AttackConfig {
  std::size_t k = 1;                // longest candidate tuple
  std::size_t max_steps = 64;       // cap on accepted peels
  std::int64_t min_decrease = 1;    // score drop needed to accept
  std::size_t backtrack_depth = 0;  // undo budget for rejected accept-points
  std::uint64_t seed = 0;           // recorded only; the search is deterministic
  /// Workload d when the instance does not declare one.
  std::size_t d_max = 0;

  /// Throws validation_error unless k, max_steps and min_decrease are ≥ 1.
  void validate() const;
};

struct Candidate {
  std::vector<SignedFactor> factors;
  Word element;
};

struct AttackStep {
  Candidate candidate;
  std::int64_t score_before = 0;
  std::int64_t score_after = 0;
  std::size_t evaluations_so_far = 0;
};

struct AttackTrace {
  std::vector<AttackStep> steps;
  std::size_t evaluations = 0;
  std::size_t backtracks = 0;
};

struct AttackResult {
  std::vector<SignedFactor> recovered_factors;
  Word recovered;
  bool success = false;
  AttackTrace trace;
  std::uint64_t workload_bound = 0;
  std::int64_t target_score = 0;
};

/// Sum of canonical lengths. Throws empty_instance on an empty list.
std::int64_t score(std::span<const Word> conjugates);
std::int64_t score(std::span<const CanonicalForm> conjugates);

struct Reduction {
  bool reducing = false;
  std::int64_t new_score = 0;
};

/// Scores c u_r c^{-1} over all r against the current score.
Reduction is_reducing(const Candidate& c, std::span<const Word> conjugates, std::int64_t min_decrease);

/// Lazily yields every factor tuple of length 1..k over the 2N signed
/// generators: shorter tuples first, then lexicographic with generator j
/// ordered as s_j before s_j^{-1}. Tuples containing an adjacent
/// mutually-inverse pair are skipped.
class CandidateEnumerator {
 public:
  CandidateEnumerator(const SubgroupGenerators& gens, std::size_t k);

  std::optional<Candidate> next();

 private:
  bool advance();  // moves digits_ to the next tuple of the current length, false when exhausted
  bool admissible() const;

  const SubgroupGenerators* gens_;
  std::size_t k_;
  std::size_t alphabet_;
  std::vector<std::size_t> digits_;  // signed generator codes 2j (+) and 2j+1 (-)
  bool started_ = false;
};

std::vector<Candidate> enumerate_candidates(const SubgroupGenerators& gens, std::size_t k);

/// d * N * (2N)^k. Throws arithmetic_overflow instead of wrapping.
std::uint64_t workload_bound(std::uint64_t d, std::uint64_t n, std::uint64_t k);

/// Recovers the secret of `side`: Alice's a (from a^{-1} t_r a) or Bob's b.
AttackResult attack(const ExchangeInstance& instance, Side side, const AttackConfig& config);

/// True iff conjugating each target generator by `recovered` reproduces the
/// published conjugate for `side`.
bool verify_recovery(const ExchangeInstance& instance, const Word& recovered, Side side = Side::alice);

}  // namespace braidlen
