#pragma once

// Random-walk statistics: reduced-length drift on a free group and the
// near-additivity of canonical braid length on random products.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "braidlen/braid.hpp"

namespace braidlen {

struct WalkParams {
  int generators = 2;       // free rank n
  std::size_t steps = 1000; // N
  std::size_t trials = 100; // T
  std::uint64_t seed = 0;

  void validate() const;
};

/// One walk: letters are ±(j+1) for free generator j, and the reduced
/// length after every step.
struct WalkTrajectory {
  std::vector<int> letters;
  std::vector<std::size_t> lengths;
};

WalkTrajectory simulate_walk(int generators, std::size_t steps, Rng& rng);

struct WalkStats {
  double mean_final_length = 0;
  double std_error = 0;
  double analytic_expectation = 0;  // N (n-1)/n
  double drift_estimate = 0;        // mean_final_length / N
  // Moves made while the reduced length was positive.
  std::uint64_t moves_from_positive = 0;
  std::uint64_t up_moves = 0;
  double up_frequency = 0;
  double up_frequency_std_error = 0;
  std::vector<std::size_t> final_lengths;  // per trial, in trial order
};

/// Trial t draws from seeded_rng(seed, {t}), so results do not depend on
/// the order in which trials run.
WalkStats free_group_walk(const WalkParams& params);

double expected_drift(int generators);

struct AdditivitySample {
  std::int64_t len_x = 0;
  std::int64_t len_y = 0;
  std::int64_t len_xy = 0;
  double ratio = 0;
  bool skipped = false;  // len_x + len_y == 0
};

struct AdditivityStats {
  double mean = 0;
  double stddev = 0;
  double min = 0;
  double max = 0;
  std::size_t skipped = 0;
  std::size_t subadditivity_violations = 0;
  std::vector<AdditivitySample> samples;
};

AdditivitySample additivity_sample(const Word& x, const Word& y);

/// Pairs of independent random words of `letters` letters each; pair t draws
/// from seeded_rng(seed, {t}).
AdditivityStats braid_additivity(int strands, std::size_t letters, std::size_t trials, std::uint64_t seed);

}  // namespace braidlen
