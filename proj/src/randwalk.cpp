#include "braidlen/randwalk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "braidlen/errors.hpp"

namespace braidlen {

void WalkParams::validate() const {
  if (generators < 1) throw validation_error("free group rank must be at least 1");
  if (steps < 1) throw validation_error("walk needs at least one step");
  if (trials < 1) throw validation_error("walk needs at least one trial");
}

WalkTrajectory simulate_walk(int generators, std::size_t steps, Rng& rng) {
  if (generators < 1) throw validation_error("free group rank must be at least 1");
  std::uniform_int_distribution<int> pick(0, 2 * generators - 1);
  WalkTrajectory out;
  out.letters.reserve(steps);
  out.lengths.reserve(steps);
  std::vector<int> reduced;
  for (std::size_t s = 0; s < steps; ++s) {
    const int v = pick(rng);
    const int letter = (v % 2 == 0 ? 1 : -1) * (v / 2 + 1);
    out.letters.push_back(letter);
    if (!reduced.empty() && reduced.back() == -letter) {
      reduced.pop_back();
    } else {
      reduced.push_back(letter);
    }
    out.lengths.push_back(reduced.size());
  }
  return out;
}

double expected_drift(int generators) {
  if (generators < 1) throw validation_error("free group rank must be at least 1");
  return static_cast<double>(generators - 1) / generators;
}

WalkStats free_group_walk(const WalkParams& params) {
  params.validate();
  WalkStats stats;
  stats.final_lengths.reserve(params.trials);
  double sum = 0;
  double sum_sq = 0;
  for (std::size_t t = 0; t < params.trials; ++t) {
    Rng rng = seeded_rng(params.seed, {t});
    const auto walk = simulate_walk(params.generators, params.steps, rng);
    std::size_t previous = 0;
    for (std::size_t len : walk.lengths) {
      if (previous > 0) {
        ++stats.moves_from_positive;
        if (len > previous) ++stats.up_moves;
      }
      previous = len;
    }
    const double final_len = static_cast<double>(walk.lengths.back());
    stats.final_lengths.push_back(walk.lengths.back());
    sum += final_len;
    sum_sq += final_len * final_len;
  }
  const double t = static_cast<double>(params.trials);
  const double n_steps = static_cast<double>(params.steps);
  stats.mean_final_length = sum / t;
  const double var = params.trials > 1 ? (sum_sq - t * stats.mean_final_length * stats.mean_final_length) / (t - 1) : 0.0;
  stats.std_error = std::sqrt(std::max(var, 0.0) / t);
  stats.analytic_expectation = n_steps * expected_drift(params.generators);
  stats.drift_estimate = stats.mean_final_length / n_steps;
  if (stats.moves_from_positive > 0) {
    const double m = static_cast<double>(stats.moves_from_positive);
    stats.up_frequency = static_cast<double>(stats.up_moves) / m;
    stats.up_frequency_std_error = std::sqrt(stats.up_frequency * (1 - stats.up_frequency) / m);
  }
  return stats;
}

AdditivitySample additivity_sample(const Word& x, const Word& y) {
  AdditivitySample s;
  s.len_x = length(x);
  s.len_y = length(y);
  s.len_xy = length(concat(x, y));
  if (s.len_x + s.len_y == 0) {
    s.skipped = true;
  } else {
    s.ratio = static_cast<double>(s.len_xy) / static_cast<double>(s.len_x + s.len_y);
  }
  return s;
}

AdditivityStats braid_additivity(int strands, std::size_t letters, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw validation_error("additivity needs at least one trial");
  if (letters < 1) throw validation_error("additivity needs at least one letter per word");
  AdditivityStats stats;
  stats.samples.reserve(trials);
  stats.min = std::numeric_limits<double>::infinity();
  stats.max = -std::numeric_limits<double>::infinity();
  double sum = 0;
  double sum_sq = 0;
  std::size_t counted = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = seeded_rng(seed, {t});
    const Word x = random_word(strands, letters, rng);
    const Word y = random_word(strands, letters, rng);
    const auto s = additivity_sample(x, y);
    stats.samples.push_back(s);
    if (s.len_xy > s.len_x + s.len_y) ++stats.subadditivity_violations;
    if (s.skipped) {
      ++stats.skipped;
      continue;
    }
    ++counted;
    sum += s.ratio;
    sum_sq += s.ratio * s.ratio;
    stats.min = std::min(stats.min, s.ratio);
    stats.max = std::max(stats.max, s.ratio);
  }
  if (counted > 0) {
    const double c = static_cast<double>(counted);
    stats.mean = sum / c;
    stats.stddev = counted > 1 ? std::sqrt(std::max(0.0, (sum_sq - c * stats.mean * stats.mean) / (c - 1))) : 0.0;
  } else {
    stats.min = stats.max = 0;
  }
  return stats;
}

}  // namespace braidlen
