#include "braidlen/attack.hpp"

#include <limits>
#include <string>
#include <utility>

#include "braidlen/errors.hpp"

namespace braidlen {

const char* to_string(Side side) { return side == Side::alice ? "alice" : "bob"; }

Side side_from_string(const std::string& name) {
  if (name == "alice") return Side::alice;
  if (name == "bob") return Side::bob;
  throw validation_error("side must be 'alice' or 'bob', got '" + name + "'");
}

void AttackConfig::validate() const {
  if (k < 1) throw validation_error("k must be at least 1");
  if (max_steps < 1) throw validation_error("max_steps must be at least 1");
  if (min_decrease < 1) throw validation_error("min_decrease must be at least 1");
}

std::int64_t score(std::span<const CanonicalForm> conjugates) {
  if (conjugates.empty()) throw empty_instance("score of an empty conjugate list");
  std::int64_t total = 0;
  for (const auto& f : conjugates) {
    if (f.strands() != conjugates.front().strands()) throw incompatible_words("conjugates disagree on strands");
    total += f.length();
  }
  return total;
}

std::int64_t score(std::span<const Word> conjugates) {
  if (conjugates.empty()) throw empty_instance("score of an empty conjugate list");
  std::vector<CanonicalForm> forms;
  forms.reserve(conjugates.size());
  for (const auto& w : conjugates) forms.push_back(normal_form(w));
  return score(std::span<const CanonicalForm>(forms));
}

namespace {

struct PreparedCandidate {
  CanonicalForm element;
  CanonicalForm element_inverse;
};

std::vector<CanonicalForm> conjugate_all(std::span<const CanonicalForm> us, const PreparedCandidate& c) {
  std::vector<CanonicalForm> out;
  out.reserve(us.size());
  for (const auto& u : us) out.push_back(multiply(multiply(c.element, u), c.element_inverse));
  return out;
}

std::int64_t total_length(std::span<const CanonicalForm> us) {
  std::int64_t total = 0;
  for (const auto& u : us) total += u.length();
  return total;
}

}  // namespace

Reduction is_reducing(const Candidate& c, std::span<const Word> conjugates, std::int64_t min_decrease) {
  if (conjugates.empty()) throw empty_instance("no conjugates to reduce");
  std::vector<CanonicalForm> us;
  for (const auto& w : conjugates) {
    if (w.strands() != c.element.strands()) throw incompatible_words("candidate and conjugate strand counts differ");
    us.push_back(normal_form(w));
  }
  const std::int64_t before = total_length(us);
  const CanonicalForm cf = normal_form(c.element);
  const auto after = conjugate_all(us, {cf, inverse(cf)});
  const std::int64_t new_score = total_length(after);
  return {new_score <= before - min_decrease, new_score};
}

// ---- enumeration -------------------------------------------------------------

CandidateEnumerator::CandidateEnumerator(const SubgroupGenerators& gens, std::size_t k)
    : gens_(&gens), k_(k), alphabet_(2 * gens.size()) {
  if (k < 1) throw validation_error("candidate length k must be at least 1");
}

bool CandidateEnumerator::advance() {
  if (!started_) {
    started_ = true;
    digits_.assign(1, 0);
    return true;
  }
  for (std::size_t i = digits_.size(); i-- > 0;) {
    if (++digits_[i] < alphabet_) return true;
    digits_[i] = 0;
  }
  if (digits_.size() >= k_) return false;
  digits_.assign(digits_.size() + 1, 0);
  return true;
}

bool CandidateEnumerator::admissible() const {
  for (std::size_t i = 0; i + 1 < digits_.size(); ++i) {
    if (digits_[i] / 2 == digits_[i + 1] / 2 && digits_[i] != digits_[i + 1]) return false;
  }
  return true;
}

std::optional<Candidate> CandidateEnumerator::next() {
  do {
    if (!advance()) {
      digits_.clear();
      return std::nullopt;
    }
  } while (!admissible());
  Candidate c{{}, Word(gens_->strands())};
  c.factors.reserve(digits_.size());
  for (auto code : digits_) c.factors.push_back({code / 2, code % 2 == 0 ? 1 : -1});
  c.element = assemble(*gens_, c.factors);
  return c;
}

std::vector<Candidate> enumerate_candidates(const SubgroupGenerators& gens, std::size_t k) {
  CandidateEnumerator e(gens, k);
  std::vector<Candidate> out;
  while (auto c = e.next()) out.push_back(std::move(*c));
  return out;
}

std::uint64_t workload_bound(std::uint64_t d, std::uint64_t n, std::uint64_t k) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  auto mul = [](std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kMax / a) {
      throw arithmetic_overflow("workload bound overflows 64 bits");
    }
    return a * b;
  };
  std::uint64_t total = mul(d, n);
  const std::uint64_t base = mul(2, n);
  for (std::uint64_t i = 0; i < k; ++i) total = mul(total, base);
  return total;
}

// ---- the attack --------------------------------------------------------------

namespace {

struct View {
  const SubgroupGenerators& generators;  // candidates are built from these
  const SubgroupGenerators& targets;     // t_r
  const PublicTransmission& published;   // u_r
};

View view_of(const ExchangeInstance& inst, Side side) {
  if (side == Side::alice) return {inst.alice_generators, inst.bob_generators, inst.alice_transmission};
  return {inst.bob_generators, inst.alice_generators, inst.bob_transmission};
}

struct Frame {
  std::vector<CanonicalForm> state;
  std::int64_t score = 0;
  std::size_t next = 0;              // next candidate to try from this frame
  std::size_t accepted = 0;          // candidate that produced this frame
  std::size_t evaluations_at = 0;
};

}  // namespace

AttackResult attack(const ExchangeInstance& instance, Side side, const AttackConfig& config) {
  config.validate();
  instance.validate();
  const View v = view_of(instance, side);
  const int n = instance.strands();

  AttackResult result{{}, Word(n), false, {}, 0, 0};
  const std::uint64_t d = instance.secret_factor_count.value_or(config.d_max);
  result.workload_bound = workload_bound(d, v.generators.size(), config.k);

  std::vector<CanonicalForm> targets;
  for (const auto& t : v.targets.words()) targets.push_back(normal_form(t));
  result.target_score = total_length(targets);

  const std::vector<Candidate> candidates = enumerate_candidates(v.generators, config.k);
  std::vector<PreparedCandidate> prepared;
  prepared.reserve(candidates.size());
  for (const auto& c : candidates) {
    CanonicalForm f = normal_form(c.element);
    CanonicalForm fi = inverse(f);
    prepared.push_back({std::move(f), std::move(fi)});
  }

  std::vector<Frame> path;
  {
    Frame root;
    for (const auto& u : v.published.conjugates) root.state.push_back(normal_form(u));
    root.score = total_length(root.state);
    path.push_back(std::move(root));
  }

  std::size_t evaluations = 0;
  std::size_t backtracks = 0;
  for (;;) {
    Frame& top = path.back();
    if (top.score == result.target_score && top.state == targets) {
      result.success = true;
      break;
    }
    bool extended = false;
    if (path.size() - 1 < config.max_steps) {
      for (std::size_t i = top.next; i < prepared.size(); ++i) {
        ++evaluations;
        auto next_state = conjugate_all(top.state, prepared[i]);
        const std::int64_t next_score = total_length(next_state);
        if (next_score <= top.score - config.min_decrease) {
          top.next = i + 1;
          Frame child;
          child.state = std::move(next_state);
          child.score = next_score;
          child.accepted = i;
          child.evaluations_at = evaluations;
          path.push_back(std::move(child));
          extended = true;
          break;
        }
      }
      if (!extended) path.back().next = prepared.size();
    }
    if (extended) continue;
    if (backtracks < config.backtrack_depth && path.size() > 1) {
      path.pop_back();
      ++backtracks;
      continue;
    }
    break;
  }

  for (std::size_t i = 1; i < path.size(); ++i) {
    result.trace.steps.push_back(
        {candidates[path[i].accepted], path[i - 1].score, path[i].score, path[i].evaluations_at});
  }
  result.trace.evaluations = evaluations;
  result.trace.backtracks = backtracks;

  // Peels c_1..c_p satisfy c_p..c_1 u c_1^{-1}..c_p^{-1} = t, so a' = c_p ... c_1.
  for (std::size_t i = path.size(); i-- > 1;) {
    const auto& f = candidates[path[i].accepted].factors;
    result.recovered_factors.insert(result.recovered_factors.end(), f.begin(), f.end());
  }
  result.recovered = assemble(v.generators, result.recovered_factors);
  return result;
}

bool verify_recovery(const ExchangeInstance& instance, const Word& recovered, Side side) {
  const View v = view_of(instance, side);
  if (recovered.strands() != instance.strands()) throw incompatible_words("recovered word strand count mismatch");
  for (std::size_t r = 0; r < v.targets.size(); ++r) {
    const CanonicalForm replay = normal_form(concat(inverse(recovered), v.targets[r], recovered));
    if (!(replay == normal_form(v.published.conjugates[r]))) return false;
  }
  return true;
}

}  // namespace braidlen
