#include "braidlen/cli.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "braidlen/attack.hpp"
#include "braidlen/errors.hpp"
#include "braidlen/protocol.hpp"
#include "braidlen/randwalk.hpp"
#include "braidlen/serialize.hpp"

namespace braidlen::cli {

namespace {

class io_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_failure("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw format_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

// "-" or empty means the primary output stream.
void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io_failure("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw io_failure("write to '" + path + "' failed");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---- keygen ------------------------------------------------------------------

struct KeygenOptions {
  int strands = 12;
  std::size_t gens = 4;
  std::size_t gens_bob = 0;  // 0: same as gens
  std::size_t gen_len = 20;
  std::size_t d = 4;
  std::uint64_t seed = 0;
  std::string out = "-";
};

SessionParams session_params(int strands, std::size_t gens, std::size_t gens_bob, std::size_t gen_len, std::size_t d) {
  if (gens == 0) throw validation_error("--gens must be positive");
  if (gen_len == 0) throw validation_error("--gen-len must be positive");
  SessionParams p;
  p.strands = strands;
  p.alice_generator_count = gens;
  p.bob_generator_count = gens_bob == 0 ? gens : gens_bob;
  p.generator_letters = gen_len;
  p.secret_factors = d;
  return p;
}

int cmd_keygen(const KeygenOptions& o, std::ostream& out) {
  const SessionParams p = session_params(o.strands, o.gens, o.gens_bob, o.gen_len, o.d);
  Rng rng = seeded_rng(o.seed);
  json doc = to_json(generate_session(p, rng));
  doc["config"] = {{"command", "keygen"},
                   {"strands", p.strands},
                   {"gens", p.alice_generator_count},
                   {"gens_bob", p.bob_generator_count},
                   {"gen_len", p.generator_letters},
                   {"d", p.secret_factors},
                   {"seed", o.seed}};
  write_text(o.out, dump(doc), out);
  return kOk;
}

// ---- exchange ----------------------------------------------------------------

struct ExchangeOptions {
  std::string instance;
  std::string out = "-";
};

int cmd_exchange(const ExchangeOptions& o, std::ostream& out, std::ostream& err) {
  const ExchangeInstance inst = instance_from_json(read_json(o.instance));
  if (!inst.fixture) {
    throw validation_error("exchange requires the private_fixture section; '" + o.instance +
                           "' is an attacker-view instance");
  }
  const PrivateKey a = make_private_key(inst.alice_generators, inst.fixture->alice);
  const PrivateKey b = make_private_key(inst.bob_generators, inst.fixture->bob);
  const Word alice_key = derive_shared_alice(a, inst.bob_transmission);
  const Word bob_key = derive_shared_bob(b, inst.alice_transmission);
  const CanonicalForm ka = normal_form(alice_key);
  const CanonicalForm kb = normal_form(bob_key);
  const bool agree = ka == kb;
  json doc = {{"config", {{"command", "exchange"}, {"instance", o.instance}}},
              {"alice_key", to_json(ka)},
              {"bob_key", to_json(kb)},
              {"agreement", agree}};
  write_text(o.out, dump(doc), out);
  if (!agree) {
    err << "braidlen: shared keys disagree\n";
    return kSemanticFailure;
  }
  return kOk;
}

// ---- attack ------------------------------------------------------------------

struct AttackOptions {
  std::string instance;
  std::string side = "alice";
  std::size_t k = 1;
  std::int64_t min_decrease = 1;
  std::size_t max_steps = 64;
  std::size_t backtrack = 0;
  std::size_t d_max = 0;
  std::uint64_t seed = 0;
  std::string out = "-";
  std::string trace;
};

AttackConfig attack_config(std::size_t k, std::int64_t min_decrease, std::size_t max_steps, std::size_t backtrack,
                           std::size_t d_max, std::uint64_t seed) {
  AttackConfig c;
  c.k = k;
  c.min_decrease = min_decrease;
  c.max_steps = max_steps;
  c.backtrack_depth = backtrack;
  c.d_max = d_max;
  c.seed = seed;
  c.validate();
  return c;
}

json attack_config_json(const AttackConfig& c) {
  return {{"k", c.k},
          {"min_decrease", c.min_decrease},
          {"max_steps", c.max_steps},
          {"backtrack", c.backtrack_depth},
          {"d_max", c.d_max},
          {"seed", c.seed}};
}

// Fixture-only comparison: does the recovered conjugator give the real key?
bool recovered_key_matches(const ExchangeInstance& inst, Side side, const AttackResult& r) {
  const PrivateKey a = make_private_key(inst.alice_generators, inst.fixture->alice);
  const PrivateKey b = make_private_key(inst.bob_generators, inst.fixture->bob);
  const CanonicalForm real = normal_form(derive_shared_alice(a, inst.bob_transmission));
  if (side == Side::alice) {
    const PrivateKey guess = make_private_key(inst.alice_generators, r.recovered_factors);
    return normal_form(derive_shared_alice(guess, inst.bob_transmission)) == real;
  }
  const PrivateKey guess = make_private_key(inst.bob_generators, r.recovered_factors);
  return normal_form(derive_shared_bob(guess, inst.alice_transmission)) == real;
}

std::string trace_csv(const AttackResult& r) {
  std::ostringstream csv;
  csv << "step,candidate,score_before,score_after,evaluations_so_far\n";
  for (std::size_t i = 0; i < r.trace.steps.size(); ++i) {
    const auto& s = r.trace.steps[i];
    csv << i + 1 << ',';
    for (std::size_t f = 0; f < s.candidate.factors.size(); ++f) {
      const auto& sf = s.candidate.factors[f];
      csv << (f ? " " : "") << sf.sign * static_cast<long long>(sf.generator + 1);
    }
    csv << ',' << s.score_before << ',' << s.score_after << ',' << s.evaluations_so_far << '\n';
  }
  return csv.str();
}

int cmd_attack(const AttackOptions& o, std::ostream& out) {
  const AttackConfig config = attack_config(o.k, o.min_decrease, o.max_steps, o.backtrack, o.d_max, o.seed);
  const Side side = side_from_string(o.side);
  const ExchangeInstance inst = instance_from_json(read_json(o.instance));
  const AttackResult r = attack(inst, side, config);

  json doc = to_json(r);
  doc["config"] = attack_config_json(config);
  doc["config"]["command"] = "attack";
  doc["config"]["instance"] = o.instance;
  doc["config"]["side"] = to_string(side);
  doc["verified"] = r.success && verify_recovery(inst, r.recovered, side);
  if (inst.fixture) {
    const auto& secret = side == Side::alice ? inst.fixture->alice : inst.fixture->bob;
    const auto& gens = side == Side::alice ? inst.alice_generators : inst.bob_generators;
    doc["fixture_comparison"] = {{"recovered_equals_secret", equal(r.recovered, assemble(gens, secret))},
                                 {"shared_key_matches", recovered_key_matches(inst, side, r)}};
  }
  write_text(o.out, dump(doc), out);
  if (!o.trace.empty()) write_text(o.trace, trace_csv(r), out);
  return r.success ? kOk : kSemanticFailure;
}

// ---- campaign ----------------------------------------------------------------

struct CampaignOptions {
  int strands = 12;
  std::size_t gens = 4;
  std::size_t gens_bob = 0;
  std::vector<std::size_t> gen_lens{5, 40};
  std::size_t d = 4;
  std::size_t k = 1;
  std::int64_t min_decrease = 1;
  std::size_t max_steps = 64;
  std::size_t backtrack = 0;
  std::size_t trials = 50;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string out = "-";
  std::string csv;
};

struct TrialOutcome {
  bool success = false;
  bool verified = false;
  bool key_matches = false;
  std::size_t steps = 0;
  std::size_t evaluations = 0;
  std::uint64_t bound = 0;
};

TrialOutcome run_trial(const SessionParams& p, const AttackConfig& config, std::uint64_t seed, std::size_t trial) {
  Rng rng = seeded_rng(seed, {p.generator_letters, trial});
  const ExchangeInstance inst = generate_session(p, rng);
  const AttackResult r = attack(inst, Side::alice, config);
  TrialOutcome t;
  t.success = r.success;
  t.verified = r.success && verify_recovery(inst, r.recovered, Side::alice);
  t.key_matches = recovered_key_matches(inst, Side::alice, r);
  t.steps = r.trace.steps.size();
  t.evaluations = r.trace.evaluations;
  t.bound = r.workload_bound;
  return t;
}

int cmd_campaign(const CampaignOptions& o, std::ostream& out) {
  const AttackConfig config = attack_config(o.k, o.min_decrease, o.max_steps, o.backtrack, 0, o.seed);
  if (o.trials == 0) throw validation_error("--trials must be positive");
  if (o.gen_lens.empty()) throw validation_error("--gen-len needs at least one value");

  std::ostringstream csv;
  csv << "gen_len,trial,success,verified,key_matches,steps,evaluations,workload_bound\n";
  json rows = json::array();
  for (std::size_t len : o.gen_lens) {
    const SessionParams p = session_params(o.strands, o.gens, o.gens_bob, len, o.d);
    std::vector<TrialOutcome> outcomes(o.trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t t; (t = next.fetch_add(1)) < o.trials;) outcomes[t] = run_trial(p, config, o.seed, t);
    };
    const std::size_t n_threads = std::max<std::size_t>(1, std::min(o.threads, o.trials));
    std::vector<std::thread> pool;
    for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::size_t successes = 0, verified = 0, key_matches = 0, within = 0;
    double evals = 0, steps = 0;
    for (std::size_t t = 0; t < o.trials; ++t) {
      const auto& r = outcomes[t];
      csv << len << ',' << t << ',' << r.success << ',' << r.verified << ',' << r.key_matches << ',' << r.steps
          << ',' << r.evaluations << ',' << r.bound << '\n';
      successes += r.success;
      verified += r.verified;
      key_matches += r.key_matches;
      within += r.success && r.evaluations <= r.bound;
      evals += static_cast<double>(r.evaluations);
      steps += static_cast<double>(r.steps);
    }
    const double n = static_cast<double>(o.trials);
    rows.push_back({{"gen_len", len},
                    {"trials", o.trials},
                    {"successes", successes},
                    {"success_rate", static_cast<double>(successes) / n},
                    {"verified_successes", verified},
                    {"key_matches", key_matches},
                    {"successes_within_bound", within},
                    {"mean_evaluations", evals / n},
                    {"mean_steps", steps / n},
                    {"workload_bound", outcomes.front().bound}});
  }
  json doc = {{"config",
               {{"command", "campaign"},
                {"strands", o.strands},
                {"gens", o.gens},
                {"gens_bob", o.gens_bob == 0 ? o.gens : o.gens_bob},
                {"gen_len", o.gen_lens},
                {"d", o.d},
                {"attack", attack_config_json(config)},
                {"trials", o.trials},
                {"seed", o.seed}}},
              {"summary", rows}};
  if (!o.csv.empty()) write_text(o.csv, csv.str(), out);
  write_text(o.out, dump(doc), out);
  return kOk;
}

// ---- randwalk ----------------------------------------------------------------

struct RandwalkOptions {
  std::string mode = "both";
  int generators = 5;
  std::size_t steps = 2000;
  std::size_t trials = 500;
  int strands = 10;
  std::size_t letters = 100;
  std::size_t pairs = 200;
  std::vector<int> trend_strands{4, 6, 8, 10};
  std::uint64_t seed = 0;
  std::string out = "-";
  std::string walk_csv;
  std::string additivity_csv;
};

int cmd_randwalk(const RandwalkOptions& o, std::ostream& out) {
  if (o.mode != "walk" && o.mode != "additivity" && o.mode != "both") {
    throw validation_error("--mode must be walk, additivity or both");
  }
  json doc = {{"config",
               {{"command", "randwalk"},
                {"mode", o.mode},
                {"generators", o.generators},
                {"steps", o.steps},
                {"trials", o.trials},
                {"strands", o.strands},
                {"letters", o.letters},
                {"pairs", o.pairs},
                {"trend_strands", o.trend_strands},
                {"seed", o.seed}}}};
  if (o.mode != "additivity") {
    const WalkStats s = free_group_walk({o.generators, o.steps, o.trials, o.seed});
    doc["walk"] = {{"mean_final_length", s.mean_final_length},
                   {"std_error", s.std_error},
                   {"analytic_expectation", s.analytic_expectation},
                   {"drift_estimate", s.drift_estimate},
                   {"analytic_drift", expected_drift(o.generators)},
                   {"up_frequency", s.up_frequency},
                   {"up_frequency_std_error", s.up_frequency_std_error},
                   {"analytic_up_frequency", (2.0 * o.generators - 1) / (2.0 * o.generators)}};
    if (!o.walk_csv.empty()) {
      std::ostringstream csv;
      csv << "trial,final_length\n";
      for (std::size_t t = 0; t < s.final_lengths.size(); ++t) csv << t << ',' << s.final_lengths[t] << '\n';
      write_text(o.walk_csv, csv.str(), out);
    }
  }
  if (o.mode != "walk") {
    const AdditivityStats a = braid_additivity(o.strands, o.letters, o.pairs, o.seed);
    doc["additivity"] = {{"mean_ratio", a.mean},
                         {"stddev", a.stddev},
                         {"min", a.min},
                         {"max", a.max},
                         {"skipped", a.skipped},
                         {"subadditivity_violations", a.subadditivity_violations}};
    // Mean ratio as the strand count grows; reported, not checked.
    json trend = json::array();
    for (int n : o.trend_strands) {
      const AdditivityStats t = braid_additivity(n, o.letters, o.pairs, o.seed);
      trend.push_back({{"strands", n}, {"mean_ratio", t.mean}, {"stddev", t.stddev}});
    }
    doc["additivity"]["trend"] = trend;
    if (!o.additivity_csv.empty()) {
      std::ostringstream csv;
      csv << "trial,len_x,len_y,len_xy,ratio\n";
      csv << std::setprecision(17);
      for (std::size_t t = 0; t < a.samples.size(); ++t) {
        const auto& s = a.samples[t];
        csv << t << ',' << s.len_x << ',' << s.len_y << ',' << s.len_xy << ',';
        if (s.skipped) csv << "nan"; else csv << s.ratio;
        csv << '\n';
      }
      write_text(o.additivity_csv, csv.str(), out);
    }
  }
  write_text(o.out, dump(doc), out);
  return kOk;
}

// ---- bench -------------------------------------------------------------------

struct BenchOptions {
  std::vector<int> strands{4, 8, 12};
  std::vector<std::size_t> lengths{100, 200, 400, 800, 1600};
  std::size_t reps = 20;
  std::uint64_t seed = 0;
};

int cmd_bench(const BenchOptions& o, std::ostream& out) {
  out << "strands,letters,reps,mean_microseconds\n";
  for (int n : o.strands) {
    for (std::size_t len : o.lengths) {
      Rng rng = seeded_rng(o.seed, {static_cast<std::uint64_t>(n), len});
      std::vector<Word> words;
      for (std::size_t r = 0; r < o.reps; ++r) words.push_back(random_word(n, len, rng));
      std::int64_t sink = 0;
      const auto t0 = std::chrono::steady_clock::now();
      for (const auto& w : words) sink += normal_form(w).infimum();
      const auto t1 = std::chrono::steady_clock::now();
      const double us = std::chrono::duration<double, std::micro>(t1 - t0).count() / static_cast<double>(o.reps);
      out << n << ',' << len << ',' << o.reps << ',' << std::fixed << std::setprecision(1) << us << '\n';
      out.unsetf(std::ios::floatfield);
      (void)sink;
    }
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Braid-group key exchange and length-attack toolkit", "braidlen"};
  app.set_config("--config", "", "TOML/INI file with option defaults; flags override it");
  app.require_subcommand(1);

  KeygenOptions kg;
  auto* keygen = app.add_subcommand("keygen", "Generate a seeded exchange instance with its private fixture");
  keygen->add_option("--strands", kg.strands, "Strand count n")->capture_default_str();
  keygen->add_option("--gens", kg.gens, "Alice generator count N")->capture_default_str();
  keygen->add_option("--gens-bob", kg.gens_bob, "Bob generator count M (default N)");
  keygen->add_option("--gen-len", kg.gen_len, "Letters per public generator")->capture_default_str();
  keygen->add_option("--d", kg.d, "Secret factor count")->capture_default_str();
  keygen->add_option("--seed", kg.seed, "Random seed")->required();
  keygen->add_option("--out", kg.out, "Output path ('-' for stdout)")->capture_default_str();

  ExchangeOptions ex;
  auto* exchange = app.add_subcommand("exchange", "Derive both shared keys from an instance with private fixture");
  exchange->add_option("instance", ex.instance, "Instance document")->required();
  exchange->add_option("--out", ex.out, "Report path ('-' for stdout)")->capture_default_str();

  AttackOptions at;
  auto* attack_cmd = app.add_subcommand("attack", "Run the length attack against one instance");
  attack_cmd->add_option("instance", at.instance, "Instance document")->required();
  attack_cmd->add_option("--side", at.side, "Secret to recover: alice or bob")->capture_default_str();
  attack_cmd->add_option("--k", at.k, "Longest candidate tuple")->capture_default_str();
  attack_cmd->add_option("--min-decrease", at.min_decrease, "Score drop needed to accept")->capture_default_str();
  attack_cmd->add_option("--max-steps", at.max_steps, "Cap on accepted peels")->capture_default_str();
  attack_cmd->add_option("--backtrack", at.backtrack, "Backtracking budget")->capture_default_str();
  attack_cmd->add_option("--d-max", at.d_max, "Workload d when the instance declares none")->capture_default_str();
  attack_cmd->add_option("--seed", at.seed, "Recorded in the result")->capture_default_str();
  attack_cmd->add_option("--out", at.out, "Result path ('-' for stdout)")->capture_default_str();
  attack_cmd->add_option("--trace", at.trace, "Per-step CSV path");

  CampaignOptions cp;
  auto* campaign = app.add_subcommand("campaign", "Keygen + attack over a grid of generator lengths");
  campaign->add_option("--strands", cp.strands, "Strand count n")->capture_default_str();
  campaign->add_option("--gens", cp.gens, "Alice generator count N")->capture_default_str();
  campaign->add_option("--gens-bob", cp.gens_bob, "Bob generator count M (default N)");
  campaign->add_option("--gen-len", cp.gen_lens, "Generator letter lengths (grid)")->capture_default_str();
  campaign->add_option("--d", cp.d, "Secret factor count")->capture_default_str();
  campaign->add_option("--k", cp.k, "Longest candidate tuple")->capture_default_str();
  campaign->add_option("--min-decrease", cp.min_decrease, "Score drop needed to accept")->capture_default_str();
  campaign->add_option("--max-steps", cp.max_steps, "Cap on accepted peels")->capture_default_str();
  campaign->add_option("--backtrack", cp.backtrack, "Backtracking budget")->capture_default_str();
  campaign->add_option("--trials", cp.trials, "Trials per grid point")->capture_default_str();
  campaign->add_option("--seed", cp.seed, "Campaign seed")->required();
  campaign->add_option("--threads", cp.threads, "Worker threads")->capture_default_str();
  campaign->add_option("--out", cp.out, "Summary path ('-' for stdout)")->capture_default_str();
  campaign->add_option("--csv", cp.csv, "Per-trial CSV path");

  RandwalkOptions rw;
  auto* randwalk = app.add_subcommand("randwalk", "Free-group drift and braid length additivity statistics");
  randwalk->add_option("--mode", rw.mode, "walk, additivity or both")->capture_default_str();
  randwalk->add_option("--generators", rw.generators, "Free group rank")->capture_default_str();
  randwalk->add_option("--steps", rw.steps, "Steps per walk")->capture_default_str();
  randwalk->add_option("--trials", rw.trials, "Walks")->capture_default_str();
  randwalk->add_option("--strands", rw.strands, "Braid strands for additivity")->capture_default_str();
  randwalk->add_option("--letters", rw.letters, "Letters per random braid")->capture_default_str();
  randwalk->add_option("--pairs", rw.pairs, "Random braid pairs")->capture_default_str();
  randwalk->add_option("--trend-strands", rw.trend_strands, "Strand counts for the additivity trend")
      ->capture_default_str();
  randwalk->add_option("--seed", rw.seed, "Random seed")->required();
  randwalk->add_option("--out", rw.out, "Summary path ('-' for stdout)")->capture_default_str();
  randwalk->add_option("--walk-csv", rw.walk_csv, "Per-walk CSV path");
  randwalk->add_option("--additivity-csv", rw.additivity_csv, "Per-pair CSV path");

  BenchOptions bn;
  auto* bench = app.add_subcommand("bench", "Time normal_form on random words");
  bench->add_option("--strands", bn.strands, "Strand counts")->capture_default_str();
  bench->add_option("--lengths", bn.lengths, "Word lengths")->capture_default_str();
  bench->add_option("--reps", bn.reps, "Words per cell")->capture_default_str();
  bench->add_option("--seed", bn.seed, "Random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*keygen) return cmd_keygen(kg, out);
    if (*exchange) return cmd_exchange(ex, out, err);
    if (*attack_cmd) return cmd_attack(at, out);
    if (*campaign) return cmd_campaign(cp, out);
    if (*randwalk) return cmd_randwalk(rw, out);
    if (*bench) return cmd_bench(bn, out);
  } catch (const io_failure& e) {
    err << "braidlen: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "braidlen: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::overflow_error& e) {
    err << "braidlen: " << e.what() << '\n';
    return kConfigError;
  } catch (const format_error& e) {
    err << "braidlen: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "braidlen: internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kConfigError;
}

}  // namespace braidlen::cli
