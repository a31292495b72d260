#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "core/account.hpp"
#include "core/matching.hpp"
#include "core/puzzle.hpp"
#include "core/seedcore.hpp"
#include "core/slowhash.hpp"

#include "json.hpp"

namespace gotcha::attack {

// Prices of the two oracles, the adversary's total budget C and the target
// success probability gamma.
struct CostModel {
  double c_h = 1.0;    // per slow-hash evaluation behind VerifyHash
  double c_H = 100.0;  // per human query
  double budget = std::numeric_limits<double>::infinity();
  double gamma = 0.0;

  void validate() const;
};

// (alpha, beta)-usable solver. On the true-password challenge it answers
// uniformly inside the alpha-ball around pi with probability beta, otherwise
// uniformly over S_k. Wrong-password challenges always get a uniform answer.
struct SimulatedHuman {
  double beta = 0.69;
  int alpha = 5;

  matching::Permutation respond(bool genuine_challenge, const matching::Permutation& pi,
                                seed::RandomStream& rng) const;
};

// A victim account plus the ground truth the simulation needs. Strategies
// never see this type.
struct AttackTarget {
  auth::AccountRecord record;
  std::string password;
  matching::Permutation pi;
  seed::Seed r1;
};

AttackTarget make_target(std::string username, std::string password,
                         const puzzle::PuzzleParams& params, slowhash::HashCost cost,
                         seed::RandomStream& rng);

// What a conservative adversary may ask a human about. Only challenges built
// from a password guess are allowed; a raw seed is a contract violation.
struct PasswordGuess {
  std::string password;
};
struct RawChallenge {
  seed::Seed r1;
};
using HumanQuery = std::variant<PasswordGuess, RawChallenge>;

// The only surface a strategy sees: VerifyHash, the human oracle and the
// public part of the stolen record. Query counters and the budget live here.
class Oracles {
 public:
  Oracles(const AttackTarget& target, const CostModel& cost, const SimulatedHuman& human,
          int verify_alpha, seed::RandomStream& rng);

  int k() const noexcept;
  const std::vector<std::string>& labels() const noexcept;
  int verify_alpha() const noexcept { return verify_alpha_; }
  std::uint64_t verify_cost_in_hashes() const noexcept { return ball_size_; }

  bool can_afford_verify() const noexcept;
  bool can_afford_human() const noexcept;
  double spent() const noexcept;

  // VerifyHash(pw', pi'): true iff some pi0 within verify_alpha of pi'
  // hashes to the stored digest. Costs ball-size hash evaluations. Throws
  // BudgetExceeded when the budget cannot cover it.
  bool verify_hash(std::string_view password, const matching::Permutation& candidate);
  matching::Permutation ask_human(const HumanQuery& query);

  std::uint64_t hash_evaluations() const noexcept { return n_h_; }
  std::uint64_t human_queries() const noexcept { return n_H_; }
  bool succeeded() const noexcept { return succeeded_; }

 private:
  const AttackTarget& target_;
  CostModel cost_;
  SimulatedHuman human_;
  int verify_alpha_;
  std::uint64_t ball_size_;
  seed::RandomStream& rng_;
  std::uint64_t n_h_ = 0;
  std::uint64_t n_H_ = 0;
  bool succeeded_ = false;
};

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  // Stops when VerifyHash succeeds, the dictionary is exhausted or the budget
  // runs out.
  virtual void run(Oracles& oracles, std::span<const std::string> dictionary,
                   seed::RandomStream& rng) const = 0;
};

// Every (guess, permutation) pair, guesses in dictionary order, permutations
// in lexicographic order, skipping those already covered by the VerifyHash ball.
class BruteForceAllPermutations final : public Strategy {
 public:
  std::string name() const override { return "brute-force"; }
  void run(Oracles&, std::span<const std::string>, seed::RandomStream&) const override;
};

// One human query per guess, then one VerifyHash on the human's answer.
class HumanPerGuess final : public Strategy {
 public:
  std::string name() const override { return "human-per-guess"; }
  void run(Oracles&, std::span<const std::string>, seed::RandomStream&) const override;
};

// Human queries only for the first `subset_size` guesses (D'), then
// optionally a permutation sweep over the rest with whatever budget remains.
class HumanOnSubset final : public Strategy {
 public:
  HumanOnSubset(std::size_t subset_size, bool sweep_rest)
      : subset_size_(subset_size), sweep_rest_(sweep_rest) {}
  std::string name() const override;
  void run(Oracles&, std::span<const std::string>, seed::RandomStream&) const override;

 private:
  std::size_t subset_size_;
  bool sweep_rest_;
};

std::unique_ptr<Strategy> make_strategy(std::string_view name, std::size_t subset_size = 0,
                                        bool sweep_rest = false);

struct TrialResult {
  std::uint64_t n_h = 0;
  std::uint64_t n_H = 0;
  double cost = 0.0;
  bool success = false;
};

struct AttackReport {
  std::string strategy;
  std::size_t dictionary_size = 0;
  int k = 0;
  int verify_alpha = 0;
  CostModel cost_model;
  SimulatedHuman human;
  std::vector<TrialResult> trials;

  std::uint64_t n_h = 0;  // totals over trials
  std::uint64_t n_H = 0;
  double total_cost = 0.0;  // n_h * c_h + n_H * c_H
  std::uint64_t successes = 0;
  std::uint64_t max_n_H = 0;
  double max_cost = 0.0;

  double success_rate() const;
};

struct LabConfig {
  CostModel cost;
  SimulatedHuman human;
  int verify_alpha = 0;
  std::size_t trials = 1000;
};

// Attacks one fixed target `trials` times; only the oracle randomness varies.
AttackReport run_attack(const AttackTarget& target, std::span<const std::string> dictionary,
                        const Strategy& strategy, const LabConfig& config,
                        const seed::Seed& rng_seed);

// Each trial registers a fresh victim whose password is uniform over the
// dictionary, which is the setting of the offline-attack bound.
AttackReport run_attack_sweep(std::span<const std::string> dictionary, const Strategy& strategy,
                              const puzzle::PuzzleParams& params, slowhash::HashCost hash_cost,
                              const LabConfig& config, const seed::Seed& rng_seed);

// gamma * |D| * 2^mu * c_h + n_H * c_H: below this budget no conservative
// adversary succeeds with probability gamma + eps + delta + n_H/|D|.
double offline_attack_bound(double mu_bits, const CostModel& cost, std::uint64_t dictionary_size,
                      double gamma, std::uint64_t human_queries);

double uniform_min_entropy_bits(int k);  // log2(k!)

// Reads a report as a (C, gamma', D) attack with C = max trial cost and
// gamma' = success rate, and checks it against the bound with `slack`
// standing in for eps + delta.
struct BoundCheck {
  double implied_gamma;  // success - n_H/|D| - slack
  double bound;          // offline_attack_bound at implied_gamma (0 when gamma <= 0)
  double spent;          // max trial cost
  bool violated;         // implied_gamma > 0 and spent < bound
};
BoundCheck check_against_bound(const AttackReport& report, double mu_bits, double slack);

struct HospEconomics {
  std::uint64_t database_size;  // floor(total_bytes / captcha_bytes)
  double full_solve_cost;       // |D| * C_H
  double half_solve_cost;       // |D| * C_H / 2
};

HospEconomics hosp_economics(double total_bytes, double captcha_bytes, double human_cost);

nlohmann::json to_json(const AttackReport& report, bool include_trials = false);
std::string to_table(const std::vector<AttackReport>& reports);

}  // namespace gotcha::attack
