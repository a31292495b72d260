#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/encoding.hpp"
#include "core/inkblot.hpp"
#include "core/matching.hpp"
#include "core/seedcore.hpp"
#include "core/slowhash.hpp"

#include "json.hpp"

namespace gotcha::challenge {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

// Public extractor salt for challenge inkblots, so a published tuple is
// self-contained: inkblots = GenerateInkblotImages(k, Extract(decimal(pw), salt)).
seed::Seed challenge_extractor_salt();

// Passwords are the integers in [lo, hi), serialized as decimal text.
struct PasswordSpace {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t size() const noexcept { return hi > lo ? hi - lo : 0; }
  friend bool operator==(const PasswordSpace&, const PasswordSpace&) = default;
};

// T = (s, h(pw, s, pi(1..k)), labels in pi-order) plus the public metadata
// a solver needs.
struct ChallengeTuple {
  int k = 0;
  seed::Seed salt;
  Bytes digest;
  std::vector<std::string> permuted_labels;
  PasswordSpace space;
  slowhash::HashCost hash_cost;
};

struct ChallengeSecret {
  std::string password;
  matching::Permutation pi;
};

struct GeneratedChallenge {
  ChallengeTuple tuple;
  ChallengeSecret secret;
};

// Stream consumption, in order: 32 salt bytes, one draw for pw, k-1 draws for pi.
// `labels` are l_1..l_k for the canonical inkblots of pw.
GeneratedChallenge generate_challenge(PasswordSpace space, int k,
                                      const std::vector<std::string>& labels,
                                      slowhash::HashCost cost, seed::RandomStream& rng);

std::vector<inkblot::InkblotImage> challenge_inkblots(std::string_view password, int k);

bool verify_solution(const ChallengeTuple& tuple, std::string_view password,
                     const matching::Permutation& pi);

struct SolveOptions {
  std::uint64_t budget = kDefaultBudget;  // maximum hash calls for a full sweep
  unsigned threads = 1;
};

struct SolveResult {
  std::optional<ChallengeSecret> solution;
  // Calls in sweep order up to and including the hit; the full sweep when
  // nothing is found. Equals (rank(pw) - 1) * k! + rank(pi), ranks 1-based.
  std::uint64_t hash_calls = 0;
  // Calls actually made, including speculative work by parallel workers.
  std::uint64_t hash_calls_performed = 0;
};

// Sweeps passwords in increasing order and, for each, all k! permutations in
// lexicographic order. Refuses up front (BudgetExceeded) when
// |space| * k! exceeds the budget.
SolveResult brute_force_solve(const ChallengeTuple& tuple, const SolveOptions& options = {});

// 1-based lexicographic rank of a permutation.
std::uint64_t lexicographic_rank(const matching::Permutation& pi);

nlohmann::json to_json(const ChallengeTuple& tuple);
ChallengeTuple tuple_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ChallengeSecret& secret);
ChallengeSecret secret_from_json(const nlohmann::json& j);

}  // namespace gotcha::challenge
