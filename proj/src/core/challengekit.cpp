#include "core/challengekit.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "core/error.hpp"
#include "core/puzzle.hpp"

namespace gotcha::challenge {

namespace {

constexpr std::string_view kSaltLabel = "gotcha/v1/open-challenge/extractor-salt";

matching::Permutation permutation_from_json(const nlohmann::json& j) {
  return matching::Permutation::from_one_based(j.get<std::vector<int>>());
}

}  // namespace

seed::Seed challenge_extractor_salt() {
  Bytes digest(SHA256_DIGEST_LENGTH);
  SHA256(reinterpret_cast<const unsigned char*>(kSaltLabel.data()), kSaltLabel.size(), digest.data());
  return seed::Seed(std::move(digest));
}

GeneratedChallenge generate_challenge(PasswordSpace space, int k,
                                      const std::vector<std::string>& labels,
                                      slowhash::HashCost cost, seed::RandomStream& rng) {
  require(space.size() > 0, "password space is empty");
  require(k >= 1 && k <= matching::kMaxK, "k must be in [1, 20]");
  auto canonical = puzzle::normalize_labels(labels, k);

  GeneratedChallenge out;
  out.tuple.k = k;
  out.tuple.salt = rng.next_seed(256);
  out.secret.password = std::to_string(space.lo + rng.uniform(space.size()));
  out.secret.pi = matching::random_permutation(k, rng);
  out.tuple.digest = slowhash::slow_hash(
      slowhash::challenge_hash_input(out.secret.password, out.tuple.salt, out.secret.pi),
      out.tuple.salt, cost);
  for (int i = 0; i < k; ++i)
    out.tuple.permuted_labels.push_back(canonical[static_cast<std::size_t>(out.secret.pi[i])]);
  out.tuple.space = space;
  out.tuple.hash_cost = cost;
  return out;
}

std::vector<inkblot::InkblotImage> challenge_inkblots(std::string_view password, int k) {
  return inkblot::generate_inkblot_images(k, seed::extract(password, challenge_extractor_salt()));
}

bool verify_solution(const ChallengeTuple& tuple, std::string_view password,
                     const matching::Permutation& pi) {
  if (pi.size() != tuple.k || password.empty()) return false;
  Bytes digest = slowhash::slow_hash(slowhash::challenge_hash_input(password, tuple.salt, pi),
                                     tuple.salt, tuple.hash_cost);
  return equal_digest(digest, tuple.digest);
}

std::uint64_t lexicographic_rank(const matching::Permutation& pi) {
  const int k = pi.size();
  std::uint64_t rank = 0;
  std::vector<bool> used(static_cast<std::size_t>(k), false);
  for (int i = 0; i < k; ++i) {
    int smaller = 0;
    for (int v = 0; v < pi[i]; ++v)
      if (!used[static_cast<std::size_t>(v)]) ++smaller;
    rank += static_cast<std::uint64_t>(smaller) * matching::factorial(k - 1 - i);
    used[static_cast<std::size_t>(pi[i])] = true;
  }
  return rank + 1;
}

SolveResult brute_force_solve(const ChallengeTuple& tuple, const SolveOptions& options) {
  require(tuple.k >= 1 && tuple.k <= matching::kMaxK, "tuple k out of range");
  require(options.threads >= 1, "threads must be at least 1");
  const std::uint64_t perms = matching::factorial(tuple.k);
  const std::uint64_t space = tuple.space.size();
  require(space > 0, "password space is empty");
  if (space > options.budget / perms)
    fail(ErrorCode::BudgetExceeded,
         "sweep needs " + std::to_string(space) + " x " + std::to_string(perms) +
             " hash calls, over the budget of " + std::to_string(options.budget));

  // Workers take password ranks w, w + T, ... and abandon ranks above the
  // best hit so far. Every rank below the final hit is swept completely.
  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> best_rank{kNone};
  std::atomic<std::uint64_t> performed{0};
  std::mutex result_mutex;
  SolveResult result;

  auto worker = [&](unsigned w) {
    std::uint64_t local = 0;
    for (std::uint64_t r = w; r < space; r += options.threads) {
      if (r > best_rank.load()) break;
      const std::string pw = std::to_string(tuple.space.lo + r);
      std::vector<int> p(static_cast<std::size_t>(tuple.k));
      std::iota(p.begin(), p.end(), 0);
      do {
        ++local;
        auto candidate = matching::Permutation::from_zero_based(p);
        if (verify_solution(tuple, pw, candidate)) {
          std::lock_guard lock(result_mutex);
          if (r < best_rank.load()) {
            best_rank = r;
            result.solution = ChallengeSecret{pw, candidate};
          }
          break;
        }
      } while (std::next_permutation(p.begin(), p.end()));
    }
    performed += local;
  };

  if (options.threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < options.threads; ++w) pool.emplace_back(worker, w);
  }

  result.hash_calls_performed = performed.load();
  if (result.solution)
    result.hash_calls = best_rank.load() * perms + lexicographic_rank(result.solution->pi);
  else
    result.hash_calls = space * perms;
  return result;
}

nlohmann::json to_json(const ChallengeTuple& t) {
  return {
      {"format", "gotcha-challenge"},
      {"version", 1},
      {"k", t.k},
      {"salt", to_base64(t.salt.bytes())},
      {"digest", to_base64(t.digest)},
      {"labels", t.permuted_labels},
      {"space", {{"lo", t.space.lo}, {"hi", t.space.hi}}},
      {"hash", {{"kdf", "pbkdf2-hmac-sha256"}, {"cost", t.hash_cost.level}}},
  };
}

ChallengeTuple tuple_from_json(const nlohmann::json& j) {
  try {
    require(j.at("format") == "gotcha-challenge" && j.at("version") == 1,
            "not a version-1 challenge document");
    require(j.at("hash").at("kdf") == "pbkdf2-hmac-sha256", "unsupported challenge kdf");
    ChallengeTuple t;
    t.k = j.at("k").get<int>();
    t.salt = seed::Seed(from_base64(j.at("salt").get<std::string>()));
    t.digest = from_base64(j.at("digest").get<std::string>());
    t.permuted_labels = j.at("labels").get<std::vector<std::string>>();
    t.space.lo = j.at("space").at("lo").get<std::uint64_t>();
    t.space.hi = j.at("space").at("hi").get<std::uint64_t>();
    t.hash_cost.level = j.at("hash").at("cost").get<int>();
    require(t.k >= 1 && t.k <= matching::kMaxK, "challenge k out of range");
    require(static_cast<int>(t.permuted_labels.size()) == t.k, "label count does not match k");
    require(!t.salt.empty() && t.digest.size() == slowhash::kDigestBytes, "bad salt or digest");
    require(t.hash_cost.level >= 0 && t.hash_cost.level <= slowhash::kMaxCost, "bad hash cost");
    return t;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Validation, std::string("malformed challenge document: ") + e.what());
  }
}

nlohmann::json to_json(const ChallengeSecret& s) {
  return {{"password", s.password}, {"permutation", s.pi.one_based()}};
}

ChallengeSecret secret_from_json(const nlohmann::json& j) {
  try {
    return {j.at("password").get<std::string>(), permutation_from_json(j.at("permutation"))};
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Validation, std::string("malformed challenge secret: ") + e.what());
  }
}

}  // namespace gotcha::challenge
