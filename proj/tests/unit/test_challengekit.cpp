#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "core/challengekit.hpp"
#include "core/error.hpp"

using namespace gotcha;
using namespace gotcha::challenge;

namespace {

const seed::Seed kSeed = seed::Seed::from_hex("0123456789abcdef0123456789abcdef");

std::vector<std::string> labels(int k) {
  std::vector<std::string> l;
  for (int j = 1; j <= k; ++j) l.push_back("blot " + std::to_string(j));
  return l;
}

GeneratedChallenge make(PasswordSpace space, int k, const std::string& label = "gen") {
  auto rng = seed::stream_from(kSeed, label);
  return generate_challenge(space, k, labels(k), {0}, rng);
}

}  // namespace

TEST(Challenge, ExtractorSaltIsPinned) {
  // SHA-256 of the protocol label, computed independently.
  EXPECT_EQ(challenge_extractor_salt().hex(),
            "f37aeae64f10e6427d48b44095f827b9236e8b86b02397e90265e4a40c696eca");
}

TEST(Challenge, GenerateConsumesDocumentedStream) {
  auto g = make({100, 200}, 3);
  auto rng = seed::stream_from(kSeed, "gen");
  auto salt = rng.next_seed(256);
  auto pw = 100 + rng.uniform(100);
  auto pi = matching::random_permutation(3, rng);
  EXPECT_EQ(g.tuple.salt, salt);
  EXPECT_EQ(g.secret.password, std::to_string(pw));
  EXPECT_EQ(g.secret.pi, pi);
  for (int i = 0; i < 3; ++i)
    EXPECT_EQ(g.tuple.permuted_labels[static_cast<std::size_t>(i)], "blot " + std::to_string(pi[i] + 1));
}

TEST(Challenge, VerifyAcceptsOnlyThePlantedPair) {
  auto g = make({0, 50}, 3);
  EXPECT_TRUE(verify_solution(g.tuple, g.secret.password, g.secret.pi));
  auto other = compose(g.secret.pi, matching::Permutation::from_one_based(std::vector{2, 1, 3}));
  EXPECT_FALSE(verify_solution(g.tuple, g.secret.password, other));
  EXPECT_FALSE(verify_solution(g.tuple, g.secret.password + "0", g.secret.pi));
  EXPECT_FALSE(verify_solution(g.tuple, g.secret.password, matching::Permutation::identity(2)));
}

TEST(Challenge, BruteForceRecoversPlantedSecretWithExactCount) {
  for (int trial = 0; trial < 5; ++trial) {
    auto g = make({0, 40}, 3, "round-trip/" + std::to_string(trial));
    auto r = brute_force_solve(g.tuple);
    ASSERT_TRUE(r.solution.has_value());
    EXPECT_EQ(r.solution->password, g.secret.password);
    EXPECT_EQ(r.solution->pi, g.secret.pi);
    const std::uint64_t pw_rank = std::stoull(g.secret.password) + 1;
    EXPECT_EQ(r.hash_calls, (pw_rank - 1) * 6 + lexicographic_rank(g.secret.pi));
    EXPECT_EQ(r.hash_calls_performed, r.hash_calls);
  }
}

TEST(Challenge, LexicographicRank) {
  std::vector<int> v{0, 1, 2, 3};
  std::uint64_t expected = 1;
  do {
    EXPECT_EQ(lexicographic_rank(matching::Permutation::from_zero_based(v)), expected++);
  } while (std::next_permutation(v.begin(), v.end()));
}

TEST(Challenge, BudgetRefusalBeforeAnyWork) {
  auto g = make({0, 1000}, 3);
  try {
    brute_force_solve(g.tuple, {5999, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
  EXPECT_NO_THROW(brute_force_solve(g.tuple, {6000, 1}));
}

TEST(Challenge, FullScaleIsRefused) {
  // 10^7 passwords x 10! permutations is far beyond any desk budget.
  ChallengeTuple t = make({0, 10}, 3).tuple;
  t.k = 10;
  t.space = {0, 10'000'000};
  t.permuted_labels = labels(10);
  EXPECT_THROW(brute_force_solve(t), Error);
}

TEST(Challenge, ThreadsAgreeOnHitAndCount) {
  auto g = make({0, 60}, 3, "threads");
  auto serial = brute_force_solve(g.tuple, {kDefaultBudget, 1});
  for (unsigned t : {2u, 4u, 7u}) {
    auto par = brute_force_solve(g.tuple, {kDefaultBudget, t});
    ASSERT_TRUE(par.solution.has_value());
    EXPECT_EQ(par.solution->password, serial.solution->password);
    EXPECT_EQ(par.solution->pi, serial.solution->pi);
    EXPECT_EQ(par.hash_calls, serial.hash_calls);
    EXPECT_GE(par.hash_calls_performed, serial.solution ? 1u : 0u);
  }
}

TEST(Challenge, MissWhenSpaceExcludesPassword) {
  auto g = make({0, 10}, 3);
  g.tuple.space = {std::stoull(g.secret.password) + 1, std::stoull(g.secret.password) + 5};
  auto r = brute_force_solve(g.tuple);
  EXPECT_FALSE(r.solution.has_value());
  EXPECT_EQ(r.hash_calls, 4u * 6u);
  EXPECT_EQ(r.hash_calls_performed, 24u);
}

TEST(Challenge, JsonRoundTrip) {
  auto g = make({5, 905}, 4);
  auto t = tuple_from_json(to_json(g.tuple));
  EXPECT_EQ(t.k, 4);
  EXPECT_EQ(t.salt, g.tuple.salt);
  EXPECT_EQ(t.digest, g.tuple.digest);
  EXPECT_EQ(t.permuted_labels, g.tuple.permuted_labels);
  EXPECT_EQ(t.space, g.tuple.space);
  EXPECT_EQ(t.hash_cost, g.tuple.hash_cost);
  auto s = secret_from_json(to_json(g.secret));
  EXPECT_EQ(s.password, g.secret.password);
  EXPECT_EQ(s.pi, g.secret.pi);
  auto doc = to_json(g.tuple);
  EXPECT_EQ(doc["format"], "gotcha-challenge");
  EXPECT_FALSE(doc.contains("password"));
  EXPECT_FALSE(doc.contains("permutation"));
}

TEST(Challenge, JsonRejectsDamage) {
  auto doc = to_json(make({0, 10}, 3).tuple);
  auto broken = doc;
  broken["version"] = 2;
  EXPECT_THROW(tuple_from_json(broken), Error);
  broken = doc;
  broken["labels"].push_back("extra");
  EXPECT_THROW(tuple_from_json(broken), Error);
  broken = doc;
  broken.erase("salt");
  EXPECT_THROW(tuple_from_json(broken), Error);
  EXPECT_THROW(secret_from_json({{"password", "1"}, {"permutation", {1, 1, 2}}}), Error);
}

TEST(Challenge, InkblotsDeriveFromPasswordOnly) {
  auto a = challenge_inkblots("42", 2);
  auto b = inkblot::generate_inkblot_images(2, seed::extract("42", challenge_extractor_salt()));
  EXPECT_EQ(a, b);
  EXPECT_NE(challenge_inkblots("43", 1)[0], a[0]);
}

TEST(Challenge, GenerateValidates) {
  auto rng = seed::stream_from(kSeed, "v");
  EXPECT_THROW(generate_challenge({5, 5}, 3, labels(3), {0}, rng), Error);
  EXPECT_THROW(generate_challenge({0, 5}, 3, labels(2), {0}, rng), Error);
}
