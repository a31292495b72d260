#include "core/attacklab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "core/error.hpp"

namespace gotcha::attack {

namespace {

double unit_draw(seed::RandomStream& rng) {
  constexpr std::uint64_t kScale = std::uint64_t{1} << 53;
  return static_cast<double>(rng.uniform(kScale)) / static_cast<double>(kScale);
}

// Lexicographic sweep for one guess. Permutations already covered by an
// earlier VerifyHash ball are skipped, so alpha > 0 never pays twice.
void sweep_permutations(Oracles& oracles, const std::string& guess) {
  const int k = oracles.k();
  std::vector<int> p(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(i)] = i;
  std::set<matching::Permutation> covered;
  do {
    auto candidate = matching::Permutation::from_zero_based(p);
    if (oracles.verify_alpha() > 0) {
      if (covered.contains(candidate)) continue;
      matching::for_each_close(candidate, oracles.verify_alpha(),
                               [&](const matching::Permutation& q) { covered.insert(q); });
    }
    if (!oracles.can_afford_verify()) return;
    if (oracles.verify_hash(guess, candidate)) return;
  } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace

void CostModel::validate() const {
  require(c_h >= 0.0 && c_H >= 0.0, "oracle costs must be non-negative");
  require(!(budget < 0.0), "budget must be non-negative");
  require(gamma >= 0.0 && gamma <= 1.0, "gamma must be in [0, 1]");
}

matching::Permutation SimulatedHuman::respond(bool genuine_challenge,
                                              const matching::Permutation& pi,
                                              seed::RandomStream& rng) const {
  if (genuine_challenge && unit_draw(rng) < beta) {
    const int k = pi.size();
    const int a = std::min(alpha, k);
    const std::uint64_t target = rng.uniform(matching::count_close(k, a));
    std::uint64_t index = 0;
    std::optional<matching::Permutation> chosen;
    matching::for_each_close(pi, a, [&](const matching::Permutation& q) {
      if (index++ == target) chosen = q;
    });
    return *chosen;
  }
  return matching::random_permutation(pi.size(), rng);
}

AttackTarget make_target(std::string username, std::string password,
                         const puzzle::PuzzleParams& params, slowhash::HashCost cost,
                         seed::RandomStream& rng) {
  params.validate();
  seed::Seed r_prime = rng.next_seed(params.seed_bits);
  seed::Seed s = rng.next_seed(params.seed_bits);
  matching::Permutation pi = matching::random_permutation(params.k, rng);
  seed::Seed r1 = seed::extract(password, r_prime, params.seed_bits);

  std::vector<std::string> permuted;
  for (int i = 0; i < params.k; ++i) permuted.push_back("blot " + std::to_string(pi[i] + 1));

  AttackTarget t{auth::make_record(std::move(username), password, pi, std::move(permuted),
                                   std::move(r_prime), std::move(s), params, cost),
                 std::move(password), pi, std::move(r1)};
  return t;
}

Oracles::Oracles(const AttackTarget& target, const CostModel& cost, const SimulatedHuman& human,
                 int verify_alpha, seed::RandomStream& rng)
    : target_(target), cost_(cost), human_(human), verify_alpha_(verify_alpha), rng_(rng) {
  cost_.validate();
  require(verify_alpha >= 0 && verify_alpha <= target.record.params.k,
          "verify alpha must be in [0, k]");
  ball_size_ = matching::count_close(target.record.params.k, verify_alpha);
}

int Oracles::k() const noexcept { return target_.record.params.k; }

const std::vector<std::string>& Oracles::labels() const noexcept {
  return target_.record.permuted_labels;
}

double Oracles::spent() const noexcept {
  return static_cast<double>(n_h_) * cost_.c_h + static_cast<double>(n_H_) * cost_.c_H;
}

bool Oracles::can_afford_verify() const noexcept {
  return static_cast<double>(n_h_ + ball_size_) * cost_.c_h + static_cast<double>(n_H_) * cost_.c_H <=
         cost_.budget;
}

bool Oracles::can_afford_human() const noexcept {
  return static_cast<double>(n_h_) * cost_.c_h + static_cast<double>(n_H_ + 1) * cost_.c_H <=
         cost_.budget;
}

bool Oracles::verify_hash(std::string_view password, const matching::Permutation& candidate) {
  require(candidate.size() == k(), "candidate size does not match k");
  if (!can_afford_verify()) fail(ErrorCode::BudgetExceeded, "VerifyHash over budget");
  n_h_ += ball_size_;
  bool hit = false;
  // Same expansion as a login: every member of the ball is hashed.
  matching::for_each_close(candidate, verify_alpha_, [&](const matching::Permutation& q) {
    if (auth::hash_matches(target_.record, password, q)) hit = true;
  });
  if (hit) succeeded_ = true;
  return hit;
}

matching::Permutation Oracles::ask_human(const HumanQuery& query) {
  const auto* guess = std::get_if<PasswordGuess>(&query);
  if (!guess)
    fail(ErrorCode::ContractViolation,
         "conservative adversaries may only query challenges built from a password guess");
  if (!can_afford_human()) fail(ErrorCode::BudgetExceeded, "human query over budget");
  ++n_H_;
  bool genuine = false;
  if (!guess->password.empty()) {
    seed::Seed r1 = seed::extract(guess->password, target_.record.extractor_salt,
                                  target_.record.params.seed_bits);
    genuine = equal_digest(r1.bytes(), target_.r1.bytes());
  }
  return human_.respond(genuine, target_.pi, rng_);
}

void BruteForceAllPermutations::run(Oracles& oracles, std::span<const std::string> dictionary,
                                    seed::RandomStream&) const {
  for (const auto& guess : dictionary) {
    sweep_permutations(oracles, guess);
    if (oracles.succeeded() || !oracles.can_afford_verify()) return;
  }
}

void HumanPerGuess::run(Oracles& oracles, std::span<const std::string> dictionary,
                        seed::RandomStream&) const {
  for (const auto& guess : dictionary) {
    if (!oracles.can_afford_human()) return;
    auto answer = oracles.ask_human(PasswordGuess{guess});
    if (!oracles.can_afford_verify()) return;
    if (oracles.verify_hash(guess, answer)) return;
  }
}

std::string HumanOnSubset::name() const {
  return "human-on-subset(" + std::to_string(subset_size_) + (sweep_rest_ ? ",sweep)" : ")");
}

void HumanOnSubset::run(Oracles& oracles, std::span<const std::string> dictionary,
                        seed::RandomStream&) const {
  const std::size_t m = std::min(subset_size_, dictionary.size());
  for (std::size_t i = 0; i < m; ++i) {
    if (!oracles.can_afford_human()) return;
    auto answer = oracles.ask_human(PasswordGuess{dictionary[i]});
    if (!oracles.can_afford_verify()) return;
    if (oracles.verify_hash(dictionary[i], answer)) return;
  }
  if (!sweep_rest_) return;
  for (std::size_t i = m; i < dictionary.size(); ++i) {
    sweep_permutations(oracles, dictionary[i]);
    if (oracles.succeeded() || !oracles.can_afford_verify()) return;
  }
}

std::unique_ptr<Strategy> make_strategy(std::string_view name, std::size_t subset_size,
                                        bool sweep_rest) {
  if (name == "brute-force") return std::make_unique<BruteForceAllPermutations>();
  if (name == "human-per-guess") return std::make_unique<HumanPerGuess>();
  if (name == "human-on-subset") return std::make_unique<HumanOnSubset>(subset_size, sweep_rest);
  fail(ErrorCode::Validation, "unknown strategy: " + std::string(name));
}

double AttackReport::success_rate() const {
  return trials.empty() ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials.size());
}

namespace {

AttackReport empty_report(std::span<const std::string> dictionary, const Strategy& strategy,
                          int k, const LabConfig& config) {
  require(!dictionary.empty(), "dictionary must not be empty");
  require(config.trials >= 1, "at least one trial is required");
  config.cost.validate();
  require(config.human.beta >= 0.0 && config.human.beta <= 1.0, "beta must be in [0, 1]");
  require(config.human.alpha >= 0, "human alpha must be non-negative");
  AttackReport report;
  report.strategy = strategy.name();
  report.dictionary_size = dictionary.size();
  report.k = k;
  report.verify_alpha = config.verify_alpha;
  report.cost_model = config.cost;
  report.human = config.human;
  report.trials.reserve(config.trials);
  return report;
}

void run_trial(AttackReport& report, const AttackTarget& target,
               std::span<const std::string> dictionary, const Strategy& strategy,
               const LabConfig& config, seed::RandomStream& rng) {
  Oracles oracles(target, config.cost, config.human, config.verify_alpha, rng);
  try {
    strategy.run(oracles, dictionary, rng);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
  }
  TrialResult t;
  t.n_h = oracles.hash_evaluations();
  t.n_H = oracles.human_queries();
  t.cost = static_cast<double>(t.n_h) * config.cost.c_h + static_cast<double>(t.n_H) * config.cost.c_H;
  t.success = oracles.succeeded();
  report.n_h += t.n_h;
  report.n_H += t.n_H;
  report.successes += t.success ? 1 : 0;
  report.max_n_H = std::max(report.max_n_H, t.n_H);
  report.max_cost = std::max(report.max_cost, t.cost);
  report.trials.push_back(t);
}

void finish(AttackReport& report) {
  report.total_cost = static_cast<double>(report.n_h) * report.cost_model.c_h +
                      static_cast<double>(report.n_H) * report.cost_model.c_H;
}

}  // namespace

AttackReport run_attack(const AttackTarget& target, std::span<const std::string> dictionary,
                        const Strategy& strategy, const LabConfig& config,
                        const seed::Seed& rng_seed) {
  AttackReport report = empty_report(dictionary, strategy, target.record.params.k, config);
  auto rng = seed::stream_from(rng_seed, "attacklab/oracles");
  for (std::size_t i = 0; i < config.trials; ++i)
    run_trial(report, target, dictionary, strategy, config, rng);
  finish(report);
  return report;
}

AttackReport run_attack_sweep(std::span<const std::string> dictionary, const Strategy& strategy,
                              const puzzle::PuzzleParams& params, slowhash::HashCost hash_cost,
                              const LabConfig& config, const seed::Seed& rng_seed) {
  AttackReport report = empty_report(dictionary, strategy, params.k, config);
  auto victims = seed::stream_from(rng_seed, "attacklab/victims");
  auto rng = seed::stream_from(rng_seed, "attacklab/oracles");
  for (std::size_t i = 0; i < config.trials; ++i) {
    const std::string& pw = dictionary[victims.uniform(dictionary.size())];
    AttackTarget target = make_target("victim", pw, params, hash_cost, victims);
    run_trial(report, target, dictionary, strategy, config, rng);
  }
  finish(report);
  return report;
}

double offline_attack_bound(double mu_bits, const CostModel& cost, std::uint64_t dictionary_size,
                      double gamma, std::uint64_t human_queries) {
  return gamma * static_cast<double>(dictionary_size) * std::exp2(mu_bits) * cost.c_h +
         static_cast<double>(human_queries) * cost.c_H;
}

double uniform_min_entropy_bits(int k) {
  require(k >= 1 && k <= matching::kMaxK, "k must be in [1, 20]");
  return std::log2(static_cast<double>(matching::factorial(k)));
}

BoundCheck check_against_bound(const AttackReport& report, double mu_bits, double slack) {
  BoundCheck c{};
  const double d = static_cast<double>(report.dictionary_size);
  c.implied_gamma = report.success_rate() - static_cast<double>(report.max_n_H) / d - slack;
  c.spent = report.max_cost;
  c.bound = c.implied_gamma > 0.0
                ? offline_attack_bound(mu_bits, report.cost_model, report.dictionary_size,
                                 c.implied_gamma, report.max_n_H)
                : 0.0;
  c.violated = c.implied_gamma > 0.0 && c.spent < c.bound;
  return c;
}

HospEconomics hosp_economics(double total_bytes, double captcha_bytes, double human_cost) {
  require(captcha_bytes > 0.0, "bytes per captcha must be positive");
  require(total_bytes >= 0.0 && human_cost >= 0.0, "sizes and costs must be non-negative");
  HospEconomics e{};
  e.database_size = static_cast<std::uint64_t>(std::floor(total_bytes / captcha_bytes));
  e.full_solve_cost = static_cast<double>(e.database_size) * human_cost;
  e.half_solve_cost = e.full_solve_cost / 2.0;
  return e;
}

nlohmann::json to_json(const AttackReport& r, bool include_trials) {
  nlohmann::json j = {
      {"strategy", r.strategy},
      {"dictionary_size", r.dictionary_size},
      {"k", r.k},
      {"verify_alpha", r.verify_alpha},
      {"cost_model",
       {{"c_h", r.cost_model.c_h},
        {"c_H", r.cost_model.c_H},
        {"budget", std::isfinite(r.cost_model.budget) ? nlohmann::json(r.cost_model.budget)
                                                      : nlohmann::json(nullptr)},
        {"gamma", r.cost_model.gamma}}},
      {"human", {{"beta", r.human.beta}, {"alpha", r.human.alpha}}},
      {"trials", r.trials.size()},
      {"successes", r.successes},
      {"success_rate", r.success_rate()},
      {"n_h", r.n_h},
      {"n_H", r.n_H},
      {"total_cost", r.total_cost},
      {"max_n_H", r.max_n_H},
      {"max_cost", r.max_cost},
  };
  if (include_trials) {
    auto& arr = j["per_trial"] = nlohmann::json::array();
    for (const auto& t : r.trials)
      arr.push_back({{"n_h", t.n_h}, {"n_H", t.n_H}, {"cost", t.cost}, {"success", t.success}});
  }
  return j;
}

std::string to_table(const std::vector<AttackReport>& reports) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-28s %6s %7s %12s %10s %14s %12s %8s\n", "strategy", "|D|",
                "trials", "n_h", "n_H", "total cost", "max cost", "success");
  out << line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-28s %6zu %7zu %12llu %10llu %14.6g %12.6g %8.4f\n",
                  r.strategy.c_str(), r.dictionary_size, r.trials.size(),
                  static_cast<unsigned long long>(r.n_h), static_cast<unsigned long long>(r.n_H),
                  r.total_cost, r.max_cost, r.success_rate());
    out << line;
  }
  return out.str();
}

}  // namespace gotcha::attack
