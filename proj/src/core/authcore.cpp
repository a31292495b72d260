#include "core/authcore.hpp"

#include <openssl/hmac.h>

#include <array>
#include <fstream>
#include <thread>

#include "json.hpp"

#include "core/error.hpp"

namespace gotcha::auth {

namespace {

constexpr std::size_t kTokenBits = 128;

// Vocabulary for decoy labels served to unknown usernames.
constexpr std::array<std::string_view, 48> kDecoyWords{
    "evil clown",        "frog",           "lady with poofy dress", "voodoo mask",
    "dancing bear",      "butterfly",      "two dragons fighting",  "old man with hat",
    "bat",               "crab",           "angry cat",             "spaceship",
    "tree in winter",    "happy guy",      "jester",                "owl at night",
    "broken vase",       "knight",         "octopus",               "mountain goat",
    "twin birds",        "castle",         "moth",                  "ghost",
    "crown",             "beetle",         "wolf howling",          "flower pot",
    "skull",             "ballerina",      "lobster",               "dog on a leash",
    "fireworks",         "angel",          "mask with horns",       "rocket",
    "jellyfish",         "pumpkin",        "robot",                 "rabbit ears",
    "witch",             "chandelier",     "bull",                  "fish bones",
    "bow tie",           "spider",         "deer head",             "king on a throne",
};

seed::Seed keyed_seed(const seed::Seed& key, std::string_view label, std::size_t bits) {
  Bytes out;
  std::uint32_t counter = 0;
  while (out.size() < bits / 8) {
    std::string msg(label);
    msg.push_back(static_cast<char>(counter++));
    std::array<std::uint8_t, 32> mac{};
    unsigned int len = 0;
    auto k = key.bytes();
    HMAC(EVP_sha256(), k.data(), static_cast<int>(k.size()),
         reinterpret_cast<const unsigned char*>(msg.data()), msg.size(), mac.data(), &len);
    out.insert(out.end(), mac.begin(), mac.begin() + len);
  }
  out.resize(bits / 8);
  return seed::Seed(std::move(out));
}

std::string outcome_name(LoginOutcome o) { return o == LoginOutcome::Accept ? "accept" : "deny"; }

}  // namespace

DeterministicEntropy::DeterministicEntropy(const seed::Seed& seed)
    : stream_(seed::stream_from(seed, "test-entropy")) {}

seed::Seed DeterministicEntropy::seed(std::size_t bits) {
  std::lock_guard lock(mutex_);
  return stream_.next_seed(bits);
}

AuditSink file_audit_sink(const std::filesystem::path& path) {
  auto mutex = std::make_shared<std::mutex>();
  return [path, mutex](const AuditEvent& e) {
    nlohmann::json j{
        {"username", e.username},
        {"outcome", outcome_name(e.outcome)},
        {"hash_evaluations", e.hash_evaluations},
        {"time", std::chrono::duration_cast<std::chrono::seconds>(e.at.time_since_epoch()).count()},
    };
    std::lock_guard lock(*mutex);
    std::ofstream out(path, std::ios::app);
    out << j.dump() << '\n';
  };
}

Authenticator::Authenticator(AuthConfig config, std::shared_ptr<AccountStore> store,
                             std::shared_ptr<EntropySource> entropy, Clock clock, AuditSink audit)
    : config_(std::move(config)),
      store_(std::move(store)),
      entropy_(std::move(entropy)),
      clock_(std::move(clock)),
      audit_(std::move(audit)) {
  config_.params.validate();
  require(store_ != nullptr, "account store required");
  require(config_.max_strikes >= 1, "strike limit must be at least 1");
  require(config_.hash_threads >= 1, "hash_threads must be at least 1");
  server_secret_ = config_.server_secret ? *config_.server_secret : entropy_->seed(256);
}

std::string Authenticator::new_token() { return entropy_->seed(kTokenBits).hex(); }

RegistrationStart Authenticator::begin_registration(std::string_view username,
                                                    std::string_view password) {
  validate_username(username);
  require(!password.empty(), "password must not be empty");
  auto r_prime = entropy_->seed(config_.params.seed_bits);
  auto r2 = entropy_->seed(config_.params.seed_bits);
  return begin_registration_with(username, password, std::move(r_prime), std::move(r2));
}

RegistrationStart Authenticator::begin_registration_with(std::string_view username,
                                                         std::string_view password,
                                                         seed::Seed extractor_salt,
                                                         seed::Seed permutation_seed) {
  validate_username(username);
  require(!password.empty(), "password must not be empty");
  if (store_->contains(username)) fail(ErrorCode::DuplicateUser, "username already registered");

  // G1 split in two: pi now, images on request from r1.
  auto stream = seed::stream_from(permutation_seed, seed::kPermutationLabel);
  RegistrationSession session{std::string(username), std::string(password),
                              extractor_salt,
                              seed::extract(password, extractor_salt, config_.params.seed_bits),
                              matching::random_permutation(config_.params.k, stream),
                              clock_() + config_.session_ttl};
  RegistrationStart start{new_token(), config_.params.k, session.expires};
  std::lock_guard lock(mutex_);
  sessions_.emplace(start.token, std::move(session));
  return start;
}

Authenticator::Session Authenticator::take_session(std::string_view token) {
  auto it = sessions_.find(std::string(token));
  if (it == sessions_.end()) fail(ErrorCode::UnknownSession, "unknown or consumed session");
  Session s = std::move(it->second);
  sessions_.erase(it);
  TimePoint expires = std::visit([](const auto& x) { return x.expires; }, s);
  if (clock_() >= expires) fail(ErrorCode::SessionExpired, "session expired");
  return s;
}

AccountRecord Authenticator::complete_registration(std::string_view token,
                                                   const std::vector<std::string>& labels) {
  RegistrationSession session;
  {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(std::string(token));
    if (it == sessions_.end() || !std::holds_alternative<RegistrationSession>(it->second))
      fail(ErrorCode::UnknownSession, "unknown or consumed registration session");
    // Validate before consuming so a typo does not burn the session.
    puzzle::normalize_labels(labels, config_.params.k);
    session = std::get<RegistrationSession>(take_session(token));
  }
  auto normalized = puzzle::normalize_labels(labels, config_.params.k);
  auto record = make_record(session.username, session.password, session.pi,
                            std::move(normalized), std::move(session.extractor_salt),
                            entropy_->seed(config_.params.seed_bits), config_.params,
                            config_.hash_cost);
  store_->insert(record);
  return record;
}

RegistrationStart Authenticator::reject_registration(std::string_view token) {
  RegistrationSession session;
  {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(std::string(token));
    if (it == sessions_.end() || !std::holds_alternative<RegistrationSession>(it->second))
      fail(ErrorCode::UnknownSession, "unknown or consumed registration session");
    session = std::get<RegistrationSession>(take_session(token));
  }
  return begin_registration(session.username, session.password);
}

void Authenticator::check_not_locked(const std::string& username) {
  std::lock_guard lock(mutex_);
  auto it = strikes_.find(username);
  if (it != strikes_.end() && clock_() < it->second.locked_until)
    fail(ErrorCode::LockedOut, "too many failed attempts; try again later");
}

void Authenticator::record_outcome(const std::string& username, LoginOutcome outcome) {
  std::lock_guard lock(mutex_);
  if (outcome == LoginOutcome::Accept) {
    strikes_.erase(username);
    return;
  }
  auto& s = strikes_[username];
  if (++s.count >= config_.max_strikes) {
    s.count = 0;
    s.locked_until = clock_() + config_.lockout;
  }
}

AccountRecord Authenticator::decoy_record(std::string_view username) {
  // Deterministic per username so repeated probes see a stable account.
  const std::size_t bits = config_.params.seed_bits;
  std::string tag(username);
  AccountRecord r;
  r.username = std::string(username);
  r.extractor_salt = keyed_seed(server_secret_, "decoy/r-prime/" + tag, bits);
  r.hash_salt = keyed_seed(server_secret_, "decoy/salt/" + tag, bits);
  auto fake_hash = keyed_seed(server_secret_, "decoy/hash/" + tag, 256);
  r.password_hash.assign(fake_hash.bytes().begin(), fake_hash.bytes().end());
  r.params = config_.params;
  r.hash_cost = config_.hash_cost;
  auto stream = seed::stream_from(keyed_seed(server_secret_, "decoy/labels/" + tag, 256), "labels");
  std::vector<std::size_t> pool(kDecoyWords.size());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
  for (int i = 0; i < r.params.k; ++i) {
    auto pick = static_cast<std::size_t>(stream.uniform(pool.size() - static_cast<std::size_t>(i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(i) + pick]);
    r.permuted_labels.emplace_back(kDecoyWords[pool[static_cast<std::size_t>(i)]]);
  }
  return r;
}

LoginStart Authenticator::begin_login(std::string_view username, std::string_view password) {
  validate_username(username);
  require(!password.empty(), "password must not be empty");
  std::string name(username);
  check_not_locked(name);

  LoginSession session;
  if (auto record = store_->find(username)) {
    session.record = std::move(*record);
  } else {
    session.record = decoy_record(username);
    session.decoy = true;
  }
  session.password = std::string(password);
  const auto& rec = session.record;
  session.r1 = seed::extract(password, rec.extractor_salt, rec.params.seed_bits);
  session.expires = clock_() + config_.session_ttl;

  LoginStart start{new_token(), rec.permuted_labels, session.expires};
  std::lock_guard lock(mutex_);
  sessions_.emplace(start.token, std::move(session));
  return start;
}

std::uint64_t Authenticator::count_matches(const AccountRecord& record, std::string_view password,
                                           const matching::Permutation& response,
                                           bool& matched) const {
  // Every candidate is hashed, with no early exit, so the work is the same
  // for accept and deny.
  auto candidates = matching::enumerate_close(response, record.params.alpha);
  const unsigned threads =
      std::min<unsigned>(config_.hash_threads, static_cast<unsigned>(candidates.size()));
  std::vector<char> hit(threads, 0);
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < candidates.size(); i += threads)
      if (hash_matches(record, password, candidates[i])) hit[t] = 1;
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  matched = false;
  for (char h : hit) matched = matched || h;
  return candidates.size();
}

LoginResult Authenticator::complete_login(std::string_view token,
                                          const matching::Permutation& response) {
  LoginSession session;
  {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(std::string(token));
    if (it == sessions_.end() || !std::holds_alternative<LoginSession>(it->second))
      fail(ErrorCode::UnknownSession, "unknown or consumed login session");
    const auto& live = std::get<LoginSession>(it->second);
    require(response.size() == live.record.params.k, "response size does not match k");
    session = std::get<LoginSession>(take_session(token));
  }
  check_not_locked(session.record.username);

  bool matched = false;
  std::uint64_t evaluations = count_matches(session.record, session.password, response, matched);
  LoginResult result{matched && !session.decoy ? LoginOutcome::Accept : LoginOutcome::Deny,
                     evaluations};
  record_outcome(session.record.username, result.outcome);
  if (audit_) audit_({session.record.username, result.outcome, evaluations, clock_()});
  return result;
}

LoginResult Authenticator::complete_login_display(std::string_view token,
                                                  std::span<const int> image_for_display) {
  matching::Permutation response;
  {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(std::string(token));
    if (it == sessions_.end() || !std::holds_alternative<LoginSession>(it->second))
      fail(ErrorCode::UnknownSession, "unknown or consumed login session");
    response = matching::response_from_display(std::get<LoginSession>(it->second).record.permuted_labels,
                                               image_for_display);
  }
  return complete_login(token, response);
}

inkblot::InkblotImage Authenticator::session_image(std::string_view token, int position) const {
  seed::Seed r1;
  int index = 0;
  {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(std::string(token));
    if (it == sessions_.end()) fail(ErrorCode::UnknownSession, "unknown or consumed session");
    TimePoint expires = std::visit([](const auto& x) { return x.expires; }, it->second);
    if (clock_() >= expires) fail(ErrorCode::SessionExpired, "session expired");
    if (const auto* r = std::get_if<RegistrationSession>(&it->second)) {
      if (position < 1 || position > r->pi.size())
        fail(ErrorCode::NotFound, "no image at that position");
      r1 = r->r1;
      index = r->pi[position - 1] + 1;
    } else {
      const auto& l = std::get<LoginSession>(it->second);
      if (position < 1 || position > l.record.params.k)
        fail(ErrorCode::NotFound, "no image at that position");
      r1 = l.r1;
      index = position;
    }
  }
  return inkblot::generate_inkblot(r1, index);
}

int Authenticator::session_k(std::string_view token) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(std::string(token));
  if (it == sessions_.end()) fail(ErrorCode::UnknownSession, "unknown or consumed session");
  if (const auto* r = std::get_if<RegistrationSession>(&it->second)) return r->pi.size();
  return std::get<LoginSession>(it->second).record.params.k;
}

std::size_t Authenticator::live_sessions() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

void Authenticator::purge_expired() {
  std::lock_guard lock(mutex_);
  const auto now = clock_();
  std::erase_if(sessions_, [&](const auto& kv) {
    return std::visit([&](const auto& s) { return now >= s.expires; }, kv.second);
  });
}

}  // namespace gotcha::auth
