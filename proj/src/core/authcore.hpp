#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "core/account.hpp"
#include "core/inkblot.hpp"
#include "core/matching.hpp"
#include "core/puzzle.hpp"
#include "core/seedcore.hpp"
#include "core/slowhash.hpp"

namespace gotcha::auth {

using TimePoint = std::chrono::system_clock::time_point;
using Clock = std::function<TimePoint()>;

class EntropySource {
 public:
  virtual ~EntropySource() = default;
  virtual seed::Seed seed(std::size_t bits) = 0;
};

class SystemEntropy final : public EntropySource {
 public:
  seed::Seed seed(std::size_t bits) override { return seed::Seed::random(bits); }
};

// Reproducible entropy for test mode: successive draws from one keystream.
class DeterministicEntropy final : public EntropySource {
 public:
  explicit DeterministicEntropy(const seed::Seed& seed);
  seed::Seed seed(std::size_t bits) override;

 private:
  std::mutex mutex_;
  seed::RandomStream stream_;
};

enum class LoginOutcome { Accept, Deny };

struct AuditEvent {
  std::string username;
  LoginOutcome outcome;
  std::uint64_t hash_evaluations;
  TimePoint at;
};

using AuditSink = std::function<void(const AuditEvent&)>;
// Appends one JSON object per line. The file never sees passwords or pi.
AuditSink file_audit_sink(const std::filesystem::path& path);

struct AuthConfig {
  puzzle::PuzzleParams params;
  slowhash::HashCost hash_cost{8};
  std::chrono::seconds session_ttl{15 * 60};
  int max_strikes = 10;
  std::chrono::seconds lockout{4 * 60 * 60};
  unsigned hash_threads = 1;
  // Keys the decoy challenges served for unknown usernames.
  std::optional<seed::Seed> server_secret;
};

// Images are rendered on request through session_image, so starting a
// session costs no rasterization.
struct RegistrationStart {
  std::string token;
  int k = 0;  // images at positions 1..k, presented order I_{pi(1)}..I_{pi(k)}
  TimePoint expires;
};

struct LoginStart {
  std::string token;
  std::vector<std::string> labels;  // pi-order; images at positions 1..k are I_1..I_k
  TimePoint expires;
  int k() const noexcept { return static_cast<int>(labels.size()); }
};

struct LoginResult {
  LoginOutcome outcome;
  std::uint64_t hash_evaluations;
};

// Protocols for account creation and authentication. Thread-safe: session
// and strike tables are guarded, hashing runs outside the locks.
class Authenticator {
 public:
  Authenticator(AuthConfig config, std::shared_ptr<AccountStore> store,
                std::shared_ptr<EntropySource> entropy = std::make_shared<SystemEntropy>(),
                Clock clock = [] { return std::chrono::system_clock::now(); },
                AuditSink audit = {});

  RegistrationStart begin_registration(std::string_view username, std::string_view password);
  // Same as above with r' and r2 supplied by the caller.
  RegistrationStart begin_registration_with(std::string_view username, std::string_view password,
                                            seed::Seed extractor_salt, seed::Seed permutation_seed);
  // Labels arrive in presentation order, which is pi-order.
  AccountRecord complete_registration(std::string_view token, const std::vector<std::string>& labels);
  // Discards a confusing challenge and starts over with fresh r' and r2.
  RegistrationStart reject_registration(std::string_view token);

  LoginStart begin_login(std::string_view username, std::string_view password);
  LoginResult complete_login(std::string_view token, const matching::Permutation& response);
  // `image_for_display[d]`: 1-based image chosen for the d-th alphabetical label.
  LoginResult complete_login_display(std::string_view token, std::span<const int> image_for_display);

  // Image at presentation position (1-based) of a live session, rendered
  // outside the session lock.
  inkblot::InkblotImage session_image(std::string_view token, int position) const;
  int session_k(std::string_view token) const;

  std::size_t live_sessions() const;
  void purge_expired();

  const AccountStore& store() const noexcept { return *store_; }
  const AuthConfig& config() const noexcept { return config_; }

 private:
  struct RegistrationSession {
    std::string username;
    std::string password;
    seed::Seed extractor_salt;
    seed::Seed r1;
    matching::Permutation pi;
    TimePoint expires;
  };
  struct LoginSession {
    AccountRecord record;  // a decoy record for unknown users
    bool decoy = false;
    std::string password;
    seed::Seed r1;  // regenerated from the submitted password
    TimePoint expires;
  };
  using Session = std::variant<RegistrationSession, LoginSession>;

  struct Strikes {
    int count = 0;
    TimePoint locked_until{};
  };

  std::string new_token();
  void check_not_locked(const std::string& username);
  void record_outcome(const std::string& username, LoginOutcome outcome);
  AccountRecord decoy_record(std::string_view username);
  Session take_session(std::string_view token);
  std::uint64_t count_matches(const AccountRecord& record, std::string_view password,
                              const matching::Permutation& response, bool& matched) const;

  AuthConfig config_;
  std::shared_ptr<AccountStore> store_;
  std::shared_ptr<EntropySource> entropy_;
  Clock clock_;
  AuditSink audit_;
  seed::Seed server_secret_;

  mutable std::mutex mutex_;
  std::unordered_map<std::string, Session> sessions_;
  std::map<std::string, Strikes, std::less<>> strikes_;
};

}  // namespace gotcha::auth
