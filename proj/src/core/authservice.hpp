#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "core/authcore.hpp"

#include "json.hpp"

namespace httplib {
class Server;
}

namespace gotcha::service {

inline constexpr int kProtocolVersion = 1;

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::optional<std::filesystem::path> store_path;  // in-memory when absent
  std::optional<std::filesystem::path> audit_log;
  std::string cors_origin = "*";
  auth::AuthConfig auth;
  // Test mode swaps the system RNG for a keystream seeded from test_seed.
  bool test_mode = false;
  std::optional<seed::Seed> test_seed;
};

// Keys: host, port, store, audit_log, cors_origin, k, alpha, seed_bits,
// hash_cost ("min" or 0..30), session_ttl_seconds, max_strikes,
// lockout_seconds, hash_threads, server_secret (hex), test_mode, test_seed (hex).
// Unknown keys are rejected.
ServiceConfig parse_service_config(const nlohmann::json& j);

// Opens the store (StoreCorrupt propagates) and wires entropy and audit.
std::shared_ptr<auth::Authenticator> build_authenticator(const ServiceConfig& config);

// Short public handle for a session token, used in image URLs.
std::string session_id(std::string_view token);

class AuthService {
 public:
  AuthService(ServiceConfig config, std::shared_ptr<auth::Authenticator> auth);
  explicit AuthService(ServiceConfig config);
  ~AuthService();
  AuthService(const AuthService&) = delete;
  AuthService& operator=(const AuthService&) = delete;

  // Binds the listening socket; throws Bind on failure. Returns the port.
  int bind();
  // Blocks until stop(). Binds first if needed.
  void run();
  // Binds and serves on a background thread.
  int start();
  void stop();

  int port() const noexcept { return port_; }
  auth::Authenticator& authenticator() noexcept { return *auth_; }

 private:
  void install_routes();

  ServiceConfig config_;
  std::shared_ptr<auth::Authenticator> auth_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = -1;
};

}  // namespace gotcha::service
