#include "core/authservice.hpp"

#include <openssl/sha.h>

#include <chrono>
#include <set>

#include "core/error.hpp"
#include "core/png.hpp"
#include "httplib.h"

namespace gotcha::service {

using nlohmann::json;

namespace {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::Validation: return 400;
    case ErrorCode::ContractViolation: return 400;
    case ErrorCode::DuplicateUser: return 409;
    case ErrorCode::UnknownSession: return 404;
    case ErrorCode::NotFound: return 404;
    case ErrorCode::SessionExpired: return 410;
    case ErrorCode::LockedOut: return 429;
    case ErrorCode::BudgetExceeded: return 422;
    default: return 500;
  }
}

void send_payload(httplib::Response& res, const json& payload) {
  res.status = 200;
  res.set_content(json{{"version", kProtocolVersion}, {"payload", payload}}.dump(),
                  "application/json");
}

void send_error(httplib::Response& res, ErrorCode code, const std::string& message) {
  res.status = http_status(code);
  res.set_content(json{{"version", kProtocolVersion},
                       {"error", {{"code", error_code_name(code)}, {"message", message}}}}
                      .dump(),
                  "application/json");
}

json parse_body(const httplib::Request& req) {
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object())
    fail(ErrorCode::Validation, "request body must be a JSON object");
  return body;
}

template <typename T>
T field(const json& body, const char* name) {
  auto it = body.find(name);
  if (it == body.end()) fail(ErrorCode::Validation, std::string("missing field: ") + name);
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    fail(ErrorCode::Validation, std::string("field has the wrong type: ") + name);
  }
}

std::int64_t epoch_seconds(auth::TimePoint t) {
  return std::chrono::duration_cast<std::chrono::seconds>(t.time_since_epoch()).count();
}

json image_urls(const std::string& token, int k) {
  json urls = json::array();
  const std::string sid = session_id(token);
  for (int j = 1; j <= k; ++j) urls.push_back("/inkblot/" + sid + "/" + std::to_string(j));
  return urls;
}

json registration_payload(const auth::RegistrationStart& start) {
  return {{"token", start.token},
          {"session", session_id(start.token)},
          {"k", start.k},
          {"images", image_urls(start.token, start.k)},
          {"expires_at", epoch_seconds(start.expires)}};
}

std::string bearer_token(const httplib::Request& req) {
  const std::string auth = req.get_header_value("Authorization");
  constexpr std::string_view kPrefix = "Bearer ";
  if (auth.size() > kPrefix.size() && auth.compare(0, kPrefix.size(), kPrefix) == 0)
    return auth.substr(kPrefix.size());
  if (req.has_param("token")) return req.get_param_value("token");
  return {};
}

// Runs a handler, turning library errors into envelopes.
template <typename F>
httplib::Server::Handler guarded(F&& f) {
  return [f = std::forward<F>(f)](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_error(res, e.code(), e.what());
    } catch (const std::exception& e) {
      send_error(res, ErrorCode::Internal, e.what());
    }
  };
}

const std::set<std::string>& known_config_keys() {
  static const std::set<std::string> keys = {
      "host",        "port",          "store",           "audit_log",   "cors_origin",
      "k",           "alpha",         "seed_bits",       "hash_cost",   "session_ttl_seconds",
      "max_strikes", "lockout_seconds", "hash_threads",  "server_secret", "test_mode",
      "test_seed"};
  return keys;
}

}  // namespace

ServiceConfig parse_service_config(const json& j) {
  require(j.is_object(), "config must be a JSON object");
  for (const auto& [key, _] : j.items())
    require(known_config_keys().contains(key), "unknown config key: " + key);
  ServiceConfig c;
  try {
    c.host = j.value("host", c.host);
    c.port = j.value("port", c.port);
    if (j.contains("store")) c.store_path = j["store"].get<std::string>();
    if (j.contains("audit_log")) c.audit_log = j["audit_log"].get<std::string>();
    c.cors_origin = j.value("cors_origin", c.cors_origin);
    auto& p = c.auth.params;
    p.k = j.value("k", p.k);
    p.alpha = j.value("alpha", p.alpha);
    p.seed_bits = j.value("seed_bits", p.seed_bits);
    if (j.contains("hash_cost")) {
      const auto& hc = j["hash_cost"];
      c.auth.hash_cost = hc.is_string() ? slowhash::parse_cost(hc.get<std::string>())
                                        : slowhash::parse_cost(std::to_string(hc.get<int>()));
    }
    c.auth.session_ttl = std::chrono::seconds(j.value("session_ttl_seconds", c.auth.session_ttl.count()));
    c.auth.max_strikes = j.value("max_strikes", c.auth.max_strikes);
    c.auth.lockout = std::chrono::seconds(j.value("lockout_seconds", c.auth.lockout.count()));
    c.auth.hash_threads = j.value("hash_threads", c.auth.hash_threads);
    if (j.contains("server_secret"))
      c.auth.server_secret = seed::Seed::from_hex(j["server_secret"].get<std::string>());
    c.test_mode = j.value("test_mode", false);
    if (j.contains("test_seed")) c.test_seed = seed::Seed::from_hex(j["test_seed"].get<std::string>());
  } catch (const json::exception& e) {
    fail(ErrorCode::Validation, std::string("bad config value: ") + e.what());
  }
  require(c.port >= 0 && c.port <= 65535, "port must be in [0, 65535]");
  require(c.auth.session_ttl.count() > 0, "session ttl must be positive");
  require(c.auth.max_strikes >= 1, "max_strikes must be at least 1");
  require(c.auth.lockout.count() >= 0, "lockout must be non-negative");
  require(c.auth.hash_threads >= 1, "hash_threads must be at least 1");
  require(!c.test_seed || c.test_mode, "test_seed requires test_mode");
  c.auth.params.validate();
  return c;
}

std::shared_ptr<auth::Authenticator> build_authenticator(const ServiceConfig& config) {
  auto store = config.store_path ? std::make_shared<auth::AccountStore>(*config.store_path)
                                 : std::make_shared<auth::AccountStore>();
  std::shared_ptr<auth::EntropySource> entropy;
  if (config.test_mode)
    entropy = std::make_shared<auth::DeterministicEntropy>(
        config.test_seed ? *config.test_seed : seed::Seed(Bytes(32, 0)));
  else
    entropy = std::make_shared<auth::SystemEntropy>();
  auth::AuditSink audit;
  if (config.audit_log) audit = auth::file_audit_sink(*config.audit_log);
  return std::make_shared<auth::Authenticator>(
      config.auth, std::move(store), std::move(entropy),
      [] { return std::chrono::system_clock::now(); }, std::move(audit));
}

std::string session_id(std::string_view token) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(token.data()), token.size(), digest);
  return to_hex(std::span<const std::uint8_t>(digest, 16));
}

AuthService::AuthService(ServiceConfig config, std::shared_ptr<auth::Authenticator> auth)
    : config_(std::move(config)), auth_(std::move(auth)),
      server_(std::make_unique<httplib::Server>()) {
  // httplib also sets SO_REUSEPORT, which would let a second service share
  // the port silently. Keep only SO_REUSEADDR so a taken port is a Bind error.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof yes);
  });
  install_routes();
}

AuthService::AuthService(ServiceConfig config)
    : AuthService(config, build_authenticator(config)) {}

AuthService::~AuthService() { stop(); }

void AuthService::install_routes() {
  auto& srv = *server_;
  const std::string origin = config_.cors_origin;

  srv.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", origin);
    res.set_header("Access-Control-Allow-Headers", "Content-Type, Authorization");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
  });
  srv.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  srv.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.status == 404 && res.body.empty())
      send_error(res, ErrorCode::NotFound, "no such endpoint");
  });

  srv.Get("/health", guarded([this](const httplib::Request&, httplib::Response& res) {
    const auto& store = auth_->store();
    json s = {{"accounts", store.size()}, {"persistent", store.path().has_value()}};
    send_payload(res, {{"status", "ok"},
                       {"service", "gotcha"},
                       {"protocol_version", kProtocolVersion},
                       {"store", s},
                       {"k", auth_->config().params.k},
                       {"alpha", auth_->config().params.alpha}});
  }));

  srv.Post("/register/begin", guarded([this](const httplib::Request& req, httplib::Response& res) {
    json body = parse_body(req);
    auto start = auth_->begin_registration(field<std::string>(body, "username"),
                                           field<std::string>(body, "password"));
    send_payload(res, registration_payload(start));
  }));

  srv.Post("/register/complete", guarded([this](const httplib::Request& req, httplib::Response& res) {
    json body = parse_body(req);
    const auto token = field<std::string>(body, "token");
    if (body.value("reject", false)) {
      auto fresh = auth_->reject_registration(token);
      json p = registration_payload(fresh);
      p["status"] = "restarted";
      send_payload(res, p);
      return;
    }
    auto record = auth_->complete_registration(token, field<std::vector<std::string>>(body, "labels"));
    send_payload(res, {{"status", "registered"}, {"username", record.username}});
  }));

  srv.Post("/login/begin", guarded([this](const httplib::Request& req, httplib::Response& res) {
    json body = parse_body(req);
    auto start = auth_->begin_login(field<std::string>(body, "username"),
                                    field<std::string>(body, "password"));
    const int k = start.k();
    json display = json::array();
    for (int pos : matching::alphabetical_order(start.labels)) display.push_back(pos + 1);
    send_payload(res, {{"token", start.token},
                       {"session", session_id(start.token)},
                       {"k", k},
                       {"images", image_urls(start.token, k)},
                       {"labels", start.labels},
                       {"display_order", display},
                       {"expires_at", epoch_seconds(start.expires)}});
  }));

  srv.Post("/login/complete", guarded([this](const httplib::Request& req, httplib::Response& res) {
    json body = parse_body(req);
    const auto token = field<std::string>(body, "token");
    auth::LoginResult result{};
    if (body.contains("display_response")) {
      auto answer = field<std::vector<int>>(body, "display_response");
      result = auth_->complete_login_display(token, answer);
    } else {
      auto answer = field<std::vector<int>>(body, "response");
      result = auth_->complete_login(token, matching::Permutation::from_one_based(answer));
    }
    send_payload(res, {{"outcome", result.outcome == auth::LoginOutcome::Accept ? "accept" : "deny"},
                       {"hash_evaluations", result.hash_evaluations}});
  }));

  srv.Get(R"(/inkblot/([0-9a-f]+)/(\d+))",
          guarded([this](const httplib::Request& req, httplib::Response& res) {
            const std::string token = bearer_token(req);
            if (token.empty()) fail(ErrorCode::Validation, "image requests need the session token");
            if (session_id(token) != req.matches[1].str())
              fail(ErrorCode::UnknownSession, "token does not belong to this session");
            int position = 0;
            try {
              position = std::stoi(req.matches[2].str());
            } catch (const std::exception&) {
              fail(ErrorCode::Validation, "bad image index");
            }
            if (position < 1 || position > auth_->session_k(token))
              fail(ErrorCode::NotFound, "image index out of range");
            Bytes png = export_png(auth_->session_image(token, position));
            res.set_header("Cache-Control", "no-store");
            res.set_content(std::string(png.begin(), png.end()), "image/png");
          }));
}

int AuthService::bind() {
  if (port_ >= 0) return port_;
  if (config_.port == 0) {
    port_ = server_->bind_to_any_port(config_.host);
  } else if (server_->bind_to_port(config_.host, config_.port)) {
    port_ = config_.port;
  }
  if (port_ <= 0) {
    port_ = -1;
    fail(ErrorCode::Bind, "cannot bind " + config_.host + ":" + std::to_string(config_.port));
  }
  return port_;
}

void AuthService::run() {
  bind();
  server_->listen_after_bind();
}

int AuthService::start() {
  int p = bind();
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return p;
}

void AuthService::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace gotcha::service
