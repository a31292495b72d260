#include "gotcha/gotcha.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "core/attacklab.hpp"
#include "core/authcore.hpp"
#include "core/authservice.hpp"
#include "core/challengekit.hpp"
#include "core/error.hpp"
#include "core/inkblot.hpp"
#include "core/matching.hpp"
#include "core/png.hpp"
#include "core/seedcore.hpp"

using nlohmann::json;
using namespace gotcha;

struct gotcha_inkblot_set {
  std::vector<inkblot::InkblotImage> images;
};

struct gotcha_auth {
  std::shared_ptr<auth::Authenticator> engine;
};

struct gotcha_server {
  std::unique_ptr<service::AuthService> service;
};

namespace {

thread_local std::string last_error;

gotcha_status to_status(ErrorCode code) {
  return static_cast<gotcha_status>(static_cast<int>(code) + 1);
}

template <typename F>
gotcha_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return GOTCHA_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return GOTCHA_ERR_VALIDATION;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GOTCHA_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GOTCHA_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::Validation, std::string(what) + " must not be null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void copy_bytes(const Bytes& b, uint8_t** out, size_t* len) {
  auto* p = static_cast<uint8_t*>(std::malloc(b.empty() ? 1 : b.size()));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, b.data(), b.size());
  *out = p;
  *len = b.size();
}

json parse_json(const char* text, bool allow_null) {
  if (!text) {
    if (allow_null) return json::object();
    fail(ErrorCode::Validation, "JSON argument must not be null");
  }
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::Validation, "argument is not valid JSON");
  return j;
}

const inkblot::InkblotImage& image_at(const gotcha_inkblot_set* set, int index) {
  need(set, "inkblot set");
  if (index < 1 || index > static_cast<int>(set->images.size()))
    fail(ErrorCode::NotFound, "inkblot index out of range");
  return set->images[static_cast<std::size_t>(index - 1)];
}

std::vector<std::string> dictionary_from(const json& cfg) {
  if (cfg.contains("dictionary")) return cfg["dictionary"].get<std::vector<std::string>>();
  const auto n = cfg.value("dictionary_size", std::size_t{16});
  std::vector<std::string> d;
  for (std::size_t i = 0; i < n; ++i) d.push_back("pw" + std::to_string(i));
  return d;
}

}  // namespace

extern "C" {

const char* gotcha_version(void) { return "1.0.0"; }

const char* gotcha_last_error(void) { return last_error.c_str(); }

const char* gotcha_status_name(gotcha_status status) {
  if (status == GOTCHA_OK) return "ok";
  if (status < GOTCHA_OK || status > GOTCHA_ERR_INTERNAL) return "unknown";
  return error_code_name(static_cast<ErrorCode>(status - 1)).data();
}

void gotcha_free(void* p) { std::free(p); }

gotcha_status gotcha_count_close(int k, int alpha, uint64_t* out) {
  return guard([&] {
    need(out, "out");
    *out = matching::count_close(k, alpha);
  });
}

gotcha_status gotcha_count_close_upper_bound(int k, int alpha, uint64_t* out) {
  return guard([&] {
    need(out, "out");
    *out = matching::count_close_upper_bound(k, alpha);
  });
}

gotcha_status gotcha_extract(const char* password, const uint8_t* salt, size_t salt_len,
                             uint8_t* out, size_t out_len) {
  return guard([&] {
    need(password, "password");
    need(out, "out");
    require(salt || salt_len == 0, "salt must not be null");
    seed::Seed s(Bytes(salt, salt + salt_len));
    seed::Seed r = seed::extract(password, s, out_len * 8);
    std::memcpy(out, r.bytes().data(), out_len);
  });
}

gotcha_status gotcha_inkblots_generate(int k, const char* seed_hex, gotcha_inkblot_set** out) {
  return guard([&] {
    need(seed_hex, "seed");
    need(out, "out");
    auto set = std::make_unique<gotcha_inkblot_set>();
    set->images = inkblot::generate_inkblot_images(k, seed::Seed::from_hex(seed_hex));
    *out = set.release();
  });
}

int gotcha_inkblots_count(const gotcha_inkblot_set* set) {
  return set ? static_cast<int>(set->images.size()) : 0;
}

gotcha_status gotcha_inkblots_png(const gotcha_inkblot_set* set, int index, uint8_t** png,
                                  size_t* png_len) {
  return guard([&] {
    need(png, "png");
    need(png_len, "png_len");
    copy_bytes(inkblot::export_png(image_at(set, index)), png, png_len);
  });
}

gotcha_status gotcha_inkblots_raster(const gotcha_inkblot_set* set, int index, const uint8_t** rgb,
                                     int* width, int* height) {
  return guard([&] {
    need(rgb, "rgb");
    const auto& img = image_at(set, index);
    *rgb = img.raster().data();
    if (width) *width = img.width();
    if (height) *height = img.height();
  });
}

void gotcha_inkblots_free(gotcha_inkblot_set* set) { delete set; }

gotcha_status gotcha_auth_open(const char* config_json, gotcha_auth** out) {
  return guard([&] {
    need(out, "out");
    auto cfg = service::parse_service_config(parse_json(config_json, true));
    auto a = std::make_unique<gotcha_auth>();
    a->engine = service::build_authenticator(cfg);
    *out = a.release();
  });
}

void gotcha_auth_free(gotcha_auth* auth) { delete auth; }

size_t gotcha_auth_account_count(const gotcha_auth* auth) {
  return auth ? auth->engine->store().size() : 0;
}

gotcha_status gotcha_auth_register_begin(gotcha_auth* auth, const char* username,
                                         const char* password, char** token, int* k) {
  return guard([&] {
    need(auth, "auth");
    need(username, "username");
    need(password, "password");
    need(token, "token");
    auto start = auth->engine->begin_registration(username, password);
    *token = copy_string(start.token);
    if (k) *k = start.k;
  });
}

gotcha_status gotcha_auth_register_complete(gotcha_auth* auth, const char* token,
                                            const char* const* labels, size_t count) {
  return guard([&] {
    need(auth, "auth");
    need(token, "token");
    require(labels || count == 0, "labels must not be null");
    std::vector<std::string> l;
    for (size_t i = 0; i < count; ++i) {
      need(labels[i], "label");
      l.emplace_back(labels[i]);
    }
    auth->engine->complete_registration(token, l);
  });
}

gotcha_status gotcha_auth_register_reject(gotcha_auth* auth, const char* token, char** new_token,
                                          int* k) {
  return guard([&] {
    need(auth, "auth");
    need(token, "token");
    need(new_token, "new_token");
    auto start = auth->engine->reject_registration(token);
    *new_token = copy_string(start.token);
    if (k) *k = start.k;
  });
}

gotcha_status gotcha_auth_session_png(gotcha_auth* auth, const char* token, int position,
                                      uint8_t** png, size_t* png_len) {
  return guard([&] {
    need(auth, "auth");
    need(token, "token");
    need(png, "png");
    need(png_len, "png_len");
    copy_bytes(inkblot::export_png(auth->engine->session_image(token, position)), png, png_len);
  });
}

gotcha_status gotcha_auth_login_begin(gotcha_auth* auth, const char* username, const char* password,
                                      char** token, char** challenge_json) {
  return guard([&] {
    need(auth, "auth");
    need(username, "username");
    need(password, "password");
    need(token, "token");
    need(challenge_json, "challenge_json");
    auto start = auth->engine->begin_login(username, password);
    json display = json::array();
    for (int pos : matching::alphabetical_order(start.labels)) display.push_back(pos + 1);
    std::string c = json{{"k", start.k()},
                         {"labels", start.labels},
                         {"display_order", display}}
                        .dump();
    *token = copy_string(start.token);
    try {
      *challenge_json = copy_string(c);
    } catch (...) {
      std::free(*token);
      *token = nullptr;
      throw;
    }
  });
}

gotcha_status gotcha_auth_login_complete(gotcha_auth* auth, const char* token, const int* response,
                                         size_t count, int* accepted, uint64_t* hash_evaluations) {
  return guard([&] {
    need(auth, "auth");
    need(token, "token");
    need(accepted, "accepted");
    require(response || count == 0, "response must not be null");
    auto perm = matching::Permutation::from_one_based(std::span<const int>(response, count));
    auto r = auth->engine->complete_login(token, perm);
    *accepted = r.outcome == auth::LoginOutcome::Accept ? 1 : 0;
    if (hash_evaluations) *hash_evaluations = r.hash_evaluations;
  });
}

gotcha_status gotcha_auth_login_complete_display(gotcha_auth* auth, const char* token,
                                                 const int* answer, size_t count, int* accepted,
                                                 uint64_t* hash_evaluations) {
  return guard([&] {
    need(auth, "auth");
    need(token, "token");
    need(accepted, "accepted");
    require(answer || count == 0, "answer must not be null");
    auto r = auth->engine->complete_login_display(token, std::span<const int>(answer, count));
    *accepted = r.outcome == auth::LoginOutcome::Accept ? 1 : 0;
    if (hash_evaluations) *hash_evaluations = r.hash_evaluations;
  });
}

gotcha_status gotcha_server_create(const char* config_json, gotcha_server** out) {
  return guard([&] {
    need(out, "out");
    auto cfg = service::parse_service_config(parse_json(config_json, true));
    auto s = std::make_unique<gotcha_server>();
    s->service = std::make_unique<service::AuthService>(cfg);
    *out = s.release();
  });
}

gotcha_status gotcha_server_start(gotcha_server* server, int* port) {
  return guard([&] {
    need(server, "server");
    int p = server->service->start();
    if (port) *port = p;
  });
}

gotcha_status gotcha_server_run(gotcha_server* server) {
  return guard([&] {
    need(server, "server");
    server->service->run();
  });
}

void gotcha_server_stop(gotcha_server* server) {
  if (server) server->service->stop();
}

void gotcha_server_free(gotcha_server* server) { delete server; }

gotcha_status gotcha_challenge_generate(const char* request_json, char** tuple_json,
                                        char** secret_json) {
  return guard([&] {
    need(tuple_json, "tuple_json");
    need(secret_json, "secret_json");
    json req = parse_json(request_json, false);
    challenge::PasswordSpace space{req.value("lo", std::uint64_t{0}), req.at("hi").get<std::uint64_t>()};
    const int k = req.at("k").get<int>();
    std::vector<std::string> labels;
    if (req.contains("labels")) {
      labels = req["labels"].get<std::vector<std::string>>();
    } else {
      for (int j = 1; j <= k; ++j) labels.push_back("blot " + std::to_string(j));
    }
    slowhash::HashCost cost{0};
    if (req.contains("cost"))
      cost = req["cost"].is_string() ? slowhash::parse_cost(req["cost"].get<std::string>())
                                     : slowhash::parse_cost(std::to_string(req["cost"].get<int>()));
    seed::Seed s = req.contains("seed") ? seed::Seed::from_hex(req["seed"].get<std::string>())
                                        : seed::Seed::random(256);
    auto rng = seed::stream_from(s, "challenge");
    auto gen = challenge::generate_challenge(space, k, labels, cost, rng);
    std::string t = challenge::to_json(gen.tuple).dump(2);
    std::string sec = challenge::to_json(gen.secret).dump(2);
    *tuple_json = copy_string(t);
    try {
      *secret_json = copy_string(sec);
    } catch (...) {
      std::free(*tuple_json);
      *tuple_json = nullptr;
      throw;
    }
  });
}

gotcha_status gotcha_challenge_verify(const char* tuple_json, const char* secret_json, int* valid) {
  return guard([&] {
    need(valid, "valid");
    auto tuple = challenge::tuple_from_json(parse_json(tuple_json, false));
    auto secret = challenge::secret_from_json(parse_json(secret_json, false));
    *valid = challenge::verify_solution(tuple, secret.password, secret.pi) ? 1 : 0;
  });
}

gotcha_status gotcha_challenge_solve(const char* tuple_json, uint64_t budget, unsigned threads,
                                     char** result_json) {
  return guard([&] {
    need(result_json, "result_json");
    auto tuple = challenge::tuple_from_json(parse_json(tuple_json, false));
    auto r = challenge::brute_force_solve(tuple, {budget, threads == 0 ? 1u : threads});
    json out = {{"found", r.solution.has_value()},
                {"hash_calls", r.hash_calls},
                {"hash_calls_performed", r.hash_calls_performed}};
    if (r.solution) {
      out["password"] = r.solution->password;
      out["permutation"] = r.solution->pi.one_based();
    }
    *result_json = copy_string(out.dump(2));
  });
}

gotcha_status gotcha_challenge_inkblots(const char* password, int k, gotcha_inkblot_set** out) {
  return guard([&] {
    need(password, "password");
    need(out, "out");
    auto set = std::make_unique<gotcha_inkblot_set>();
    set->images = challenge::challenge_inkblots(password, k);
    *out = set.release();
  });
}

gotcha_status gotcha_attack_sim(const char* config_json, char** report_json, char** table_text) {
  return guard([&] {
    need(report_json, "report_json");
    json cfg = parse_json(config_json, true);
    const auto dictionary = dictionary_from(cfg);

    puzzle::PuzzleParams params;
    params.k = cfg.value("k", 3);
    params.alpha = std::min(cfg.value("alpha", params.alpha), params.k);
    params.validate();
    slowhash::HashCost hash_cost{0};
    if (cfg.contains("hash_cost"))
      hash_cost = cfg["hash_cost"].is_string()
                      ? slowhash::parse_cost(cfg["hash_cost"].get<std::string>())
                      : slowhash::parse_cost(std::to_string(cfg["hash_cost"].get<int>()));

    attack::LabConfig lab;
    lab.cost.c_h = cfg.value("c_h", lab.cost.c_h);
    lab.cost.c_H = cfg.value("c_H", lab.cost.c_H);
    if (cfg.contains("budget") && !cfg["budget"].is_null()) lab.cost.budget = cfg["budget"].get<double>();
    lab.cost.gamma = cfg.value("gamma", lab.cost.gamma);
    lab.human.beta = cfg.value("beta", lab.human.beta);
    lab.human.alpha = cfg.value("human_alpha", std::min(lab.human.alpha, params.k));
    lab.verify_alpha = cfg.value("verify_alpha", 0);
    lab.trials = cfg.value("trials", std::size_t{1000});
    const double slack = cfg.value("slack", 0.05);
    const bool per_trial = cfg.value("per_trial", false);
    const seed::Seed s = cfg.contains("seed") ? seed::Seed::from_hex(cfg["seed"].get<std::string>())
                                              : seed::Seed::random(256);
    const std::string which = cfg.value("strategy", std::string("all"));
    const auto subset = cfg.value("subset_size", dictionary.size() / 2);
    const bool sweep = cfg.value("sweep", false);

    std::vector<std::unique_ptr<attack::Strategy>> strategies;
    if (which == "all") {
      strategies.push_back(attack::make_strategy("brute-force"));
      strategies.push_back(attack::make_strategy("human-per-guess"));
      strategies.push_back(attack::make_strategy("human-on-subset", subset, sweep));
    } else {
      strategies.push_back(attack::make_strategy(which, subset, sweep));
    }

    const double mu = params.mu > 0 ? params.mu : attack::uniform_min_entropy_bits(params.k);
    std::vector<attack::AttackReport> reports;
    json out = {{"mu_bits", mu}, {"slack", slack}, {"reports", json::array()}};
    for (const auto& st : strategies) {
      auto r = attack::run_attack_sweep(dictionary, *st, params, hash_cost, lab, s);
      auto check = attack::check_against_bound(r, mu, slack);
      json jr = attack::to_json(r, per_trial);
      jr["offline_attack_bound"] = attack::offline_attack_bound(mu, lab.cost, dictionary.size(), lab.cost.gamma,
                                                    r.max_n_H);
      jr["bound_check"] = {{"implied_gamma", check.implied_gamma},
                           {"bound", check.bound},
                           {"spent", check.spent},
                           {"violated", check.violated}};
      out["reports"].push_back(jr);
      reports.push_back(std::move(r));
    }
    std::string text = attack::to_table(reports);
    std::string rj = out.dump(2);
    *report_json = copy_string(rj);
    if (table_text) {
      try {
        *table_text = copy_string(text);
      } catch (...) {
        std::free(*report_json);
        *report_json = nullptr;
        throw;
      }
    }
  });
}

gotcha_status gotcha_offline_attack_bound(double mu_bits, double c_h, double c_H, uint64_t dictionary_size,
                                    double gamma, uint64_t human_queries, double* out) {
  return guard([&] {
    need(out, "out");
    attack::CostModel cost;
    cost.c_h = c_h;
    cost.c_H = c_H;
    *out = attack::offline_attack_bound(mu_bits, cost, dictionary_size, gamma, human_queries);
  });
}

gotcha_status gotcha_hosp_economics(double total_bytes, double captcha_bytes, double human_cost,
                                    uint64_t* database_size, double* full_cost, double* half_cost) {
  return guard([&] {
    need(database_size, "database_size");
    need(full_cost, "full_cost");
    need(half_cost, "half_cost");
    auto e = attack::hosp_economics(total_bytes, captcha_bytes, human_cost);
    *database_size = e.database_size;
    *full_cost = e.full_solve_cost;
    *half_cost = e.half_solve_cost;
  });
}

}  // extern "C"
