// gotcha: operator tool. Every subcommand is a thin adapter over the C API.

#include <stdlib.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gotcha/gotcha.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;  // login denied, invalid solution, nothing found
constexpr int kExitUsage = 2;
constexpr int kExitStatusBase = 10;  // 10 + gotcha_status

struct Failure {
  gotcha_status status;
  std::string message;
};

void check(gotcha_status s) {
  if (s != GOTCHA_OK) throw Failure{s, gotcha_last_error()};
}

struct CString {
  char* p = nullptr;
  ~CString() { gotcha_free(p); }
  std::string str() const { return p ? p : ""; }
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{GOTCHA_ERR_IO, "cannot read " + path.string()};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const void* data, size_t len) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
  if (!out) throw Failure{GOTCHA_ERR_IO, "cannot write " + path.string()};
}

void write_file(const fs::path& path, const std::string& text) {
  write_file(path, text.data(), text.size());
}

std::string read_line(const std::string& prompt) {
  std::cerr << prompt << std::flush;
  std::string line;
  if (!std::getline(std::cin, line)) throw Failure{GOTCHA_ERR_VALIDATION, "unexpected end of input"};
  return line;
}

fs::path make_temp_dir() {
  std::string tmpl = (fs::temp_directory_path() / "gotcha-XXXXXX").string();
  if (!mkdtemp(tmpl.data())) throw Failure{GOTCHA_ERR_IO, "cannot create a temporary directory"};
  return tmpl;
}

std::string image_name(int j) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "inkblot_%02d.png", j);
  return buf;
}

// Accepts plain numbers or decimal-unit suffixes (KB, MB, GB, TB).
double parse_size(const std::string& text) {
  static const std::vector<std::pair<std::string, double>> units = {
      {"TB", 1e12}, {"GB", 1e9}, {"MB", 1e6}, {"KB", 1e3}, {"B", 1.0}};
  std::string number = text;
  double scale = 1.0;
  for (const auto& [suffix, s] : units) {
    if (text.size() > suffix.size() &&
        text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0) {
      number = text.substr(0, text.size() - suffix.size());
      scale = s;
      break;
    }
  }
  try {
    std::size_t used = 0;
    double v = std::stod(number, &used);
    if (used != number.size()) throw std::invalid_argument(text);
    return v * scale;
  } catch (const std::logic_error&) {
    throw Failure{GOTCHA_ERR_VALIDATION, "not a size: " + text};
  }
}

// 3.655e-3 -> "3.66e-3"
std::string short_sci(double v) {
  if (v == 0.0) return "0";
  int e = static_cast<int>(std::floor(std::log10(std::fabs(v))));
  double m = v / std::pow(10.0, e);
  if (std::round(m * 100.0) >= 1000.0) {
    m /= 10.0;
    ++e;
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2fe%d", m, e);
  return buf;
}

std::string dollars(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  auto dot = s.find('.');
  for (int i = static_cast<int>(dot) - 3; i > 0; i -= 3) s.insert(static_cast<std::size_t>(i), ",");
  return "$" + s;
}

struct AuthOptions {
  std::string store;
  int k = 10;
  int alpha = 5;
  std::string hash_cost = "8";
  bool test_mode = false;
  std::string seed;
};

void add_auth_options(CLI::App* cmd, AuthOptions& o) {
  cmd->add_option("--store", o.store, "Account store file");
  cmd->add_option("--k", o.k, "Inkblots per challenge")->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "Accepted mismatches at login")->capture_default_str();
  cmd->add_option("--hash-cost", o.hash_cost, "Slow-hash cost: min or 0..30")->capture_default_str();
  cmd->add_flag("--test-mode", o.test_mode, "Deterministic randomness (testing only)");
  cmd->add_option("--seed", o.seed, "RNG seed in hex; requires --test-mode");
}

json auth_config(const AuthOptions& o) {
  if (!o.seed.empty() && !o.test_mode)
    throw Failure{GOTCHA_ERR_VALIDATION, "--seed is only accepted together with --test-mode"};
  json c = {{"k", o.k}, {"alpha", o.alpha}, {"hash_cost", o.hash_cost}};
  if (!o.store.empty()) c["store"] = o.store;
  if (o.test_mode) c["test_mode"] = true;
  if (!o.seed.empty()) c["test_seed"] = o.seed;
  return c;
}

struct Auth {
  gotcha_auth* p = nullptr;
  explicit Auth(const json& config) { check(gotcha_auth_open(config.dump().c_str(), &p)); }
  ~Auth() { gotcha_auth_free(p); }
};

std::vector<fs::path> dump_session_images(gotcha_auth* auth, const std::string& token, int k,
                                          const fs::path& dir) {
  std::vector<fs::path> paths;
  for (int j = 1; j <= k; ++j) {
    uint8_t* png = nullptr;
    size_t len = 0;
    check(gotcha_auth_session_png(auth, token.c_str(), j, &png, &len));
    fs::path p = dir / image_name(j);
    write_file(p, png, len);
    gotcha_free(png);
    paths.push_back(p);
  }
  return paths;
}

int cmd_count_perms(int k, int alpha, bool as_json) {
  uint64_t count = 0, bound = 0;
  check(gotcha_count_close(k, alpha, &count));
  check(gotcha_count_close_upper_bound(k, alpha, &bound));
  double total = 1.0;
  for (int i = 2; i <= k; ++i) total *= i;
  const double fraction = static_cast<double>(count) / total;
  if (as_json)
    std::cout << json{{"k", k}, {"alpha", alpha}, {"count", count}, {"bound", bound},
                      {"fraction", fraction}}
                     .dump()
              << "\n";
  else
    std::cout << count << " (bound " << bound << ", fraction " << short_sci(fraction) << ")\n";
  return kExitOk;
}

int cmd_inkblot_gen(int k, std::string seed_hex, const std::string& password,
                    const std::string& salt_hex, const fs::path& out, bool as_json) {
  if (seed_hex.empty()) {
    if (password.empty() || salt_hex.empty())
      throw Failure{GOTCHA_ERR_VALIDATION, "give --seed, or --password with --salt"};
    std::vector<uint8_t> salt;
    for (std::size_t i = 0; i + 1 < salt_hex.size(); i += 2)
      salt.push_back(static_cast<uint8_t>(std::stoul(salt_hex.substr(i, 2), nullptr, 16)));
    if (salt.size() * 2 != salt_hex.size()) throw Failure{GOTCHA_ERR_VALIDATION, "salt is not hex"};
    std::vector<uint8_t> r1(32);
    check(gotcha_extract(password.c_str(), salt.data(), salt.size(), r1.data(), r1.size()));
    static const char* digits = "0123456789abcdef";
    for (uint8_t b : r1) {
      seed_hex.push_back(digits[b >> 4]);
      seed_hex.push_back(digits[b & 15]);
    }
  }
  gotcha_inkblot_set* set = nullptr;
  check(gotcha_inkblots_generate(k, seed_hex.c_str(), &set));
  std::unique_ptr<gotcha_inkblot_set, void (*)(gotcha_inkblot_set*)> guard(set, gotcha_inkblots_free);
  fs::create_directories(out);
  json files = json::array();
  for (int j = 1; j <= k; ++j) {
    uint8_t* png = nullptr;
    size_t len = 0;
    check(gotcha_inkblots_png(set, j, &png, &len));
    fs::path p = out / image_name(j);
    write_file(p, png, len);
    gotcha_free(png);
    files.push_back(p.string());
    if (!as_json) std::cout << p.string() << "\n";
  }
  if (as_json) std::cout << json{{"seed", seed_hex}, {"files", files}}.dump() << "\n";
  return kExitOk;
}

int cmd_register(const AuthOptions& o, std::string username, std::string password) {
  Auth auth(auth_config(o));
  if (username.empty()) username = read_line("username: ");
  if (password.empty()) password = read_line("password: ");
  CString token;
  int k = 0;
  check(gotcha_auth_register_begin(auth.p, username.c_str(), password.c_str(), &token.p, &k));
  for (;;) {
    fs::path dir = make_temp_dir();
    auto paths = dump_session_images(auth.p, token.str(), k, dir);
    std::cerr << "Describe each inkblot in a few words. Enter :reject to get new images.\n";
    std::vector<std::string> labels;
    bool rejected = false;
    for (int j = 0; j < k && !rejected; ++j) {
      std::string line = read_line(paths[static_cast<std::size_t>(j)].string() + "\n  label: ");
      if (line == ":reject") rejected = true;
      labels.push_back(line);
    }
    if (rejected) {
      CString fresh;
      check(gotcha_auth_register_reject(auth.p, token.str().c_str(), &fresh.p, &k));
      std::swap(token.p, fresh.p);
      continue;
    }
    std::vector<const char*> ptrs;
    for (const auto& l : labels) ptrs.push_back(l.c_str());
    check(gotcha_auth_register_complete(auth.p, token.str().c_str(), ptrs.data(), ptrs.size()));
    std::cout << "registered " << username << "\n";
    return kExitOk;
  }
}

int cmd_login(const AuthOptions& o, std::string username, std::string password, bool as_json) {
  Auth auth(auth_config(o));
  if (username.empty()) username = read_line("username: ");
  if (password.empty()) password = read_line("password: ");
  CString token, challenge;
  check(gotcha_auth_login_begin(auth.p, username.c_str(), password.c_str(), &token.p, &challenge.p));
  json c = json::parse(challenge.str());
  const int k = c["k"].get<int>();
  fs::path dir = make_temp_dir();
  auto paths = dump_session_images(auth.p, token.str(), k, dir);
  std::cerr << "Inkblots:\n";
  for (int j = 0; j < k; ++j) std::cerr << "  " << (j + 1) << ": " << paths[static_cast<std::size_t>(j)].string() << "\n";
  std::cerr << "For each description, enter the number of the matching inkblot.\n";
  std::vector<int> answer;
  for (int pos : c["display_order"].get<std::vector<int>>()) {
    std::string line = read_line("  " + c["labels"][static_cast<std::size_t>(pos - 1)].get<std::string>() + ": ");
    try {
      answer.push_back(std::stoi(line));
    } catch (const std::exception&) {
      throw Failure{GOTCHA_ERR_VALIDATION, "expected an inkblot number"};
    }
  }
  int accepted = 0;
  uint64_t evals = 0;
  check(gotcha_auth_login_complete_display(auth.p, token.str().c_str(), answer.data(), answer.size(),
                                           &accepted, &evals));
  if (as_json)
    std::cout << json{{"outcome", accepted ? "accept" : "deny"}, {"hash_evaluations", evals}}.dump() << "\n";
  else
    std::cout << (accepted ? "accept" : "deny") << "\n";
  return accepted ? kExitOk : kExitRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GOTCHA password hardening: inkblot challenges, authentication and attack tools"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output");

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP authentication service");
  AuthOptions serve_auth;
  std::string serve_config, host = "127.0.0.1", cors = "*";
  int port = 8080;
  add_auth_options(serve, serve_auth);
  serve->add_option("--config", serve_config, "JSON config file; flags override it");
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--port", port, "Port, 0 for any")->capture_default_str();
  serve->add_option("--cors-origin", cors, "Allowed UI origin")->capture_default_str();

  // inkblot-gen
  auto* gen = app.add_subcommand("inkblot-gen", "Write the inkblots for a seed as PNG files");
  int gen_k = 10;
  std::string gen_seed, gen_password, gen_salt, gen_out;
  gen->add_option("--k", gen_k, "Number of images")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Generator seed r1 in hex");
  gen->add_option("--password", gen_password, "Derive r1 from this password");
  gen->add_option("--salt", gen_salt, "Public extractor salt in hex (with --password)");
  gen->add_option("--out", gen_out, "Output directory")->required();

  // register / login
  auto* reg = app.add_subcommand("register", "Create an account interactively");
  AuthOptions reg_auth;
  std::string reg_user, reg_password;
  add_auth_options(reg, reg_auth);
  reg->add_option("--user", reg_user, "Username (prompted when absent)");
  reg->add_option("--password", reg_password, "Password (read from stdin when absent)");

  auto* login = app.add_subcommand("login", "Log in interactively");
  AuthOptions login_auth;
  std::string login_user, login_password;
  add_auth_options(login, login_auth);
  login->add_option("--user", login_user, "Username (prompted when absent)");
  login->add_option("--password", login_password, "Password (read from stdin when absent)");

  // challenge kit
  auto* cgen = app.add_subcommand("challenge-gen", "Publish an open password-cracking challenge");
  uint64_t space = 0, space_lo = 0;
  int cgen_k = 3;
  std::string cgen_cost = "min", cgen_labels, cgen_out = "challenge.json",
              cgen_secret = "challenge.secret.json", cgen_seed;
  bool cgen_test = false;
  cgen->add_option("--space", space, "Number of candidate passwords")->required();
  cgen->add_option("--space-lo", space_lo, "Smallest candidate password")->capture_default_str();
  cgen->add_option("--k", cgen_k, "Inkblots per challenge")->capture_default_str();
  cgen->add_option("--cost", cgen_cost, "Slow-hash cost: min or 0..30")->capture_default_str();
  cgen->add_option("--labels", cgen_labels, "Comma-separated labels for inkblots 1..k");
  cgen->add_option("--out", cgen_out, "Public tuple file")->capture_default_str();
  cgen->add_option("--secret-out", cgen_secret, "Secret file")->capture_default_str();
  cgen->add_flag("--test-mode", cgen_test, "Deterministic randomness (testing only)");
  cgen->add_option("--seed", cgen_seed, "RNG seed in hex; requires --test-mode");

  auto* cver = app.add_subcommand("challenge-verify", "Check a claimed challenge solution");
  std::string cver_tuple, cver_secret;
  cver->add_option("--tuple", cver_tuple, "Public tuple file")->required();
  cver->add_option("--secret", cver_secret, "Solution file")->required();

  auto* csolve = app.add_subcommand("challenge-solve", "Brute-force a small challenge");
  std::string csolve_tuple;
  uint64_t budget = 1000000;
  unsigned threads = 1;
  csolve->add_option("--tuple", csolve_tuple, "Public tuple file")->required();
  csolve->add_option("--budget", budget, "Maximum hash calls")->capture_default_str();
  csolve->add_option("--threads", threads, "Worker threads")->capture_default_str();

  // attack-sim
  auto* sim = app.add_subcommand("attack-sim", "Simulate offline attacks on a stolen record");
  std::string sim_strategy = "all", sim_dict, sim_seed;
  std::size_t sim_dict_size = 16, sim_subset = 0, sim_trials = 1000;
  int sim_k = 3, sim_human_alpha = -1, sim_verify_alpha = 0;
  double c_h = 1.0, c_H = 100.0, sim_gamma = 0.0, beta = 0.69, slack = 0.05;
  std::optional<double> sim_budget;
  bool sim_sweep = false, sim_per_trial = false;
  sim->add_option("--strategy", sim_strategy, "brute-force, human-per-guess, human-on-subset or all")
      ->capture_default_str();
  sim->add_option("--dictionary", sim_dict, "Password file, one per line");
  sim->add_option("--dictionary-size", sim_dict_size, "Synthetic dictionary size")->capture_default_str();
  sim->add_option("--subset-size", sim_subset, "Guesses shown to the human (human-on-subset)");
  sim->add_flag("--sweep", sim_sweep, "Sweep the rest of the dictionary (human-on-subset)");
  sim->add_option("--k", sim_k, "Inkblots per challenge")->capture_default_str();
  sim->add_option("--c-h", c_h, "Cost per hash evaluation")->capture_default_str();
  sim->add_option("--c-H", c_H, "Cost per human query")->capture_default_str();
  sim->add_option("--budget", sim_budget, "Adversary budget (unbounded when absent)");
  sim->add_option("--gamma", sim_gamma, "Target success probability for the bound")->capture_default_str();
  sim->add_option("--beta", beta, "Human accuracy")->capture_default_str();
  sim->add_option("--human-alpha", sim_human_alpha, "Human error radius (default min(5, k))");
  sim->add_option("--verify-alpha", sim_verify_alpha, "Mismatches tolerated by VerifyHash")->capture_default_str();
  sim->add_option("--trials", sim_trials, "Trials per strategy")->capture_default_str();
  sim->add_option("--slack", slack, "eps + delta slack in the bound check")->capture_default_str();
  sim->add_option("--seed", sim_seed, "Simulation seed in hex");
  sim->add_flag("--per-trial", sim_per_trial, "Include per-trial rows in JSON output");

  // hosp-econ
  auto* hosp = app.add_subcommand("hosp-econ", "Cost of having humans solve a stolen CAPTCHA database");
  std::string total_bytes, captcha_bytes;
  double human_cost = 0.001;
  hosp->add_option("--total-bytes", total_bytes, "Total storage, e.g. 8TB")->required();
  hosp->add_option("--captcha-bytes", captcha_bytes, "Bytes per CAPTCHA, e.g. 8KB")->required();
  hosp->add_option("--cost", human_cost, "Dollars per human-solved CAPTCHA")->capture_default_str();

  // count-perms
  auto* count = app.add_subcommand("count-perms", "Permutations within alpha mismatches");
  int count_k = 10, count_alpha = 5;
  count->add_option("--k", count_k, "Permutation size")->capture_default_str();
  count->add_option("--alpha", count_alpha, "Maximum mismatches")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*count) return cmd_count_perms(count_k, count_alpha, as_json);
    if (*gen) return cmd_inkblot_gen(gen_k, gen_seed, gen_password, gen_salt, gen_out, as_json);
    if (*reg) return cmd_register(reg_auth, reg_user, reg_password);
    if (*login) return cmd_login(login_auth, login_user, login_password, as_json);

    if (*serve) {
      json c = serve_config.empty() ? json::object() : json::parse(read_file(serve_config));
      json flags = auth_config(serve_auth);
      static const std::map<std::string, std::string> flag_for = {
          {"k", "--k"},         {"alpha", "--alpha"},         {"hash_cost", "--hash-cost"},
          {"store", "--store"}, {"test_mode", "--test-mode"}, {"test_seed", "--seed"}};
      for (const auto& [key, value] : flags.items())
        if (!serve->get_option(flag_for.at(key))->empty() || !c.contains(key)) c[key] = value;
      if (!serve->get_option("--host")->empty() || !c.contains("host")) c["host"] = host;
      if (!serve->get_option("--port")->empty() || !c.contains("port")) c["port"] = port;
      if (!serve->get_option("--cors-origin")->empty() || !c.contains("cors_origin")) c["cors_origin"] = cors;
      if (c.contains("test_seed") && !c.value("test_mode", false))
        throw Failure{GOTCHA_ERR_VALIDATION, "a seed override requires test mode"};
      gotcha_server* server = nullptr;
      check(gotcha_server_create(c.dump().c_str(), &server));
      std::unique_ptr<gotcha_server, void (*)(gotcha_server*)> guard(server, gotcha_server_free);
      std::cerr << "listening on " << c["host"].get<std::string>() << ":" << c["port"] << "\n";
      check(gotcha_server_run(server));
      return kExitOk;
    }

    if (*cgen) {
      if (!cgen_seed.empty() && !cgen_test)
        throw Failure{GOTCHA_ERR_VALIDATION, "--seed is only accepted together with --test-mode"};
      json req = {{"lo", space_lo}, {"hi", space_lo + space}, {"k", cgen_k}, {"cost", cgen_cost}};
      if (!cgen_labels.empty()) {
        std::vector<std::string> labels;
        std::stringstream ss(cgen_labels);
        for (std::string l; std::getline(ss, l, ',');) labels.push_back(l);
        req["labels"] = labels;
      }
      if (!cgen_seed.empty()) req["seed"] = cgen_seed;
      CString tuple, secret;
      check(gotcha_challenge_generate(req.dump().c_str(), &tuple.p, &secret.p));
      write_file(cgen_out, tuple.str() + "\n");
      write_file(cgen_secret, secret.str() + "\n");
      if (as_json)
        std::cout << json{{"tuple", cgen_out}, {"secret", cgen_secret}}.dump() << "\n";
      else
        std::cout << "tuple: " << cgen_out << "\nsecret: " << cgen_secret << "\n";
      return kExitOk;
    }

    if (*cver) {
      int valid = 0;
      check(gotcha_challenge_verify(read_file(cver_tuple).c_str(), read_file(cver_secret).c_str(), &valid));
      if (as_json)
        std::cout << json{{"valid", valid == 1}}.dump() << "\n";
      else
        std::cout << (valid ? "valid" : "invalid") << "\n";
      return valid ? kExitOk : kExitRejected;
    }

    if (*csolve) {
      CString result;
      check(gotcha_challenge_solve(read_file(csolve_tuple).c_str(), budget, threads, &result.p));
      json r = json::parse(result.str());
      if (as_json) {
        std::cout << r.dump() << "\n";
      } else if (r["found"].get<bool>()) {
        std::cout << "password " << r["password"].get<std::string>() << " permutation "
                  << r["permutation"].dump() << " after " << r["hash_calls"] << " hash calls\n";
      } else {
        std::cout << "no solution after " << r["hash_calls"] << " hash calls\n";
      }
      return r["found"].get<bool>() ? kExitOk : kExitRejected;
    }

    if (*sim) {
      json cfg = {{"strategy", sim_strategy}, {"k", sim_k},          {"c_h", c_h},
                  {"c_H", c_H},               {"gamma", sim_gamma},  {"beta", beta},
                  {"verify_alpha", sim_verify_alpha}, {"trials", sim_trials}, {"slack", slack},
                  {"sweep", sim_sweep},       {"per_trial", sim_per_trial}};
      if (!sim_dict.empty()) {
        std::vector<std::string> words;
        std::istringstream in(read_file(sim_dict));
        for (std::string w; std::getline(in, w);)
          if (!w.empty()) words.push_back(w);
        cfg["dictionary"] = words;
      } else {
        cfg["dictionary_size"] = sim_dict_size;
      }
      if (sim_subset > 0) cfg["subset_size"] = sim_subset;
      if (sim_human_alpha >= 0) cfg["human_alpha"] = sim_human_alpha;
      if (sim_budget) cfg["budget"] = *sim_budget;
      if (!sim_seed.empty()) cfg["seed"] = sim_seed;
      CString report, table;
      check(gotcha_attack_sim(cfg.dump().c_str(), &report.p, &table.p));
      std::cout << (as_json ? report.str() + "\n" : table.str());
      return kExitOk;
    }

    if (*hosp) {
      uint64_t size = 0;
      double full = 0, half = 0;
      const double total = parse_size(total_bytes), per = parse_size(captcha_bytes);
      check(gotcha_hosp_economics(total, per, human_cost, &size, &full, &half));
      if (as_json) {
        std::cout << json{{"database_size", size}, {"full_solve_cost", full}, {"half_solve_cost", half}}.dump()
                  << "\n";
      } else {
        std::cout << "|D| = " << size << " CAPTCHAs\n"
                  << "full solve: " << dollars(full) << "\n"
                  << "half solve: " << dollars(half) << "\n"
                  << "note: one 4 TB drive of 8 KB CAPTCHAs holds 5e8; 1e9 needs 8 TB in total\n";
      }
      return kExitOk;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << gotcha_status_name(f.status) << ": " << f.message << "\n";
    return kExitStatusBase + static_cast<int>(f.status);
  } catch (const json::exception& e) {
    std::cerr << "error: validation_error: " << e.what() << "\n";
    return kExitStatusBase + GOTCHA_ERR_VALIDATION;
  } catch (const std::exception& e) {
    std::cerr << "error: internal_error: " << e.what() << "\n";
    return kExitStatusBase + GOTCHA_ERR_INTERNAL;
  }
  return kExitUsage;
}
