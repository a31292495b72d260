#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "gotcha/gotcha.h"
#include "json.hpp"

using nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  gotcha_free(s);
  return out;
}

std::string take(uint8_t* p, size_t n) {
  std::string out(reinterpret_cast<const char*>(p), n);
  gotcha_free(p);
  return out;
}

std::string counting_salt_seed(const char* password) {
  uint8_t salt[32];
  for (int i = 0; i < 32; ++i) salt[i] = static_cast<uint8_t>(i);
  uint8_t out[32];
  EXPECT_EQ(gotcha_extract(password, salt, sizeof salt, out, sizeof out), GOTCHA_OK);
  static const char* digits = "0123456789abcdef";
  std::string hex;
  for (uint8_t b : out) {
    hex += digits[b >> 4];
    hex += digits[b & 15];
  }
  return hex;
}

const char* kAuthConfig = R"({"k": 4, "alpha": 2, "hash_cost": "min", "test_mode": true})";

std::string session_png(gotcha_auth* a, const std::string& token, int pos) {
  uint8_t* png = nullptr;
  size_t n = 0;
  EXPECT_EQ(gotcha_auth_session_png(a, token.c_str(), pos, &png, &n), GOTCHA_OK);
  return take(png, n);
}

}  // namespace

TEST(CApi, StatusNamesAndVersion) {
  EXPECT_STREQ(gotcha_status_name(GOTCHA_OK), "ok");
  EXPECT_STREQ(gotcha_status_name(GOTCHA_ERR_VALIDATION), "validation_error");
  EXPECT_STREQ(gotcha_status_name(GOTCHA_ERR_BUDGET_EXCEEDED), "budget_exceeded");
  EXPECT_STREQ(gotcha_status_name(static_cast<gotcha_status>(99)), "unknown");
  EXPECT_STREQ(gotcha_version(), "1.0.0");
}

TEST(CApi, Combinatorics) {
  uint64_t n = 0;
  ASSERT_EQ(gotcha_count_close(10, 5, &n), GOTCHA_OK);
  EXPECT_EQ(n, 13264u);
  ASSERT_EQ(gotcha_count_close_upper_bound(10, 5, &n), GOTCHA_OK);
  EXPECT_EQ(n, 36091u);
  EXPECT_EQ(gotcha_count_close(3, 4, &n), GOTCHA_ERR_VALIDATION);
  EXPECT_NE(std::string(gotcha_last_error()), "");
  EXPECT_EQ(gotcha_count_close(3, 1, nullptr), GOTCHA_ERR_VALIDATION);
}

TEST(CApi, ExtractMatchesReference) {
  EXPECT_EQ(counting_salt_seed("correct horse"),
            "fab8d8eddf6bd88de44db64a687f56fc80b80febdafbb1d8eb20509b2b61a705");
  uint8_t out[4];
  EXPECT_EQ(gotcha_extract("pw", nullptr, 3, out, 4), GOTCHA_ERR_VALIDATION);
}

TEST(CApi, InkblotsMatchGoldenFiles) {
  gotcha_inkblot_set* set = nullptr;
  ASSERT_EQ(gotcha_inkblots_generate(3, counting_salt_seed("correct horse").c_str(), &set), GOTCHA_OK);
  ASSERT_EQ(gotcha_inkblots_count(set), 3);
  for (int j = 1; j <= 3; ++j) {
    uint8_t* png = nullptr;
    size_t n = 0;
    ASSERT_EQ(gotcha_inkblots_png(set, j, &png, &n), GOTCHA_OK);
    std::ifstream f(std::string(GOTCHA_TEST_DATA_DIR) + "/golden/inkblot_0" + std::to_string(j) + ".png",
                    std::ios::binary);
    ASSERT_TRUE(f) << j;
    std::string golden((std::istreambuf_iterator<char>(f)), {});
    EXPECT_EQ(take(png, n), golden) << j;
  }
  const uint8_t* rgb = nullptr;
  int w = 0, h = 0;
  ASSERT_EQ(gotcha_inkblots_raster(set, 2, &rgb, &w, &h), GOTCHA_OK);
  ASSERT_EQ(w, 400);
  ASSERT_EQ(h, 400);
  for (int y = 0; y < h; y += 7)
    for (int x = 0; x < w / 2; ++x)
      for (int c = 0; c < 3; ++c)
        ASSERT_EQ(rgb[(y * w + x) * 3 + c], rgb[(y * w + (w - 1 - x)) * 3 + c]);
  uint8_t* png = nullptr;
  size_t n = 0;
  EXPECT_EQ(gotcha_inkblots_png(set, 4, &png, &n), GOTCHA_ERR_NOT_FOUND);
  gotcha_inkblots_free(set);
  EXPECT_EQ(gotcha_inkblots_generate(3, "zz", &set), GOTCHA_ERR_VALIDATION);
}

TEST(CApi, RegisterAndLogin) {
  gotcha_auth* a = nullptr;
  ASSERT_EQ(gotcha_auth_open(kAuthConfig, &a), GOTCHA_OK);
  char* tok = nullptr;
  int k = 0;
  ASSERT_EQ(gotcha_auth_register_begin(a, "alice", "pw", &tok, &k), GOTCHA_OK);
  ASSERT_EQ(k, 4);
  std::string reg = take(tok);
  std::vector<std::string> labels{"delta", "alpha", "charlie", "bravo"};
  std::map<std::string, std::string> seen;
  for (int p = 1; p <= k; ++p) seen[labels[static_cast<size_t>(p - 1)]] = session_png(a, reg, p);
  std::vector<const char*> cl;
  for (auto& l : labels) cl.push_back(l.c_str());
  ASSERT_EQ(gotcha_auth_register_complete(a, reg.c_str(), cl.data(), cl.size()), GOTCHA_OK);
  EXPECT_EQ(gotcha_auth_account_count(a), 1u);
  EXPECT_EQ(gotcha_auth_register_begin(a, "alice", "x", &tok, &k), GOTCHA_ERR_DUPLICATE_USER);

  char* challenge = nullptr;
  ASSERT_EQ(gotcha_auth_login_begin(a, "alice", "pw", &tok, &challenge), GOTCHA_OK);
  std::string login = take(tok);
  json c = json::parse(take(challenge));
  ASSERT_EQ(c["k"], 4);
  std::vector<std::string> images;
  for (int j = 1; j <= 4; ++j) images.push_back(session_png(a, login, j));
  std::vector<int> wire;
  for (const auto& label : c["labels"]) {
    int pick = 0;
    for (int j = 1; j <= 4; ++j)
      if (images[static_cast<size_t>(j - 1)] == seen.at(label.get<std::string>())) pick = j;
    wire.push_back(pick);
  }
  std::vector<int> display;
  for (int pos : c["display_order"]) display.push_back(wire[static_cast<size_t>(pos - 1)]);
  int accepted = -1;
  uint64_t evals = 0;
  ASSERT_EQ(gotcha_auth_login_complete_display(a, login.c_str(), display.data(), display.size(), &accepted,
                                               &evals),
            GOTCHA_OK);
  EXPECT_EQ(accepted, 1);
  EXPECT_EQ(evals, 7u);
  EXPECT_EQ(gotcha_auth_login_complete(a, login.c_str(), wire.data(), wire.size(), &accepted, &evals),
            GOTCHA_ERR_UNKNOWN_SESSION);

  ASSERT_EQ(gotcha_auth_login_begin(a, "alice", "pw", &tok, &challenge), GOTCHA_OK);
  login = take(tok);
  gotcha_free(challenge);
  std::vector<int> bad{1, 1, 2, 3};
  EXPECT_EQ(gotcha_auth_login_complete(a, login.c_str(), bad.data(), bad.size(), &accepted, &evals),
            GOTCHA_ERR_VALIDATION);
  gotcha_auth_free(a);
}

TEST(CApi, RejectIssuesNewSession) {
  gotcha_auth* a = nullptr;
  ASSERT_EQ(gotcha_auth_open(kAuthConfig, &a), GOTCHA_OK);
  char* tok = nullptr;
  int k = 0;
  ASSERT_EQ(gotcha_auth_register_begin(a, "bob", "pw", &tok, &k), GOTCHA_OK);
  std::string first = take(tok);
  std::string img = session_png(a, first, 1);
  ASSERT_EQ(gotcha_auth_register_reject(a, first.c_str(), &tok, &k), GOTCHA_OK);
  std::string second = take(tok);
  EXPECT_NE(second, first);
  EXPECT_NE(session_png(a, second, 1), img);
  uint8_t* png = nullptr;
  size_t n = 0;
  EXPECT_EQ(gotcha_auth_session_png(a, first.c_str(), 1, &png, &n), GOTCHA_ERR_UNKNOWN_SESSION);
  gotcha_auth_free(a);
}

TEST(CApi, AuthConfigErrors) {
  gotcha_auth* a = nullptr;
  EXPECT_EQ(gotcha_auth_open("{\"colour\": 1}", &a), GOTCHA_ERR_VALIDATION);
  EXPECT_EQ(gotcha_auth_open("{", &a), GOTCHA_ERR_VALIDATION);
  EXPECT_EQ(gotcha_auth_open(nullptr, nullptr), GOTCHA_ERR_VALIDATION);
  ASSERT_EQ(gotcha_auth_open(nullptr, &a), GOTCHA_OK);
  gotcha_auth_free(a);
}

TEST(CApi, ChallengeGenerateVerifySolve) {
  char* tuple = nullptr;
  char* secret = nullptr;
  const char* req = R"({"lo": 0, "hi": 50, "k": 3, "seed": "00112233445566778899aabbccddeeff"})";
  ASSERT_EQ(gotcha_challenge_generate(req, &tuple, &secret), GOTCHA_OK);
  std::string t = take(tuple), s = take(secret);
  int valid = 0;
  ASSERT_EQ(gotcha_challenge_verify(t.c_str(), s.c_str(), &valid), GOTCHA_OK);
  EXPECT_EQ(valid, 1);
  char* result = nullptr;
  ASSERT_EQ(gotcha_challenge_solve(t.c_str(), 1'000'000, 2, &result), GOTCHA_OK);
  json r = json::parse(take(result));
  json sj = json::parse(s);
  EXPECT_TRUE(r["found"].get<bool>());
  EXPECT_EQ(r["password"], sj["password"]);
  EXPECT_EQ(r["permutation"], sj["permutation"]);
  EXPECT_EQ(gotcha_challenge_solve(t.c_str(), 10, 1, &result), GOTCHA_ERR_BUDGET_EXCEEDED);

  ASSERT_EQ(gotcha_challenge_generate(req, &tuple, &secret), GOTCHA_OK);
  EXPECT_EQ(take(tuple), t);
  gotcha_free(secret);

  gotcha_inkblot_set* set = nullptr;
  ASSERT_EQ(gotcha_challenge_inkblots(sj["password"].get<std::string>().c_str(), 3, &set), GOTCHA_OK);
  EXPECT_EQ(gotcha_inkblots_count(set), 3);
  gotcha_inkblots_free(set);
  EXPECT_EQ(gotcha_challenge_generate(R"({"lo": 3, "hi": 3, "k": 3})", &tuple, &secret),
            GOTCHA_ERR_VALIDATION);
}

TEST(CApi, AttackSimulationReport) {
  char* report = nullptr;
  char* table = nullptr;
  const char* cfg = R"({"dictionary_size": 8, "k": 3, "trials": 1000, "strategy": "brute-force",
                        "seed": "00112233445566778899aabbccddeeff"})";
  ASSERT_EQ(gotcha_attack_sim(cfg, &report, &table), GOTCHA_OK);
  json r = json::parse(take(report));
  std::string text = take(table);
  ASSERT_EQ(r["reports"].size(), 1u);
  EXPECT_EQ(r["reports"][0]["trials"], 1000);
  EXPECT_FALSE(r["reports"][0]["bound_check"]["violated"].get<bool>());
  EXPECT_NE(text.find("brute-force"), std::string::npos);
  EXPECT_NEAR(r["mu_bits"].get<double>(), std::log2(6.0), 1e-12);
  EXPECT_EQ(gotcha_attack_sim(cfg, nullptr, nullptr), GOTCHA_ERR_VALIDATION);
}

TEST(CApi, BoundAndEconomics) {
  double bound = 0;
  ASSERT_EQ(gotcha_offline_attack_bound(std::log2(6.0), 1, 1000, 16, 0.0, 10, &bound), GOTCHA_OK);
  EXPECT_DOUBLE_EQ(bound, 10000.0);
  uint64_t n = 0;
  double full = 0, half = 0;
  ASSERT_EQ(gotcha_hosp_economics(8e12, 8e3, 0.001, &n, &full, &half), GOTCHA_OK);
  EXPECT_EQ(n, 1'000'000'000u);
  EXPECT_DOUBLE_EQ(full, 1'000'000.0);
  EXPECT_DOUBLE_EQ(half, 500'000.0);
  EXPECT_EQ(gotcha_hosp_economics(1, 0, 1, &n, &full, &half), GOTCHA_ERR_VALIDATION);
}

TEST(CApi, ServerLifecycle) {
  gotcha_server* srv = nullptr;
  ASSERT_EQ(gotcha_server_create(R"({"port": 0, "hash_cost": "min"})", &srv), GOTCHA_OK);
  int port = 0;
  ASSERT_EQ(gotcha_server_start(srv, &port), GOTCHA_OK);
  EXPECT_GT(port, 0);
  gotcha_server_stop(srv);
  gotcha_server_free(srv);
}
