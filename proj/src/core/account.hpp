#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/encoding.hpp"
#include "core/matching.hpp"
#include "core/puzzle.hpp"
#include "core/seedcore.hpp"
#include "core/slowhash.hpp"

namespace gotcha::auth {

inline constexpr std::size_t kMaxUsernameBytes = 128;

// The stored tuple t = (u, r', s, h_pw, labels in pi-order). Neither the
// password nor pi is recoverable from it; pi is bound only inside h_pw.
struct AccountRecord {
  std::string username;
  seed::Seed extractor_salt;  // r'
  seed::Seed hash_salt;       // s
  Bytes password_hash;        // h_pw
  std::vector<std::string> permuted_labels;
  puzzle::PuzzleParams params;
  slowhash::HashCost hash_cost;

  friend bool operator==(const AccountRecord& a, const AccountRecord& b);
};

void validate_username(std::string_view username);

AccountRecord make_record(std::string username, std::string_view password,
                          const matching::Permutation& pi, std::vector<std::string> permuted_labels,
                          seed::Seed extractor_salt, seed::Seed hash_salt,
                          const puzzle::PuzzleParams& params, slowhash::HashCost cost);

// True iff h(u, s, password, candidate) equals the stored digest.
bool hash_matches(const AccountRecord& record, std::string_view password,
                  const matching::Permutation& candidate);

// One line, no trailing newline. Layout documented in FORMATS.md.
std::string serialize_record(const AccountRecord& record);
AccountRecord parse_record(std::string_view line);

// Linearizable per-key store. With a path, every insert is appended and
// flushed as one line before it becomes visible.
class AccountStore {
 public:
  static constexpr std::string_view kHeader = "GOTCHA-ACCOUNTS v1";

  AccountStore() = default;
  // Loads an existing file or creates one holding only the header. Any
  // malformed line raises StoreCorrupt.
  explicit AccountStore(std::filesystem::path path);

  std::optional<AccountRecord> find(std::string_view username) const;
  bool contains(std::string_view username) const;
  void insert(AccountRecord record);
  std::size_t size() const;
  const std::optional<std::filesystem::path>& path() const noexcept { return path_; }

 private:
  mutable std::mutex mutex_;
  std::map<std::string, AccountRecord, std::less<>> records_;
  std::optional<std::filesystem::path> path_;
};

}  // namespace gotcha::auth
