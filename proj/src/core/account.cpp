#include "core/account.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace gotcha::auth {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) fail(ErrorCode::StoreCorrupt, "bad integer field");
  return v;
}

std::string b64_text(std::string_view s) { return to_base64(as_bytes(s)); }

std::string text_b64(std::string_view s) {
  Bytes b = from_base64(s);
  return std::string(b.begin(), b.end());
}

}  // namespace

bool operator==(const AccountRecord& a, const AccountRecord& b) {
  return a.username == b.username && a.extractor_salt == b.extractor_salt &&
         a.hash_salt == b.hash_salt && a.password_hash == b.password_hash &&
         a.permuted_labels == b.permuted_labels && a.params.k == b.params.k &&
         a.params.alpha == b.params.alpha && a.params.seed_bits == b.params.seed_bits &&
         a.hash_cost == b.hash_cost;
}

void validate_username(std::string_view username) {
  require(!username.empty(), "username must not be empty");
  require(username.size() <= kMaxUsernameBytes, "username longer than 128 bytes");
  for (char c : username)
    require(static_cast<unsigned char>(c) >= 0x20 && c != 0x7f,
            "username must not contain control characters");
}

AccountRecord make_record(std::string username, std::string_view password,
                          const matching::Permutation& pi, std::vector<std::string> permuted_labels,
                          seed::Seed extractor_salt, seed::Seed hash_salt,
                          const puzzle::PuzzleParams& params, slowhash::HashCost cost) {
  params.validate();
  require(pi.size() == params.k, "permutation size does not match k");
  require(static_cast<int>(permuted_labels.size()) == params.k, "label count does not match k");
  AccountRecord r;
  r.password_hash = slowhash::slow_hash(
      slowhash::account_hash_input(username, hash_salt, password, pi), hash_salt, cost);
  r.username = std::move(username);
  r.extractor_salt = std::move(extractor_salt);
  r.hash_salt = std::move(hash_salt);
  r.permuted_labels = std::move(permuted_labels);
  r.params = params;
  r.hash_cost = cost;
  return r;
}

bool hash_matches(const AccountRecord& record, std::string_view password,
                  const matching::Permutation& candidate) {
  Bytes digest = slowhash::slow_hash(
      slowhash::account_hash_input(record.username, record.hash_salt, password, candidate),
      record.hash_salt, record.hash_cost);
  return equal_digest(digest, record.password_hash);
}

std::string serialize_record(const AccountRecord& r) {
  std::ostringstream out;
  out << "v1\t" << b64_text(r.username) << '\t' << to_base64(r.extractor_salt.bytes()) << '\t'
      << to_base64(r.hash_salt.bytes()) << '\t' << to_base64(r.password_hash) << '\t'
      << r.params.k << '\t' << r.params.alpha << '\t' << r.params.seed_bits << '\t'
      << r.hash_cost.level << '\t';
  for (std::size_t i = 0; i < r.permuted_labels.size(); ++i) {
    if (i) out << ',';
    out << b64_text(r.permuted_labels[i]);
  }
  return out.str();
}

AccountRecord parse_record(std::string_view line) {
  try {
    auto f = split(line, '\t');
    if (f.size() != 10 || f[0] != "v1") fail(ErrorCode::StoreCorrupt, "record has wrong field count or version");
    AccountRecord r;
    r.username = text_b64(f[1]);
    r.extractor_salt = seed::Seed(from_base64(f[2]));
    r.hash_salt = seed::Seed(from_base64(f[3]));
    r.password_hash = from_base64(f[4]);
    r.params.k = parse_int(f[5]);
    r.params.alpha = parse_int(f[6]);
    r.params.seed_bits = static_cast<std::size_t>(parse_int(f[7]));
    r.hash_cost.level = parse_int(f[8]);
    for (auto label : split(f[9], ',')) r.permuted_labels.push_back(text_b64(label));
    r.params.validate();
    validate_username(r.username);
    if (static_cast<int>(r.permuted_labels.size()) != r.params.k ||
        r.extractor_salt.empty() || r.hash_salt.empty() ||
        r.password_hash.size() != slowhash::kDigestBytes ||
        r.hash_cost.level < 0 || r.hash_cost.level > slowhash::kMaxCost)
      fail(ErrorCode::StoreCorrupt, "record fields inconsistent");
    return r;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::StoreCorrupt) throw;
    fail(ErrorCode::StoreCorrupt, std::string("malformed record: ") + e.what());
  }
}

AccountStore::AccountStore(std::filesystem::path path) : path_(std::move(path)) {
  if (!std::filesystem::exists(*path_)) {
    std::ofstream out(*path_, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot create account store " + path_->string());
    out << kHeader << '\n';
    out.flush();
    if (!out) fail(ErrorCode::Io, "cannot write account store " + path_->string());
    return;
  }
  std::ifstream in(*path_, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open account store " + path_->string());
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    fail(ErrorCode::StoreCorrupt, "account store header missing or unsupported");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (in.eof()) fail(ErrorCode::StoreCorrupt, "truncated record at line " + std::to_string(line_no));
    AccountRecord r;
    try {
      r = parse_record(line);
    } catch (const Error& e) {
      fail(ErrorCode::StoreCorrupt, "line " + std::to_string(line_no) + ": " + e.what());
    }
    std::string name = r.username;
    if (!records_.emplace(name, std::move(r)).second)
      fail(ErrorCode::StoreCorrupt, "duplicate username at line " + std::to_string(line_no));
  }
}

std::optional<AccountRecord> AccountStore::find(std::string_view username) const {
  std::lock_guard lock(mutex_);
  auto it = records_.find(username);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

bool AccountStore::contains(std::string_view username) const {
  std::lock_guard lock(mutex_);
  return records_.find(username) != records_.end();
}

void AccountStore::insert(AccountRecord record) {
  std::lock_guard lock(mutex_);
  if (records_.find(record.username) != records_.end())
    fail(ErrorCode::DuplicateUser, "username already registered");
  if (path_) {
    std::ofstream out(*path_, std::ios::binary | std::ios::app);
    out << serialize_record(record) << '\n';
    out.flush();
    if (!out) fail(ErrorCode::Io, "cannot append to account store " + path_->string());
  }
  std::string name = record.username;
  records_.emplace(std::move(name), std::move(record));
}

std::size_t AccountStore::size() const {
  std::lock_guard lock(mutex_);
  return records_.size();
}

}  // namespace gotcha::auth
