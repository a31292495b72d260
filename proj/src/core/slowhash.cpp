#include "core/slowhash.hpp"

#include <openssl/evp.h>

#include <charconv>

#include "core/error.hpp"

namespace gotcha::slowhash {

namespace {

void append_permutation(Bytes& out, const matching::Permutation& pi) {
  Bytes entries;
  entries.reserve(static_cast<std::size_t>(pi.size()));
  for (int i = 0; i < pi.size(); ++i) entries.push_back(static_cast<std::uint8_t>(pi[i] + 1));
  append_field(out, entries);
}

}  // namespace

HashCost parse_cost(std::string_view text) {
  if (text == "min") return HashCost{0};
  int level = -1;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), level);
  require(ec == std::errc{} && ptr == text.data() + text.size() && level >= 0 && level <= kMaxCost,
          "hash cost must be 'min' or a level in [0, 30]");
  return HashCost{level};
}

Bytes slow_hash(std::span<const std::uint8_t> message, const seed::Seed& salt, HashCost cost) {
  require(cost.level >= 0 && cost.level <= kMaxCost, "hash cost level out of range");
  Bytes out(kDigestBytes);
  auto s = salt.bytes();
  if (PKCS5_PBKDF2_HMAC(reinterpret_cast<const char*>(message.data()),
                        static_cast<int>(message.size()), s.data(), static_cast<int>(s.size()),
                        static_cast<int>(cost.iterations()), EVP_sha256(),
                        static_cast<int>(out.size()), out.data()) != 1)
    fail(ErrorCode::Internal, "PBKDF2 failed");
  return out;
}

Bytes account_hash_input(std::string_view user, const seed::Seed& salt,
                         std::string_view password, const matching::Permutation& pi) {
  Bytes out;
  append_field(out, as_bytes(user));
  append_field(out, salt.bytes());
  append_field(out, as_bytes(password));
  append_permutation(out, pi);
  return out;
}

Bytes challenge_hash_input(std::string_view password, const seed::Seed& salt,
                           const matching::Permutation& pi) {
  Bytes out;
  append_field(out, as_bytes(password));
  append_field(out, salt.bytes());
  append_permutation(out, pi);
  return out;
}

}  // namespace gotcha::slowhash
