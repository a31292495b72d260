#pragma once

#include <cstdint>
#include <string_view>

#include "core/encoding.hpp"
#include "core/matching.hpp"
#include "core/seedcore.hpp"

namespace gotcha::slowhash {

inline constexpr int kMaxCost = 30;
inline constexpr std::size_t kDigestBytes = 32;

// Work factor: 2^level PBKDF2-HMAC-SHA256 iterations. Level 0 is for tests.
struct HashCost {
  int level = 0;
  std::uint64_t iterations() const { return std::uint64_t{1} << level; }
  friend bool operator==(const HashCost&, const HashCost&) = default;
};

HashCost parse_cost(std::string_view text);  // "min" or a level 0..30

// PBKDF2-HMAC-SHA256(message, salt, 2^level) -> 32 bytes.
Bytes slow_hash(std::span<const std::uint8_t> message, const seed::Seed& salt, HashCost cost);

// Account binding h(u, s, pw, pi(1..k)): length-prefixed u, s, pw, then the
// length-prefixed block of 1-based pi entries, one byte each.
Bytes account_hash_input(std::string_view user, const seed::Seed& salt,
                         std::string_view password, const matching::Permutation& pi);

// Open-challenge binding h(pw, s, pi(1..k)); same field encoding, no user.
Bytes challenge_hash_input(std::string_view password, const seed::Seed& salt,
                           const matching::Permutation& pi);

}  // namespace gotcha::slowhash
