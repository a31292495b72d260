#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gotcha {

using Bytes = std::vector<std::uint8_t>;

std::string to_hex(std::span<const std::uint8_t> bytes);
Bytes from_hex(std::string_view hex);

std::string to_base64(std::span<const std::uint8_t> bytes);
Bytes from_base64(std::string_view text);

inline std::span<const std::uint8_t> as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

// Appends a 4-byte big-endian length followed by the field bytes.
void append_field(Bytes& out, std::span<const std::uint8_t> field);

// Constant-time equality for digests.
bool equal_digest(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

}  // namespace gotcha
