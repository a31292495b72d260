#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "core/encoding.hpp"

namespace gotcha::seed {

inline constexpr std::size_t kDefaultSeedBits = 256;

// Domain-separation labels for the keystreams. Pinned protocol-v1 constants.
inline constexpr std::string_view kExtractInfo = "gotcha/v1/extract";
inline constexpr std::string_view kStreamPrefix = "gotcha/v1/stream/";
inline constexpr std::string_view kInkblotLabel = "inkblot/";  // + decimal j
inline constexpr std::string_view kPermutationLabel = "permutation";

// A fixed-length random string: r', r1, r2, salts. Length is n/8 bytes.
class Seed {
 public:
  Seed() = default;
  explicit Seed(Bytes bytes);

  static Seed from_hex(std::string_view hex);
  // Fresh bytes from the operating system CSPRNG.
  static Seed random(std::size_t bits = kDefaultSeedBits);

  std::size_t bits() const noexcept { return bytes_.size() * 8; }
  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  std::string hex() const { return to_hex(bytes_); }
  bool empty() const noexcept { return bytes_.empty(); }

  friend bool operator==(const Seed&, const Seed&) = default;

 private:
  Bytes bytes_;
};

// Extract(pw, r'): HKDF-SHA256 with the public salt as HKDF salt, the UTF-8
// password as input keying material and kExtractInfo as info.
Seed extract(std::string_view password, const Seed& public_salt,
             std::size_t bits = kDefaultSeedBits);

// Counter-mode ChaCha20 keystream. The key is HMAC-SHA256(seed, prefix+label),
// the nonce is zero and the block counter starts at 0, so byte i of the
// stream depends only on (seed, label, i).
//
// Every integer draw consumes exactly 8 bytes.
class RandomStream {
 public:
  RandomStream(const Seed& seed, std::string_view label);
  ~RandomStream();
  RandomStream(RandomStream&&) noexcept;
  RandomStream& operator=(RandomStream&&) noexcept;
  RandomStream(const RandomStream&) = delete;
  RandomStream& operator=(const RandomStream&) = delete;

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();  // little-endian
  // Uniform in [0, bound) by 64x64->128 multiply-high. bound must be > 0.
  std::uint64_t uniform(std::uint64_t bound);
  Seed next_seed(std::size_t bits = kDefaultSeedBits);

  // Bytes consumed so far.
  std::uint64_t position() const noexcept { return position_; }

 private:
  void refill();

  std::array<std::uint8_t, 32> key_{};
  std::array<std::uint8_t, 512> buffer_{};
  std::size_t buffer_pos_ = 512;
  std::uint32_t next_block_ = 0;
  std::uint64_t position_ = 0;
};

RandomStream stream_from(const Seed& seed, std::string_view label);

}  // namespace gotcha::seed
