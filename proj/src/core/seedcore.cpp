#include "core/seedcore.hpp"

#include <openssl/core_names.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/kdf.h>
#include <openssl/rand.h>

#include <cstring>

#include "core/error.hpp"

namespace gotcha::seed {

namespace {

void check_bits(std::size_t bits) {
  require(bits >= 128 && bits % 8 == 0 && bits <= 4096,
          "seed length must be a multiple of 8 bits in [128, 4096]");
}

struct KdfDeleter {
  void operator()(EVP_KDF* k) const { EVP_KDF_free(k); }
  void operator()(EVP_KDF_CTX* c) const { EVP_KDF_CTX_free(c); }
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
};

}  // namespace

Seed::Seed(Bytes bytes) : bytes_(std::move(bytes)) {}

Seed Seed::from_hex(std::string_view hex) {
  Bytes b = gotcha::from_hex(hex);
  require(!b.empty(), "empty seed");
  return Seed(std::move(b));
}

Seed Seed::random(std::size_t bits) {
  check_bits(bits);
  Bytes b(bits / 8);
  if (RAND_bytes(b.data(), static_cast<int>(b.size())) != 1)
    fail(ErrorCode::Internal, "system RNG failure");
  return Seed(std::move(b));
}

Seed extract(std::string_view password, const Seed& public_salt, std::size_t bits) {
  require(!password.empty(), "password must not be empty");
  require(!public_salt.empty(), "extractor salt must not be empty");
  check_bits(bits);

  std::unique_ptr<EVP_KDF, KdfDeleter> kdf(EVP_KDF_fetch(nullptr, "HKDF", nullptr));
  if (!kdf) fail(ErrorCode::Internal, "HKDF unavailable");
  std::unique_ptr<EVP_KDF_CTX, KdfDeleter> ctx(EVP_KDF_CTX_new(kdf.get()));

  char digest[] = "SHA256";
  auto salt = public_salt.bytes();
  OSSL_PARAM params[] = {
      OSSL_PARAM_construct_utf8_string(OSSL_KDF_PARAM_DIGEST, digest, 0),
      OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_KEY,
                                        const_cast<char*>(password.data()),
                                        password.size()),
      OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_SALT,
                                        const_cast<std::uint8_t*>(salt.data()),
                                        salt.size()),
      OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_INFO,
                                        const_cast<char*>(kExtractInfo.data()),
                                        kExtractInfo.size()),
      OSSL_PARAM_construct_end(),
  };
  Bytes out(bits / 8);
  if (EVP_KDF_derive(ctx.get(), out.data(), out.size(), params) != 1)
    fail(ErrorCode::Internal, "HKDF derivation failed");
  return Seed(std::move(out));
}

RandomStream::RandomStream(const Seed& seed, std::string_view label) {
  require(!seed.empty(), "stream seed must not be empty");
  std::string info(kStreamPrefix);
  info.append(label);
  unsigned int len = 0;
  auto s = seed.bytes();
  if (!HMAC(EVP_sha256(), s.data(), static_cast<int>(s.size()),
            reinterpret_cast<const unsigned char*>(info.data()), info.size(),
            key_.data(), &len) ||
      len != key_.size())
    fail(ErrorCode::Internal, "stream key derivation failed");
}

RandomStream::~RandomStream() = default;
RandomStream::RandomStream(RandomStream&&) noexcept = default;
RandomStream& RandomStream::operator=(RandomStream&&) noexcept = default;

void RandomStream::refill() {
  // IV layout for EVP_chacha20: 4-byte little-endian block counter, 12-byte nonce.
  std::array<std::uint8_t, 16> iv{};
  iv[0] = static_cast<std::uint8_t>(next_block_);
  iv[1] = static_cast<std::uint8_t>(next_block_ >> 8);
  iv[2] = static_cast<std::uint8_t>(next_block_ >> 16);
  iv[3] = static_cast<std::uint8_t>(next_block_ >> 24);

  std::unique_ptr<EVP_CIPHER_CTX, KdfDeleter> ctx(EVP_CIPHER_CTX_new());
  int outl = 0;
  std::array<std::uint8_t, 512> zeros{};
  if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_chacha20(), nullptr, key_.data(), iv.data()) != 1 ||
      EVP_EncryptUpdate(ctx.get(), buffer_.data(), &outl, zeros.data(),
                        static_cast<int>(zeros.size())) != 1 ||
      outl != static_cast<int>(buffer_.size()))
    fail(ErrorCode::Internal, "keystream generation failed");
  next_block_ += static_cast<std::uint32_t>(buffer_.size() / 64);
  buffer_pos_ = 0;
}

void RandomStream::fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (buffer_pos_ == buffer_.size()) refill();
    std::size_t n = std::min(out.size() - done, buffer_.size() - buffer_pos_);
    std::memcpy(out.data() + done, buffer_.data() + buffer_pos_, n);
    buffer_pos_ += n;
    done += n;
  }
  position_ += out.size();
}

std::uint64_t RandomStream::next_u64() {
  std::array<std::uint8_t, 8> b{};
  if (buffer_.size() - buffer_pos_ >= b.size()) {
    std::memcpy(b.data(), buffer_.data() + buffer_pos_, b.size());
    buffer_pos_ += b.size();
    position_ += b.size();
  } else {
    fill(b);
  }
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
  return v;
}

std::uint64_t RandomStream::uniform(std::uint64_t bound) {
  if (bound == 0) fail(ErrorCode::Validation, "uniform bound must be positive");
  unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * bound;
  return static_cast<std::uint64_t>(wide >> 64);
}

Seed RandomStream::next_seed(std::size_t bits) {
  check_bits(bits);
  Bytes b(bits / 8);
  fill(b);
  return Seed(std::move(b));
}

RandomStream stream_from(const Seed& seed, std::string_view label) {
  return RandomStream(seed, label);
}

}  // namespace gotcha::seed
