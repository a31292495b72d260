#include <gtest/gtest.h>

#include <bit>
#include <numeric>

#include "core/error.hpp"
#include "core/seedcore.hpp"
#include "stats.hpp"

using namespace gotcha;
using namespace gotcha::seed;

namespace {

Seed counting_salt() {
  Bytes b(32);
  std::iota(b.begin(), b.end(), 0);
  return Seed(b);
}

const Seed kStreamSeed =
    Seed::from_hex("00112233445566778899aabbccddeeff00112233445566778899aabbccddeeff");

}  // namespace

// Reference values below come from an independent HKDF / ChaCha20
// implementation (Python `cryptography`).
TEST(Extract, MatchesReferenceHkdf) {
  EXPECT_EQ(extract("correct horse", counting_salt()).hex(),
            "fab8d8eddf6bd88de44db64a687f56fc80b80febdafbb1d8eb20509b2b61a705");
  EXPECT_EQ(extract("correct horse", counting_salt(), 128).hex(),
            "fab8d8eddf6bd88de44db64a687f56fc");
}

TEST(Extract, OneCharacterChangesEverything) {
  auto a = extract("correct horse", counting_salt());
  auto b = extract("correct horsf", counting_salt());
  EXPECT_EQ(b.hex(), "94b812055d362ca10b47e26d8ca874408ad4f06e7c2191c736e7d4f2417c1fd3");
  int differing_bits = 0;
  for (std::size_t i = 0; i < 32; ++i)
    differing_bits += std::popcount(static_cast<unsigned>(a.bytes()[i] ^ b.bytes()[i]));
  EXPECT_GT(differing_bits, 80);
  EXPECT_LT(differing_bits, 176);
}

TEST(Extract, SaltSeparatesUsers) {
  EXPECT_NE(extract("pw", Seed::from_hex("00000000000000000000000000000000")),
            extract("pw", Seed::from_hex("00000000000000000000000000000001")));
}

TEST(Extract, RejectsBadInput) {
  EXPECT_THROW(extract("", counting_salt()), Error);
  EXPECT_THROW(extract("pw", Seed()), Error);
  EXPECT_THROW(extract("pw", counting_salt(), 100), Error);
  EXPECT_THROW(extract("pw", counting_salt(), 64), Error);
}

TEST(RandomStream, KeystreamMatchesReference) {
  auto s = stream_from(kStreamSeed, "inkblot/1");
  Bytes b(32);
  s.fill(b);
  EXPECT_EQ(to_hex(b), "18673eccd490add41a1fa8a8e2986ab1329d6c4e69f2166a59480bb65d8bc171");
  EXPECT_EQ(s.position(), 32u);
}

TEST(RandomStream, DrawsAreLittleEndianEightByteWords) {
  auto s = stream_from(kStreamSeed, "inkblot/1");
  const std::uint64_t expected[] = {0xd4ad90d4cc3e6718ull, 0xb16a98e2a8a81f1aull,
                                    0x6a16f2694e6c9d32ull, 0x71c18b5db60b4859ull,
                                    0x9eed4cb7993fe135ull, 0x149d10be48516df0ull};
  for (auto e : expected) EXPECT_EQ(s.next_u64(), e);
  EXPECT_EQ(s.position(), 48u);
}

TEST(RandomStream, UniformIsMultiplyHigh) {
  auto s = stream_from(kStreamSeed, "inkblot/1");
  EXPECT_EQ(s.uniform(200), 166u);
  EXPECT_EQ(s.uniform(400), 277u);
  EXPECT_EQ(s.uniform(180), 74u);
  EXPECT_EQ(s.uniform(12), 5u);
  EXPECT_THROW(s.uniform(0), Error);
}

TEST(RandomStream, CrossesRefillBoundaries) {
  auto s = stream_from(kStreamSeed, "inkblot/1");
  for (int i = 0; i < 64; ++i) s.next_u64();
  EXPECT_EQ(s.next_u64(), 0x92be9f27371b8398ull);
  for (int i = 65; i < 100; ++i) s.next_u64();
  EXPECT_EQ(s.next_u64(), 0x2ffebada3286a70cull);
}

TEST(RandomStream, ByteOffsetDependsOnlyOnPosition) {
  // Mixed fills and draws must see the same bytes as one long fill.
  auto a = stream_from(kStreamSeed, "x");
  Bytes whole(1500);
  a.fill(whole);

  auto b = stream_from(kStreamSeed, "x");
  Bytes got;
  Bytes chunk(3);
  b.fill(chunk);
  got.insert(got.end(), chunk.begin(), chunk.end());
  while (got.size() + 8 <= 1500) {
    std::uint64_t v = b.next_u64();
    for (int i = 0; i < 8; ++i) got.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  Bytes tail(1500 - got.size());
  b.fill(tail);
  got.insert(got.end(), tail.begin(), tail.end());
  EXPECT_EQ(got, whole);
}

TEST(RandomStream, LabelsAreIndependent) {
  auto a = stream_from(kStreamSeed, "inkblot/1");
  auto b = stream_from(kStreamSeed, "inkblot/2");
  EXPECT_NE(a.next_u64(), b.next_u64());
}

TEST(RandomStream, UniformPassesChiSquare) {
  auto s = stream_from(kStreamSeed, "chi");
  for (std::uint64_t bound : {2ull, 7ull, 12ull, 180ull}) {
    std::vector<std::uint64_t> counts(bound);
    const std::uint64_t n = 2000 * bound;
    for (std::uint64_t i = 0; i < n; ++i) ++counts[s.uniform(bound)];
    EXPECT_LT(stats::chi_square_uniform(counts),
              stats::chi_square_critical(static_cast<double>(bound - 1)))
        << bound;
  }
}

TEST(RandomStream, NextSeedConsumesItsLength) {
  auto s = stream_from(kStreamSeed, "seed");
  Seed a = s.next_seed(128);
  EXPECT_EQ(a.bits(), 128u);
  EXPECT_EQ(s.position(), 16u);
}

TEST(Seed, HexRoundTripAndRandomness) {
  auto a = Seed::random();
  EXPECT_EQ(a.bits(), 256u);
  EXPECT_EQ(Seed::from_hex(a.hex()), a);
  EXPECT_NE(Seed::random(), a);
  EXPECT_THROW(Seed::from_hex(""), Error);
  EXPECT_THROW(Seed::random(12), Error);
}
