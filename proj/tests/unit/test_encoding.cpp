#include <gtest/gtest.h>

#include "core/encoding.hpp"
#include "core/error.hpp"

using namespace gotcha;

TEST(Hex, RoundTrip) {
  Bytes b{0x00, 0x01, 0x7f, 0x80, 0xfe, 0xff};
  EXPECT_EQ(to_hex(b), "00017f80feff");
  EXPECT_EQ(from_hex("00017F80FEff"), b);
}

TEST(Hex, RejectsMalformed) {
  EXPECT_THROW(from_hex("abc"), Error);
  EXPECT_THROW(from_hex("zz"), Error);
}

TEST(Base64, KnownVectors) {
  auto enc = [](std::string_view s) { return to_base64(as_bytes(s)); };
  EXPECT_EQ(enc(""), "");
  EXPECT_EQ(enc("f"), "Zg==");
  EXPECT_EQ(enc("fo"), "Zm8=");
  EXPECT_EQ(enc("foo"), "Zm9v");
  EXPECT_EQ(enc("foobar"), "Zm9vYmFy");
}

TEST(Base64, RoundTripAllLengths) {
  for (std::size_t n = 0; n < 40; ++n) {
    Bytes b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<std::uint8_t>(i * 37 + 11);
    EXPECT_EQ(from_base64(to_base64(b)), b) << n;
  }
  EXPECT_THROW(from_base64("abc"), Error);
}

TEST(Field, LengthPrefixIsBigEndian) {
  Bytes out;
  append_field(out, as_bytes("ab"));
  append_field(out, {});
  EXPECT_EQ(to_hex(out), "00000002616200000000");
}

TEST(Field, PrefixMakesConcatenationUnambiguous) {
  Bytes a, b;
  append_field(a, as_bytes("ab"));
  append_field(a, as_bytes("c"));
  append_field(b, as_bytes("a"));
  append_field(b, as_bytes("bc"));
  EXPECT_NE(a, b);
}

TEST(Digest, ConstantTimeEquality) {
  Bytes a{1, 2, 3}, b{1, 2, 3}, c{1, 2, 4}, d{1, 2};
  EXPECT_TRUE(equal_digest(a, b));
  EXPECT_FALSE(equal_digest(a, c));
  EXPECT_FALSE(equal_digest(a, d));
}
