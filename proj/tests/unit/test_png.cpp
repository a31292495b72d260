#include <gtest/gtest.h>

#include "core/error.hpp"
#include "core/png.hpp"

using namespace gotcha;
using namespace gotcha::inkblot;

TEST(Png, BlankImageDecodesToBackground) {
  InkblotImage blank(kCanvasWidth, kCanvasHeight, 1);
  Bytes png = export_png(blank);
  ASSERT_GE(png.size(), 8u);
  const std::uint8_t signature[] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  EXPECT_TRUE(std::equal(std::begin(signature), std::end(signature), png.begin()));
  auto back = decode_png(png);
  EXPECT_EQ(back.width(), kCanvasWidth);
  EXPECT_EQ(back.height(), kCanvasHeight);
  EXPECT_EQ(back.coverage(), 0.0);
}

TEST(Png, RoundTripIsLossless) {
  auto img = generate_inkblot(seed::Seed::from_hex("abcdef0123456789abcdef0123456789"), 2);
  auto back = decode_png(export_png(img));
  EXPECT_TRUE(std::equal(img.raster().begin(), img.raster().end(), back.raster().begin(),
                         back.raster().end()));
}

TEST(Png, EncodingIsStable) {
  auto img = generate_inkblot(seed::Seed::from_hex("abcdef0123456789abcdef0123456789"), 1);
  EXPECT_EQ(export_png(img), export_png(img));
}

TEST(Png, RejectsGarbage) {
  Bytes junk{1, 2, 3, 4, 5};
  EXPECT_THROW(decode_png(junk), Error);
}
