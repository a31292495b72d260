#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "core/seedcore.hpp"

namespace gotcha::inkblot {

inline constexpr int kCanvasWidth = 400;
inline constexpr int kCanvasHeight = 400;

struct Rgb {
  std::uint8_t r = 255, g = 255, b = 255;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kBackground{255, 255, 255};

// Protocol-v1 fill colors, indexed by a uniform draw in [0, 12).
inline constexpr std::array<Rgb, 12> kPalette{{
    {0, 0, 0},       {230, 25, 75},  {60, 180, 75},   {255, 225, 25},
    {0, 130, 200},   {245, 130, 48}, {145, 30, 180},  {70, 240, 240},
    {240, 50, 230},  {128, 0, 0},    {0, 0, 128},     {128, 128, 0},
}};

// Rotation is drawn as a whole number of degrees in [0, 180).
inline constexpr int kAngleSteps = 180;

struct LayerPass {
  int count;
  int width;
  int height;
};

// Order matters: later passes paint over earlier ones.
inline constexpr std::array<LayerPass, 3> kLayerPasses{{
    {150, 60, 60},
    {70, 20, 20},
    {150, 60, 20},
}};

class InkblotImage {
 public:
  InkblotImage(int width, int height, int index);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  // Position j in 1..k.
  int index() const noexcept { return index_; }

  Rgb pixel(int x, int y) const;
  void set_pixel(int x, int y, Rgb c);
  std::span<const std::uint8_t> raster() const noexcept { return pixels_; }
  std::span<std::uint8_t> raster() noexcept { return pixels_; }

  bool is_mirror_symmetric() const;
  // Copies the left half-plane (x < width/2) onto the right half.
  void reflect_left_half();
  double coverage() const;  // fraction of non-background pixels

  friend bool operator==(const InkblotImage& a, const InkblotImage& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.pixels_ == b.pixels_;
  }

 private:
  int width_;
  int height_;
  int index_;
  std::vector<std::uint8_t> pixels_;
};

struct EllipseSpec {
  int center_x;
  int center_y;
  int width;
  int height;
  int angle_degrees;
  Rgb color;
};

// Consumes exactly four draws (32 bytes): x, y, angle, color, in that order.
EllipseSpec draw_ellipse_spec(seed::RandomStream& stream, int canvas_width,
                              int canvas_height, int width, int height);

// Fills the ellipse, clipped to columns [0, clip_right) of the image.
void fill_ellipse(InkblotImage& image, const EllipseSpec& e, int clip_right);

// Draws t ellipses on the left half-plane, then mirrors that half onto the right.
void draw_random_ellipse_pairs(InkblotImage& image, seed::RandomStream& stream,
                               int t, int width, int height);

// Image j of a set; uses its own keystream so any single image can be rebuilt.
InkblotImage generate_inkblot(const seed::Seed& seed, int index);

std::vector<InkblotImage> generate_inkblot_images(int k, const seed::Seed& seed);

}  // namespace gotcha::inkblot
