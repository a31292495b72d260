#include "core/inkblot.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "core/error.hpp"

namespace gotcha::inkblot {

namespace {

#include "core/trig_degrees.inc"

}  // namespace

InkblotImage::InkblotImage(int width, int height, int index)
    : width_(width), height_(height), index_(index) {
  require(width > 0 && height > 0 && width % 2 == 0,
          "canvas must have positive size and even width");
  pixels_.assign(static_cast<std::size_t>(width) * height * 3, 255);
}

Rgb InkblotImage::pixel(int x, int y) const {
  std::size_t off = (static_cast<std::size_t>(y) * width_ + x) * 3;
  return {pixels_[off], pixels_[off + 1], pixels_[off + 2]};
}

void InkblotImage::set_pixel(int x, int y, Rgb c) {
  std::size_t off = (static_cast<std::size_t>(y) * width_ + x) * 3;
  pixels_[off] = c.r;
  pixels_[off + 1] = c.g;
  pixels_[off + 2] = c.b;
}

bool InkblotImage::is_mirror_symmetric() const {
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_ / 2; ++x)
      if (pixel(x, y) != pixel(width_ - 1 - x, y)) return false;
  return true;
}

void InkblotImage::reflect_left_half() {
  const std::size_t stride = static_cast<std::size_t>(width_) * 3;
  for (int y = 0; y < height_; ++y) {
    std::uint8_t* row = pixels_.data() + static_cast<std::size_t>(y) * stride;
    for (int x = 0; x < width_ / 2; ++x) {
      const std::uint8_t* src = row + static_cast<std::size_t>(x) * 3;
      std::uint8_t* dst = row + static_cast<std::size_t>(width_ - 1 - x) * 3;
      dst[0] = src[0];
      dst[1] = src[1];
      dst[2] = src[2];
    }
  }
}

double InkblotImage::coverage() const {
  std::size_t painted = 0;
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x)
      if (pixel(x, y) != kBackground) ++painted;
  return static_cast<double>(painted) / (static_cast<double>(width_) * height_);
}

EllipseSpec draw_ellipse_spec(seed::RandomStream& stream, int canvas_width,
                              int canvas_height, int width, int height) {
  EllipseSpec e{};
  e.center_x = static_cast<int>(stream.uniform(static_cast<std::uint64_t>(canvas_width / 2)));
  e.center_y = static_cast<int>(stream.uniform(static_cast<std::uint64_t>(canvas_height)));
  e.angle_degrees = static_cast<int>(stream.uniform(kAngleSteps));
  e.color = kPalette[stream.uniform(kPalette.size())];
  e.width = width;
  e.height = height;
  return e;
}

namespace {

// Calls emit(row, first, last) for each row span of the ellipse inside
// columns [0, clip_right) and rows [0, height).
template <typename Emit>
void for_each_span(const EllipseSpec& e, int clip_right, int height, Emit&& emit) {
  // Pixel (px, py) is inside when its centre, offset (dx, dy) from the
  // ellipse centre, satisfies A dx^2 + B dx + C <= 0 for the rotated ellipse.
  const double a = e.width / 2.0;
  const double b = e.height / 2.0;
  const double c = kCosDegrees[e.angle_degrees];
  const double s = kSinDegrees[e.angle_degrees];
  const double ia2 = 1.0 / (a * a);
  const double ib2 = 1.0 / (b * b);
  const double qa = c * c * ia2 + s * s * ib2;
  const double qc = s * s * ia2 + c * c * ib2;
  const double cross = 2.0 * c * s * (ia2 - ib2);

  const int reach = static_cast<int>(std::ceil(std::max(a, b)));
  const int y0 = std::max(0, e.center_y - reach);
  const int y1 = std::min(height - 1, e.center_y + reach);

  for (int py = y0; py <= y1; ++py) {
    const double dy = py - e.center_y;
    const double qb = cross * dy;
    const double q0 = qc * dy * dy - 1.0;
    const double disc = qb * qb - 4.0 * qa * q0;
    if (disc < 0.0) continue;
    const double root = std::sqrt(disc);
    const double lo = (-qb - root) / (2.0 * qa);
    const double hi = (-qb + root) / (2.0 * qa);
    // |lo|, |hi| <= reach, so truncation toward zero gives ceil/floor cheaply.
    int ilo = static_cast<int>(lo);
    if (ilo < lo) ++ilo;
    int ihi = static_cast<int>(hi);
    if (ihi > hi) --ihi;
    int first = std::max(e.center_x + ilo, 0);
    int last = std::min(e.center_x + ihi, clip_right - 1);
    if (first <= last) emit(py, first, last);
  }
}

constexpr std::uint8_t kBackgroundIndex = kPalette.size();

// Palette-indexed left half-plane used by the generator: spans become
// memsets and the RGB expansion plus reflection happen once per image.
class IndexedHalf {
 public:
  IndexedHalf(int half_width, int height)
      : half_width_(half_width), height_(height),
        cells_(static_cast<std::size_t>(half_width) * height, kBackgroundIndex) {}

  void paint(seed::RandomStream& stream, int canvas_width, const LayerPass& pass) {
    for (int i = 0; i < pass.count; ++i) {
      EllipseSpec e = draw_ellipse_spec(stream, canvas_width, height_, pass.width, pass.height);
      auto color = static_cast<std::uint8_t>(
          std::find(kPalette.begin(), kPalette.end(), e.color) - kPalette.begin());
      for_each_span(e, half_width_, height_, [&](int row, int first, int last) {
        std::memset(cells_.data() + static_cast<std::size_t>(row) * half_width_ + first, color,
                    static_cast<std::size_t>(last - first + 1));
      });
    }
  }

  void render(InkblotImage& image) const {
    std::array<Rgb, kPalette.size() + 1> lut{};
    std::copy(kPalette.begin(), kPalette.end(), lut.begin());
    lut[kBackgroundIndex] = kBackground;
    auto raster = image.raster();
    const int width = image.width();
    for (int y = 0; y < height_; ++y) {
      const std::uint8_t* src = cells_.data() + static_cast<std::size_t>(y) * half_width_;
      std::uint8_t* left = raster.data() + static_cast<std::size_t>(y) * width * 3;
      std::uint8_t* right = left + static_cast<std::size_t>(width - 1) * 3;
      for (int x = 0; x < half_width_; ++x, left += 3, right -= 3) {
        const Rgb c = lut[src[x]];
        left[0] = right[0] = c.r;
        left[1] = right[1] = c.g;
        left[2] = right[2] = c.b;
      }
    }
  }

 private:
  int half_width_;
  int height_;
  std::vector<std::uint8_t> cells_;
};

}  // namespace

void fill_ellipse(InkblotImage& image, const EllipseSpec& e, int clip_right) {
  auto raster = image.raster();
  const int width = image.width();
  for_each_span(e, std::min(clip_right, width), image.height(), [&](int row, int first, int last) {
    std::uint8_t* px = raster.data() + (static_cast<std::size_t>(row) * width + first) * 3;
    for (int x = first; x <= last; ++x, px += 3) {
      px[0] = e.color.r;
      px[1] = e.color.g;
      px[2] = e.color.b;
    }
  });
}

void draw_random_ellipse_pairs(InkblotImage& image, seed::RandomStream& stream,
                               int t, int width, int height) {
  require(t >= 0, "ellipse count must be non-negative");
  require(width > 0 && height > 0 && width <= image.width() && height <= image.height(),
          "ellipse axes must fit the canvas");
  if (t == 0) return;
  const int half = image.width() / 2;
  for (int i = 0; i < t; ++i) {
    EllipseSpec e = draw_ellipse_spec(stream, image.width(), image.height(), width, height);
    fill_ellipse(image, e, half);
  }
  image.reflect_left_half();
}

InkblotImage generate_inkblot(const seed::Seed& seed, int index) {
  require(index >= 1, "inkblot index is 1-based");
  auto stream = seed::stream_from(seed, std::string(seed::kInkblotLabel) + std::to_string(index));
  // Same pixels as running draw_random_ellipse_pairs once per layer pass.
  IndexedHalf canvas(kCanvasWidth / 2, kCanvasHeight);
  for (const LayerPass& pass : kLayerPasses) canvas.paint(stream, kCanvasWidth, pass);
  InkblotImage image(kCanvasWidth, kCanvasHeight, index);
  canvas.render(image);
  return image;
}

std::vector<InkblotImage> generate_inkblot_images(int k, const seed::Seed& seed) {
  require(k >= 1, "k must be at least 1");
  std::vector<InkblotImage> images;
  images.reserve(static_cast<std::size_t>(k));
  for (int j = 1; j <= k; ++j) images.push_back(generate_inkblot(seed, j));
  return images;
}

}  // namespace gotcha::inkblot
