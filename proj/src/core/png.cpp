#include "core/png.hpp"

#include <png.h>

#include <cstring>

#include "core/error.hpp"

namespace gotcha::inkblot {

// Uses the libpng simplified API, which reports errors through return codes
// instead of longjmp.

Bytes export_png(const InkblotImage& image) {
  png_image desc;
  std::memset(&desc, 0, sizeof desc);
  desc.version = PNG_IMAGE_VERSION;
  desc.width = static_cast<png_uint_32>(image.width());
  desc.height = static_cast<png_uint_32>(image.height());
  desc.format = PNG_FORMAT_RGB;

  const auto row_stride = static_cast<png_int_32>(image.width() * 3);
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&desc, nullptr, &size, 0, image.raster().data(),
                                 row_stride, nullptr))
    fail(ErrorCode::Internal, std::string("png: ") + desc.message);
  Bytes out(size);
  if (!png_image_write_to_memory(&desc, out.data(), &size, 0, image.raster().data(),
                                 row_stride, nullptr))
    fail(ErrorCode::Internal, std::string("png: ") + desc.message);
  out.resize(size);
  png_image_free(&desc);
  return out;
}

InkblotImage decode_png(std::span<const std::uint8_t> data) {
  png_image desc;
  std::memset(&desc, 0, sizeof desc);
  desc.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&desc, data.data(), data.size()))
    fail(ErrorCode::Validation, std::string("png: ") + desc.message);
  desc.format = PNG_FORMAT_RGB;
  const int width = static_cast<int>(desc.width);
  const int height = static_cast<int>(desc.height);
  if (width <= 0 || height <= 0 || width % 2 != 0) {
    png_image_free(&desc);
    fail(ErrorCode::Validation, "png: unsupported dimensions");
  }
  InkblotImage image(width, height, 0);
  if (!png_image_finish_read(&desc, nullptr, image.raster().data(), width * 3, nullptr))
    fail(ErrorCode::Validation, std::string("png: ") + desc.message);
  return image;
}

}  // namespace gotcha::inkblot
