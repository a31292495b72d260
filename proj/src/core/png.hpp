#pragma once

#include <span>

#include "core/encoding.hpp"
#include "core/inkblot.hpp"

namespace gotcha::inkblot {

// 8-bit RGB, non-interlaced, libpng default compression and filtering, no
// ancillary chunks. Output is byte-stable for a given libpng/zlib build.
Bytes export_png(const InkblotImage& image);

// Decodes an 8-bit RGB PNG. The returned image has index 0.
InkblotImage decode_png(std::span<const std::uint8_t> png);

}  // namespace gotcha::inkblot
