#pragma once

#include <string>

#include "cav/core.hpp"

namespace cav::png_io {

// Any 8/16-bit gray/palette/RGB(A) PNG loads as a 1- or 3-channel float
// image in [0,1]; alpha is dropped.
Image read_image(const std::string& path);

// 8-bit grayscale or RGB, values quantized with round(v * 255).
void write_image(const std::string& path, const Image& img);

// Single-channel mask convention: 0 = background, 255 = foreground.
// Values >= 128 load as foreground.
Mask read_mask(const std::string& path);
void write_mask(const std::string& path, const Mask& mask);

// The 8-bit quantization applied when frames are cached to disk. Sequence
// frames pass through this once at generation time so a run behaves the same
// whether its frames came from the cache or were freshly generated.
Image quantize8(const Image& img);

}  // namespace cav::png_io
