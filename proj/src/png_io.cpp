#include "cav/png_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

namespace cav::png_io {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct PngRows {
  std::vector<uint8_t> bytes;
  std::vector<png_bytep> rows;
  PngRows(size_t height, size_t rowbytes) : bytes(height * rowbytes), rows(height) {
    for (size_t y = 0; y < height; ++y) rows[y] = bytes.data() + y * rowbytes;
  }
};

}  // namespace

Image read_image(const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw IoError("cannot open PNG for reading: " + path);

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("libpng init failed");
  }
  std::unique_ptr<PngRows> data;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("corrupt PNG: " + path);
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);

  png_uint_32 w = png_get_image_width(png, info);
  png_uint_32 h = png_get_image_height(png, info);
  int color = png_get_color_type(png, info);
  int depth = png_get_bit_depth(png, info);

  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (depth == 16) png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  color = png_get_color_type(png, info);
  const int channels = (color == PNG_COLOR_TYPE_GRAY) ? 1 : 3;
  PngRows rows(h, png_get_rowbytes(png, info));
  png_read_image(png, rows.rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  Image img(static_cast<int>(h), static_cast<int>(w), channels);
  for (size_t i = 0; i < img.pixels.size(); ++i)
    img.pixels[i] = static_cast<float>(rows.bytes[i]) / 255.f;
  return img;
}

void write_image(const std::string& path, const Image& img) {
  validate_image(img);
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw IoError("cannot open PNG for writing: " + path);

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG write failed: " + path);
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, img.width, img.height, 8,
               img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);

  PngRows rows(img.height, static_cast<size_t>(img.width) * img.channels);
  for (size_t i = 0; i < img.pixels.size(); ++i)
    rows.bytes[i] = static_cast<uint8_t>(std::lround(img.pixels[i] * 255.f));
  png_set_rows(png, info, rows.rows.data());
  png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
  png_destroy_write_struct(&png, &info);
}

Mask read_mask(const std::string& path) {
  Image img = read_image(path);
  Mask mask(img.height, img.width);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      mask.at(y, x) = img.at(y, x, 0) >= 0.5f ? 1 : 0;
  return mask;
}

void write_mask(const std::string& path, const Mask& mask) {
  validate_mask(mask);
  Image img(mask.height, mask.width, 1);
  for (size_t i = 0; i < mask.values.size(); ++i)
    img.pixels[i] = mask.values[i] ? 1.f : 0.f;
  write_image(path, img);
}

Image quantize8(const Image& img) {
  Image out = img;
  for (float& v : out.pixels)
    v = static_cast<float>(std::lround(std::clamp(v, 0.f, 1.f) * 255.f)) / 255.f;
  return out;
}

}  // namespace cav::png_io
