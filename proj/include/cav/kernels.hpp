#pragma once

#include <cstdint>
#include <vector>

#include "cav/core.hpp"

// Pixel-level kernels underlying every pipeline stage. Each kernel ships in
// two forms: the OpenMP implementation used in production (these names), and
// a naive serial reference under kernels::serial used by the test suite and
// the kernel benchmark. The two must agree bit-for-bit: parallel loops write
// disjoint outputs, and reductions accumulate fixed-order per-row partials so
// the result does not depend on the thread count.
namespace cav::kernels {

// 2x3 affine transform on (x, y) pixel coordinates.
struct Affine {
  double a00 = 1, a01 = 0, a02 = 0;
  double a10 = 0, a11 = 1, a12 = 0;

  void apply(double x, double y, double& ox, double& oy) const {
    ox = a00 * x + a01 * y + a02;
    oy = a10 * x + a11 * y + a12;
  }
  Affine inverse() const;
  // Composition: result maps p -> this(other(p)).
  Affine compose(const Affine& other) const;

  static Affine identity() { return {}; }
  static Affine translation(double dx, double dy);
  // Rotation (radians) + isotropic scale + optional horizontal flip about a
  // pivot, then translation. The standard similarity used by augmentation.
  static Affine similarity(double pivot_x, double pivot_y, double angle,
                           double scale, double dx, double dy, bool hflip);
};

Image resize_bilinear(const Image& src, int out_h, int out_w);
Mask resize_nearest(const Mask& src, int out_h, int out_w);

// Inverse warping: out(y, x) = src(map(x, y)), zero outside the source.
Image warp_bilinear(const Image& src, const Affine& out_to_src);
Mask warp_nearest(const Mask& src, const Affine& out_to_src);

// Pixelwise (1 - alpha) * a + alpha * b.
Image blend(const Image& a, const Image& b, double alpha);

// Rec.601 luma plane (pass-through for single-channel images).
std::vector<float> to_gray(const Image& img);

// Box mean over a (2r+1)^2 window with clamped borders, separable.
std::vector<float> box_mean(const std::vector<float>& plane, int h, int w, int radius);

// 3x3 Sobel gradient magnitude, clamped borders.
std::vector<float> sobel_magnitude(const std::vector<float>& plane, int h, int w);

// Per-pixel cosine similarity between feat[y][x][:] and proto; zero-norm
// pixels map to 0. feat is h*w*d row-major, out is h*w.
void cosine_similarity_map(const float* feat, int h, int w, int d,
                           const double* proto, float* out);

// sums[c] = sum over foreground pixels of feat[..][c]; count = #foreground.
void masked_channel_sums(const float* feat, int h, int w, int d,
                         const uint8_t* mask, double* sums, uint64_t* count);

// Mean over pixels of binary cross entropy between sigmoid(s) and m.
double bce_mean(const float* s, const uint8_t* m, int h, int w);

struct NccMatch {
  int dx = 0;
  int dy = 0;
  float score = -2.f;   // NCC in [-1, 1]; -2 when no valid offset exists
  bool valid = false;
};

// Best integer offset of the patch centered at (cx, cy) in src against dst,
// searched over [-radius, radius]^2. Windows must lie inside both images;
// out-of-bounds offsets are skipped. Flat source patches are invalid.
// Ties break toward the first candidate in row-major (dy, dx) order.
NccMatch ncc_best_offset(const std::vector<float>& src, const std::vector<float>& dst,
                         int h, int w, int cx, int cy, int patch, int radius);

namespace serial {

Image resize_bilinear(const Image& src, int out_h, int out_w);
Mask resize_nearest(const Mask& src, int out_h, int out_w);
Image warp_bilinear(const Image& src, const Affine& out_to_src);
Mask warp_nearest(const Mask& src, const Affine& out_to_src);
Image blend(const Image& a, const Image& b, double alpha);
std::vector<float> to_gray(const Image& img);
std::vector<float> box_mean(const std::vector<float>& plane, int h, int w, int radius);
std::vector<float> sobel_magnitude(const std::vector<float>& plane, int h, int w);
void cosine_similarity_map(const float* feat, int h, int w, int d,
                           const double* proto, float* out);
void masked_channel_sums(const float* feat, int h, int w, int d,
                         const uint8_t* mask, double* sums, uint64_t* count);
double bce_mean(const float* s, const uint8_t* m, int h, int w);
NccMatch ncc_best_offset(const std::vector<float>& src, const std::vector<float>& dst,
                         int h, int w, int cx, int cy, int patch, int radius);

}  // namespace serial

}  // namespace cav::kernels
