#include "cav/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace cav::kernels {

namespace {

inline double softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

inline float bilinear_clamp(const Image& s, double sx, double sy, int c) {
  sx = std::clamp(sx, 0.0, static_cast<double>(s.width - 1));
  sy = std::clamp(sy, 0.0, static_cast<double>(s.height - 1));
  int x0 = static_cast<int>(sx), y0 = static_cast<int>(sy);
  int x1 = std::min(x0 + 1, s.width - 1), y1 = std::min(y0 + 1, s.height - 1);
  double fx = sx - x0, fy = sy - y0;
  double v = (1 - fy) * ((1 - fx) * s.at(y0, x0, c) + fx * s.at(y0, x1, c)) +
             fy * ((1 - fx) * s.at(y1, x0, c) + fx * s.at(y1, x1, c));
  return static_cast<float>(v);
}

inline float bilinear_zero(const Image& s, double sx, double sy, int c) {
  int x0 = static_cast<int>(std::floor(sx)), y0 = static_cast<int>(std::floor(sy));
  double fx = sx - x0, fy = sy - y0;
  auto tex = [&](int y, int x) -> double {
    if (x < 0 || y < 0 || x >= s.width || y >= s.height) return 0.0;
    return s.at(y, x, c);
  };
  double v = (1 - fy) * ((1 - fx) * tex(y0, x0) + fx * tex(y0, x0 + 1)) +
             fy * ((1 - fx) * tex(y0 + 1, x0) + fx * tex(y0 + 1, x0 + 1));
  return static_cast<float>(v);
}

}  // namespace

Affine Affine::inverse() const {
  double det = a00 * a11 - a01 * a10;
  Affine r;
  r.a00 = a11 / det;
  r.a01 = -a01 / det;
  r.a10 = -a10 / det;
  r.a11 = a00 / det;
  r.a02 = -(r.a00 * a02 + r.a01 * a12);
  r.a12 = -(r.a10 * a02 + r.a11 * a12);
  return r;
}

Affine Affine::compose(const Affine& o) const {
  Affine r;
  r.a00 = a00 * o.a00 + a01 * o.a10;
  r.a01 = a00 * o.a01 + a01 * o.a11;
  r.a02 = a00 * o.a02 + a01 * o.a12 + a02;
  r.a10 = a10 * o.a00 + a11 * o.a10;
  r.a11 = a10 * o.a01 + a11 * o.a11;
  r.a12 = a10 * o.a02 + a11 * o.a12 + a12;
  return r;
}

Affine Affine::translation(double dx, double dy) {
  Affine r;
  r.a02 = dx;
  r.a12 = dy;
  return r;
}

Affine Affine::similarity(double px, double py, double angle, double scale,
                          double dx, double dy, bool hflip) {
  double c = std::cos(angle) * scale, s = std::sin(angle) * scale;
  double fx = hflip ? -1.0 : 1.0;
  Affine r;
  r.a00 = c * fx;
  r.a01 = -s;
  r.a10 = s * fx;
  r.a11 = c;
  r.a02 = px + dx - (r.a00 * px + r.a01 * py);
  r.a12 = py + dy - (r.a10 * px + r.a11 * py);
  return r;
}

// ---------------------------------------------------------------------------
// OpenMP implementations
// ---------------------------------------------------------------------------

Image resize_bilinear(const Image& src, int out_h, int out_w) {
  Image out(out_h, out_w, src.channels);
  double sx_scale = static_cast<double>(src.width) / out_w;
  double sy_scale = static_cast<double>(src.height) / out_h;
#pragma omp parallel for schedule(static)
  for (int y = 0; y < out_h; ++y) {
    double sy = (y + 0.5) * sy_scale - 0.5;
    for (int x = 0; x < out_w; ++x) {
      double sx = (x + 0.5) * sx_scale - 0.5;
      for (int c = 0; c < src.channels; ++c)
        out.at(y, x, c) = bilinear_clamp(src, sx, sy, c);
    }
  }
  return out;
}

Mask resize_nearest(const Mask& src, int out_h, int out_w) {
  Mask out(out_h, out_w);
  double sx_scale = static_cast<double>(src.width) / out_w;
  double sy_scale = static_cast<double>(src.height) / out_h;
#pragma omp parallel for schedule(static)
  for (int y = 0; y < out_h; ++y) {
    int sy = std::min(static_cast<int>((y + 0.5) * sy_scale), src.height - 1);
    for (int x = 0; x < out_w; ++x) {
      int sx = std::min(static_cast<int>((x + 0.5) * sx_scale), src.width - 1);
      out.at(y, x) = src.at(sy, sx);
    }
  }
  return out;
}

Image warp_bilinear(const Image& src, const Affine& m) {
  Image out(src.height, src.width, src.channels);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < src.width; ++x) {
      double sx, sy;
      m.apply(x, y, sx, sy);
      for (int c = 0; c < src.channels; ++c)
        out.at(y, x, c) = bilinear_zero(src, sx, sy, c);
    }
  }
  return out;
}

Mask warp_nearest(const Mask& src, const Affine& m) {
  Mask out(src.height, src.width);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < src.width; ++x) {
      double sx, sy;
      m.apply(x, y, sx, sy);
      int ix = static_cast<int>(std::floor(sx + 0.5));
      int iy = static_cast<int>(std::floor(sy + 0.5));
      out.at(y, x) = (ix >= 0 && iy >= 0 && ix < src.width && iy < src.height)
                         ? src.at(iy, ix)
                         : 0;
    }
  }
  return out;
}

Image blend(const Image& a, const Image& b, double alpha) {
  Image out(a.height, a.width, a.channels);
  const size_t n = a.size();
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    out.pixels[i] =
        static_cast<float>((1.0 - alpha) * a.pixels[i] + alpha * b.pixels[i]);
  return out;
}

std::vector<float> to_gray(const Image& img) {
  std::vector<float> g(static_cast<size_t>(img.height) * img.width);
  if (img.channels == 1) {
    std::copy(img.pixels.begin(), img.pixels.end(), g.begin());
    return g;
  }
#pragma omp parallel for schedule(static)
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      g[static_cast<size_t>(y) * img.width + x] =
          0.299f * img.at(y, x, 0) + 0.587f * img.at(y, x, 1) + 0.114f * img.at(y, x, 2);
  return g;
}

std::vector<float> box_mean(const std::vector<float>& p, int h, int w, int r) {
  // Horizontal then vertical pass; both passes sum the window explicitly in
  // ascending index order so serial and parallel results match exactly.
  std::vector<float> tmp(p.size()), out(p.size());
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0;
      for (int k = -r; k <= r; ++k)
        s += p[static_cast<size_t>(y) * w + std::clamp(x + k, 0, w - 1)];
      tmp[static_cast<size_t>(y) * w + x] = static_cast<float>(s / (2 * r + 1));
    }
  }
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0;
      for (int k = -r; k <= r; ++k)
        s += tmp[static_cast<size_t>(std::clamp(y + k, 0, h - 1)) * w + x];
      out[static_cast<size_t>(y) * w + x] = static_cast<float>(s / (2 * r + 1));
    }
  }
  return out;
}

std::vector<float> sobel_magnitude(const std::vector<float>& p, int h, int w) {
  std::vector<float> out(p.size());
  auto at = [&](int y, int x) -> double {
    return p[static_cast<size_t>(std::clamp(y, 0, h - 1)) * w + std::clamp(x, 0, w - 1)];
  };
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double gx = -at(y - 1, x - 1) + at(y - 1, x + 1) - 2 * at(y, x - 1) +
                  2 * at(y, x + 1) - at(y + 1, x - 1) + at(y + 1, x + 1);
      double gy = -at(y - 1, x - 1) - 2 * at(y - 1, x) - at(y - 1, x + 1) +
                  at(y + 1, x - 1) + 2 * at(y + 1, x) + at(y + 1, x + 1);
      out[static_cast<size_t>(y) * w + x] = static_cast<float>(std::sqrt(gx * gx + gy * gy));
    }
  }
  return out;
}

void cosine_similarity_map(const float* feat, int h, int w, int d,
                           const double* proto, float* out) {
  double pn = 0;
  for (int c = 0; c < d; ++c) pn += proto[c] * proto[c];
  pn = std::sqrt(pn);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float* f = feat + (static_cast<size_t>(y) * w + x) * d;
      double dot = 0, fn = 0;
      for (int c = 0; c < d; ++c) {
        dot += f[c] * proto[c];
        fn += static_cast<double>(f[c]) * f[c];
      }
      fn = std::sqrt(fn);
      double s = (fn < 1e-12 || pn < 1e-12) ? 0.0 : dot / (fn * pn);
      out[static_cast<size_t>(y) * w + x] = static_cast<float>(std::clamp(s, -1.0, 1.0));
    }
  }
}

void masked_channel_sums(const float* feat, int h, int w, int d,
                         const uint8_t* mask, double* sums, uint64_t* count) {
  std::vector<double> row_sums(static_cast<size_t>(h) * d, 0.0);
  std::vector<uint64_t> row_counts(h, 0);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    double* rs = row_sums.data() + static_cast<size_t>(y) * d;
    for (int x = 0; x < w; ++x) {
      if (!mask[static_cast<size_t>(y) * w + x]) continue;
      const float* f = feat + (static_cast<size_t>(y) * w + x) * d;
      for (int c = 0; c < d; ++c) rs[c] += f[c];
      ++row_counts[y];
    }
  }
  std::fill(sums, sums + d, 0.0);
  *count = 0;
  for (int y = 0; y < h; ++y) {
    for (int c = 0; c < d; ++c) sums[c] += row_sums[static_cast<size_t>(y) * d + c];
    *count += row_counts[y];
  }
}

double bce_mean(const float* s, const uint8_t* m, int h, int w) {
  std::vector<double> row_loss(h, 0.0);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    double acc = 0;
    for (int x = 0; x < w; ++x) {
      size_t i = static_cast<size_t>(y) * w + x;
      // -[m log sig(s) + (1-m) log(1-sig(s))]
      acc += m[i] ? softplus(-s[i]) : softplus(s[i]);
    }
    row_loss[y] = acc;
  }
  double total = 0;
  for (int y = 0; y < h; ++y) total += row_loss[y];
  return total / (static_cast<double>(h) * w);
}

NccMatch ncc_best_offset(const std::vector<float>& src, const std::vector<float>& dst,
                         int h, int w, int cx, int cy, int patch, int radius) {
  const int half = patch / 2;
  const int x0 = cx - half, y0 = cy - half;
  NccMatch best;
  if (x0 < 0 || y0 < 0 || x0 + patch > w || y0 + patch > h) return best;

  const double n = static_cast<double>(patch) * patch;
  double sa = 0, saa = 0;
  for (int y = 0; y < patch; ++y)
    for (int x = 0; x < patch; ++x) {
      double v = src[static_cast<size_t>(y0 + y) * w + (x0 + x)];
      sa += v;
      saa += v * v;
    }
  const double var_a = saa - sa * sa / n;
  if (var_a < 1e-8) return best;  // flat patch, no reliable match

  for (int dy = -radius; dy <= radius; ++dy) {
    const int by0 = y0 + dy;
    if (by0 < 0 || by0 + patch > h) continue;
    for (int dx = -radius; dx <= radius; ++dx) {
      const int bx0 = x0 + dx;
      if (bx0 < 0 || bx0 + patch > w) continue;
      double sb = 0, sbb = 0, sab = 0;
      for (int y = 0; y < patch; ++y) {
        const float* a = src.data() + static_cast<size_t>(y0 + y) * w + x0;
        const float* b = dst.data() + static_cast<size_t>(by0 + y) * w + bx0;
        for (int x = 0; x < patch; ++x) {
          sb += b[x];
          sbb += static_cast<double>(b[x]) * b[x];
          sab += static_cast<double>(a[x]) * b[x];
        }
      }
      const double var_b = sbb - sb * sb / n;
      if (var_b < 1e-8) continue;
      const double score = (sab - sa * sb / n) / std::sqrt(var_a * var_b);
      if (!best.valid || score > best.score) {
        best = {dx, dy, static_cast<float>(score), true};
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Serial reference implementations
// ---------------------------------------------------------------------------

namespace serial {

Image resize_bilinear(const Image& src, int out_h, int out_w) {
  Image out(out_h, out_w, src.channels);
  double sx_scale = static_cast<double>(src.width) / out_w;
  double sy_scale = static_cast<double>(src.height) / out_h;
  for (int y = 0; y < out_h; ++y) {
    double sy = (y + 0.5) * sy_scale - 0.5;
    for (int x = 0; x < out_w; ++x) {
      double sx = (x + 0.5) * sx_scale - 0.5;
      for (int c = 0; c < src.channels; ++c)
        out.at(y, x, c) = bilinear_clamp(src, sx, sy, c);
    }
  }
  return out;
}

Mask resize_nearest(const Mask& src, int out_h, int out_w) {
  Mask out(out_h, out_w);
  double sx_scale = static_cast<double>(src.width) / out_w;
  double sy_scale = static_cast<double>(src.height) / out_h;
  for (int y = 0; y < out_h; ++y) {
    int sy = std::min(static_cast<int>((y + 0.5) * sy_scale), src.height - 1);
    for (int x = 0; x < out_w; ++x) {
      int sx = std::min(static_cast<int>((x + 0.5) * sx_scale), src.width - 1);
      out.at(y, x) = src.at(sy, sx);
    }
  }
  return out;
}

Image warp_bilinear(const Image& src, const Affine& m) {
  Image out(src.height, src.width, src.channels);
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < src.width; ++x) {
      double sx, sy;
      m.apply(x, y, sx, sy);
      for (int c = 0; c < src.channels; ++c)
        out.at(y, x, c) = bilinear_zero(src, sx, sy, c);
    }
  }
  return out;
}

Mask warp_nearest(const Mask& src, const Affine& m) {
  Mask out(src.height, src.width);
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < src.width; ++x) {
      double sx, sy;
      m.apply(x, y, sx, sy);
      int ix = static_cast<int>(std::floor(sx + 0.5));
      int iy = static_cast<int>(std::floor(sy + 0.5));
      out.at(y, x) = (ix >= 0 && iy >= 0 && ix < src.width && iy < src.height)
                         ? src.at(iy, ix)
                         : 0;
    }
  }
  return out;
}

Image blend(const Image& a, const Image& b, double alpha) {
  Image out(a.height, a.width, a.channels);
  for (size_t i = 0; i < a.size(); ++i)
    out.pixels[i] =
        static_cast<float>((1.0 - alpha) * a.pixels[i] + alpha * b.pixels[i]);
  return out;
}

std::vector<float> to_gray(const Image& img) {
  std::vector<float> g(static_cast<size_t>(img.height) * img.width);
  if (img.channels == 1) {
    std::copy(img.pixels.begin(), img.pixels.end(), g.begin());
    return g;
  }
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      g[static_cast<size_t>(y) * img.width + x] =
          0.299f * img.at(y, x, 0) + 0.587f * img.at(y, x, 1) + 0.114f * img.at(y, x, 2);
  return g;
}

std::vector<float> box_mean(const std::vector<float>& p, int h, int w, int r) {
  std::vector<float> tmp(p.size()), out(p.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0;
      for (int k = -r; k <= r; ++k)
        s += p[static_cast<size_t>(y) * w + std::clamp(x + k, 0, w - 1)];
      tmp[static_cast<size_t>(y) * w + x] = static_cast<float>(s / (2 * r + 1));
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0;
      for (int k = -r; k <= r; ++k)
        s += tmp[static_cast<size_t>(std::clamp(y + k, 0, h - 1)) * w + x];
      out[static_cast<size_t>(y) * w + x] = static_cast<float>(s / (2 * r + 1));
    }
  }
  return out;
}

std::vector<float> sobel_magnitude(const std::vector<float>& p, int h, int w) {
  std::vector<float> out(p.size());
  auto at = [&](int y, int x) -> double {
    return p[static_cast<size_t>(std::clamp(y, 0, h - 1)) * w + std::clamp(x, 0, w - 1)];
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double gx = -at(y - 1, x - 1) + at(y - 1, x + 1) - 2 * at(y, x - 1) +
                  2 * at(y, x + 1) - at(y + 1, x - 1) + at(y + 1, x + 1);
      double gy = -at(y - 1, x - 1) - 2 * at(y - 1, x) - at(y - 1, x + 1) +
                  at(y + 1, x - 1) + 2 * at(y + 1, x) + at(y + 1, x + 1);
      out[static_cast<size_t>(y) * w + x] = static_cast<float>(std::sqrt(gx * gx + gy * gy));
    }
  }
  return out;
}

void cosine_similarity_map(const float* feat, int h, int w, int d,
                           const double* proto, float* out) {
  double pn = 0;
  for (int c = 0; c < d; ++c) pn += proto[c] * proto[c];
  pn = std::sqrt(pn);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float* f = feat + (static_cast<size_t>(y) * w + x) * d;
      double dot = 0, fn = 0;
      for (int c = 0; c < d; ++c) {
        dot += f[c] * proto[c];
        fn += static_cast<double>(f[c]) * f[c];
      }
      fn = std::sqrt(fn);
      double s = (fn < 1e-12 || pn < 1e-12) ? 0.0 : dot / (fn * pn);
      out[static_cast<size_t>(y) * w + x] = static_cast<float>(std::clamp(s, -1.0, 1.0));
    }
  }
}

void masked_channel_sums(const float* feat, int h, int w, int d,
                         const uint8_t* mask, double* sums, uint64_t* count) {
  std::vector<double> row_sums(static_cast<size_t>(h) * d, 0.0);
  std::vector<uint64_t> row_counts(h, 0);
  for (int y = 0; y < h; ++y) {
    double* rs = row_sums.data() + static_cast<size_t>(y) * d;
    for (int x = 0; x < w; ++x) {
      if (!mask[static_cast<size_t>(y) * w + x]) continue;
      const float* f = feat + (static_cast<size_t>(y) * w + x) * d;
      for (int c = 0; c < d; ++c) rs[c] += f[c];
      ++row_counts[y];
    }
  }
  std::fill(sums, sums + d, 0.0);
  *count = 0;
  for (int y = 0; y < h; ++y) {
    for (int c = 0; c < d; ++c) sums[c] += row_sums[static_cast<size_t>(y) * d + c];
    *count += row_counts[y];
  }
}

double bce_mean(const float* s, const uint8_t* m, int h, int w) {
  std::vector<double> row_loss(h, 0.0);
  for (int y = 0; y < h; ++y) {
    double acc = 0;
    for (int x = 0; x < w; ++x) {
      size_t i = static_cast<size_t>(y) * w + x;
      acc += m[i] ? softplus(-s[i]) : softplus(s[i]);
    }
    row_loss[y] = acc;
  }
  double total = 0;
  for (int y = 0; y < h; ++y) total += row_loss[y];
  return total / (static_cast<double>(h) * w);
}

NccMatch ncc_best_offset(const std::vector<float>& src, const std::vector<float>& dst,
                         int h, int w, int cx, int cy, int patch, int radius) {
  const int half = patch / 2;
  const int x0 = cx - half, y0 = cy - half;
  NccMatch best;
  if (x0 < 0 || y0 < 0 || x0 + patch > w || y0 + patch > h) return best;

  const double n = static_cast<double>(patch) * patch;
  double mean_a = 0;
  for (int y = 0; y < patch; ++y)
    for (int x = 0; x < patch; ++x)
      mean_a += src[static_cast<size_t>(y0 + y) * w + (x0 + x)];
  mean_a /= n;
  double var_a = 0;
  for (int y = 0; y < patch; ++y)
    for (int x = 0; x < patch; ++x) {
      double v = src[static_cast<size_t>(y0 + y) * w + (x0 + x)] - mean_a;
      var_a += v * v;
    }
  if (var_a < 1e-8) return best;

  for (int dy = -radius; dy <= radius; ++dy) {
    const int by0 = y0 + dy;
    if (by0 < 0 || by0 + patch > h) continue;
    for (int dx = -radius; dx <= radius; ++dx) {
      const int bx0 = x0 + dx;
      if (bx0 < 0 || bx0 + patch > w) continue;
      double mean_b = 0;
      for (int y = 0; y < patch; ++y)
        for (int x = 0; x < patch; ++x)
          mean_b += dst[static_cast<size_t>(by0 + y) * w + (bx0 + x)];
      mean_b /= n;
      double var_b = 0, cov = 0;
      for (int y = 0; y < patch; ++y)
        for (int x = 0; x < patch; ++x) {
          double a = src[static_cast<size_t>(y0 + y) * w + (x0 + x)] - mean_a;
          double b = dst[static_cast<size_t>(by0 + y) * w + (bx0 + x)] - mean_b;
          var_b += b * b;
          cov += a * b;
        }
      if (var_b < 1e-8) continue;
      const double score = cov / std::sqrt(var_a * var_b);
      if (!best.valid || score > best.score) {
        best = {dx, dy, static_cast<float>(score), true};
      }
    }
  }
  return best;
}

}  // namespace serial

}  // namespace cav::kernels
