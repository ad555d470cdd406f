#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cav/errors.hpp"

namespace cav {

// Row-major H x W x C, values in [0,1]. C is 1 (gray) or 3 (RGB).
struct Image {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<float> pixels;

  Image() = default;
  Image(int h, int w, int c, float fill = 0.f)
      : height(h), width(w), channels(c),
        pixels(static_cast<size_t>(h) * w * c, fill) {}

  float& at(int y, int x, int c) {
    return pixels[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  float at(int y, int x, int c) const {
    return pixels[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  size_t size() const { return pixels.size(); }
  bool same_shape(const Image& o) const {
    return height == o.height && width == o.width && channels == o.channels;
  }
};

// Binary mask paired with an image; entries are 0 or 1.
struct Mask {
  int height = 0;
  int width = 0;
  std::vector<uint8_t> values;

  Mask() = default;
  Mask(int h, int w, uint8_t fill = 0)
      : height(h), width(w), values(static_cast<size_t>(h) * w, fill) {}

  uint8_t& at(int y, int x) { return values[static_cast<size_t>(y) * width + x]; }
  uint8_t at(int y, int x) const { return values[static_cast<size_t>(y) * width + x]; }
  size_t size() const { return values.size(); }
  bool same_shape(const Mask& o) const { return height == o.height && width == o.width; }

  size_t foreground_count() const {
    size_t n = 0;
    for (uint8_t v : values) n += v;
    return n;
  }
  bool empty_foreground() const { return foreground_count() == 0; }
  double foreground_fraction() const {
    return values.empty() ? 0.0 : static_cast<double>(foreground_count()) / values.size();
  }
};

void validate_image(const Image& img);            // throws InputError
void validate_mask(const Mask& mask);             // throws InputError
void validate_pair(const Image& img, const Mask& mask);

struct ReferencePair {
  Image image;
  Mask mask;
};

// One reference-segmentation task: K annotated references plus a target.
struct Episode {
  std::string id;
  std::string class_id;
  std::string dataset_id;
  std::vector<ReferencePair> references;
  Image target;
  std::optional<Mask> target_gt;

  int shot_count() const { return static_cast<int>(references.size()); }
};

void validate_episode(const Episode& episode);

// Ordered frames [reference, generated intermediates..., target] with their
// interpolation ratios and per-frame prompt slots.
struct PseudoVideoSequence {
  std::vector<Image> frames;
  std::vector<double> alphas;                 // alphas[0]=0, alphas[last]=1
  std::vector<std::optional<Mask>> prompts;   // same length as frames

  int frame_count() const { return static_cast<int>(frames.size()); }
  int intermediate_count() const { return frame_count() - 2; }
  int prompted_count() const {
    int n = 0;
    for (const auto& p : prompts) n += p.has_value();
    return n;
  }
};

void validate_sequence(const PseudoVideoSequence& seq);

struct EpisodeResult {
  std::string episode_id;
  std::string class_id;
  double iou = 0.0;
};

// Persisted per-run results; aggregate is the unweighted mean over the
// per-class means (class-balanced reduction, fixed order: class ids sorted).
struct EvaluationReport {
  std::vector<EpisodeResult> per_episode;     // sorted by episode id
  std::map<std::string, double> per_class;
  double aggregate_miou = 0.0;
  std::string config_fingerprint;
};

// |a AND b| / |a OR b|; both-empty pairs score 1 so that correctly refusing
// to segment a negative episode counts as a hit.
double iou(const Mask& a, const Mask& b);

EvaluationReport aggregate_miou(const std::vector<EpisodeResult>& per_episode);

// Bilinear image resize paired with nearest-neighbor mask resize.
std::pair<Image, Mask> resize_pair(const Image& img, const Mask& mask, int out_h, int out_w);

}  // namespace cav
