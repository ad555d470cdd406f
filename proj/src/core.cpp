#include "cav/core.hpp"

#include <algorithm>
#include <cmath>

#include "cav/kernels.hpp"

namespace cav {

void validate_image(const Image& img) {
  if (img.height < 1 || img.width < 1)
    throw InputError("image dimensions must be positive");
  if (img.channels != 1 && img.channels != 3)
    throw InputError("image must have 1 or 3 channels");
  if (img.pixels.size() != static_cast<size_t>(img.height) * img.width * img.channels)
    throw InputError("image buffer size does not match dimensions");
  for (float v : img.pixels)
    if (!std::isfinite(v) || v < 0.f || v > 1.f)
      throw InputError("image values must be finite and in [0,1]");
}

void validate_mask(const Mask& mask) {
  if (mask.height < 1 || mask.width < 1)
    throw InputError("mask dimensions must be positive");
  if (mask.values.size() != static_cast<size_t>(mask.height) * mask.width)
    throw InputError("mask buffer size does not match dimensions");
  for (uint8_t v : mask.values)
    if (v > 1) throw InputError("mask entries must be 0 or 1");
}

void validate_pair(const Image& img, const Mask& mask) {
  validate_image(img);
  validate_mask(mask);
  if (img.height != mask.height || img.width != mask.width)
    throw InputError("image/mask dimension mismatch");
}

void validate_episode(const Episode& episode) {
  if (episode.references.empty())
    throw InputError("episode needs at least one reference (K >= 1)");
  for (const auto& ref : episode.references) {
    validate_pair(ref.image, ref.mask);
    if (ref.mask.empty_foreground())
      throw InputError("reference mask must contain foreground");
    if (!ref.image.same_shape(episode.target))
      throw InputError("all episode images must share one resolution");
  }
  validate_image(episode.target);
  if (episode.target_gt) {
    validate_mask(*episode.target_gt);
    if (episode.target_gt->height != episode.target.height ||
        episode.target_gt->width != episode.target.width)
      throw InputError("target ground truth does not match target resolution");
  }
}

void validate_sequence(const PseudoVideoSequence& seq) {
  if (seq.frames.size() < 2) throw InputError("sequence needs >= 2 frames");
  if (seq.alphas.size() != seq.frames.size() || seq.prompts.size() != seq.frames.size())
    throw InputError("sequence frame/alpha/prompt lengths differ");
  if (seq.alphas.front() != 0.0 || seq.alphas.back() != 1.0)
    throw InputError("sequence alphas must span [0,1] with fixed endpoints");
  for (size_t i = 1; i < seq.alphas.size(); ++i)
    if (!(seq.alphas[i] > seq.alphas[i - 1]))
      throw InputError("sequence alphas must be strictly increasing");
  for (const auto& f : seq.frames)
    if (!f.same_shape(seq.frames.front()))
      throw InputError("sequence frames must share one resolution");
}

double iou(const Mask& a, const Mask& b) {
  if (!a.same_shape(b)) throw InputError("iou: mask dimension mismatch");
  size_t inter = 0, uni = 0;
  for (size_t i = 0; i < a.values.size(); ++i) {
    inter += a.values[i] & b.values[i];
    uni += a.values[i] | b.values[i];
  }
  if (uni == 0) return 1.0;  // empty-empty convention
  return static_cast<double>(inter) / static_cast<double>(uni);
}

EvaluationReport aggregate_miou(const std::vector<EpisodeResult>& per_episode) {
  if (per_episode.empty()) throw InputError("aggregate_miou: empty input");
  EvaluationReport report;
  report.per_episode = per_episode;
  std::sort(report.per_episode.begin(), report.per_episode.end(),
            [](const EpisodeResult& a, const EpisodeResult& b) {
              return a.episode_id < b.episode_id;
            });
  // Class means accumulate in sorted episode order; the class mean order is
  // the map's sorted key order. Both orders are pinned so the aggregate is
  // reproducible bit-for-bit.
  std::map<std::string, std::pair<double, size_t>> acc;
  for (const auto& r : report.per_episode) {
    auto& [sum, n] = acc[r.class_id];
    sum += r.iou;
    ++n;
  }
  double total = 0;
  for (const auto& [cls, sn] : acc) {
    double mean = sn.first / static_cast<double>(sn.second);
    report.per_class[cls] = mean;
    total += mean;
  }
  report.aggregate_miou = total / static_cast<double>(acc.size());
  return report;
}

std::pair<Image, Mask> resize_pair(const Image& img, const Mask& mask, int out_h, int out_w) {
  validate_pair(img, mask);
  if (out_h < 1 || out_w < 1) throw InputError("resize_pair: nonpositive target size");
  if (out_h == img.height && out_w == img.width) return {img, mask};
  return {kernels::resize_bilinear(img, out_h, out_w),
          kernels::resize_nearest(mask, out_h, out_w)};
}

}  // namespace cav
