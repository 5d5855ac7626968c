#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "secvis/image.hpp"

namespace secvis {

struct Histogram {
  std::array<std::uint64_t, 256> counts{};

  std::uint64_t total() const noexcept;
};

// Counts pixels sampled on a grid of step `stride` (rows and columns
// stride-1, 2*stride-1, ...). stride 1 samples every pixel.
Histogram histogram(const ImagePlane& plane, int stride = 1);

// Same result as histogram(); rows are split across OpenMP threads, each
// with a private histogram merged at the end.
Histogram histogram_parallel(const ImagePlane& plane, int stride = 1);

// floor(sum(v * counts[v]) / total). `total` must equal hist.total() and be
// non-zero (EmptyImage otherwise).
std::uint8_t mean_threshold(const Histogram& hist, std::uint64_t total);

// Inclusive intensity band [low, high] with low <= high.
class ThresholdRange {
 public:
  ThresholdRange(int low, int high);

  std::uint8_t low() const noexcept { return low_; }
  std::uint8_t high() const noexcept { return high_; }

 private:
  std::uint8_t low_;
  std::uint8_t high_;
};

// 1 where low <= pixel <= high, else 0.
BinaryPlane binarize(const ImagePlane& plane, ThresholdRange range);

// Pixelwise: 0 if r + g + b < 1, else 1.
BinaryPlane combine_rgb(const BinaryPlane& r, const BinaryPlane& g, const BinaryPlane& b);

struct BinarizeOptions {
  int stride = 1;
  // Flip the final output so that pixels below the threshold are foreground.
  bool invert = false;
};

struct BinarizeResult {
  BinaryPlane image;
  // One per channel, R G B order (a single entry for grayscale).
  std::vector<std::uint8_t> thresholds;
};

// Smooth with the 5x5 box kernel (streaming path), threshold each channel
// at the mean of its smoothed plane with range [T, 255], then OR the
// channels. The three channel pipelines run concurrently.
BinarizeResult binarize_color_detailed(const RgbImage& img, const BinarizeOptions& options = {});
BinaryPlane binarize_color(const RgbImage& img, const BinarizeOptions& options = {});

BinarizeResult binarize_gray_detailed(const ImagePlane& plane, const BinarizeOptions& options = {});
BinaryPlane binarize_gray(const ImagePlane& plane, const BinarizeOptions& options = {});

// Dispatches on the image kind.
BinarizeResult binarize_image(const Image& img, const BinarizeOptions& options = {});

}  // namespace secvis
