#include "secvis/threshold.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <optional>
#include <string>

#include "secvis/error.hpp"
#include "secvis/filter.hpp"

namespace secvis {
namespace {

void require_stride(int stride) {
  if (stride < 1) {
    throw Error(ErrorKind::InvalidArgument, "stride must be >= 1, got " + std::to_string(stride));
  }
}

void require_same_dims(const BinaryPlane& a, const BinaryPlane& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorKind::Dimension, "binary planes differ: " + std::to_string(a.width()) + "x" +
                                          std::to_string(a.height()) + " vs " +
                                          std::to_string(b.width()) + "x" +
                                          std::to_string(b.height()));
  }
}

struct ChannelResult {
  BinaryPlane image;
  std::uint8_t threshold;
};

ChannelResult threshold_channel(const ImagePlane& plane, int stride, bool parallel_smoothing) {
  const Kernel box = box_kernel_5x5();
  const ImagePlane smoothed =
      parallel_smoothing ? convolve_streaming_parallel(plane, box) : convolve_streaming(plane, box);
  const Histogram hist = histogram(smoothed, stride);
  const std::uint8_t t = mean_threshold(hist, hist.total());
  return {binarize(smoothed, ThresholdRange(t, 255)), t};
}

BinaryPlane invert(const BinaryPlane& b) {
  std::vector<std::uint8_t> out(b.size());
  std::transform(b.pixels().begin(), b.pixels().end(), out.begin(),
                 [](std::uint8_t v) { return static_cast<std::uint8_t>(v ^ 1U); });
  return BinaryPlane(b.width(), b.height(), std::move(out));
}

}  // namespace

std::uint64_t Histogram::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Histogram histogram(const ImagePlane& plane, int stride) {
  require_stride(stride);
  Histogram hist;
  for (int y = stride - 1; y < plane.height(); y += stride) {
    const auto row = plane.row(y);
    for (int x = stride - 1; x < plane.width(); x += stride) {
      ++hist.counts[row[x]];
    }
  }
  return hist;
}

Histogram histogram_parallel(const ImagePlane& plane, int stride) {
  require_stride(stride);
  Histogram hist;
  const int height = plane.height();
  const int width = plane.width();
#pragma omp parallel
  {
    std::array<std::uint64_t, 256> local{};
#pragma omp for schedule(static) nowait
    for (int y = stride - 1; y < height; y += stride) {
      const auto row = plane.row(y);
      for (int x = stride - 1; x < width; x += stride) {
        ++local[row[x]];
      }
    }
#pragma omp critical(secvis_histogram_merge)
    for (std::size_t v = 0; v < local.size(); ++v) {
      hist.counts[v] += local[v];
    }
  }
  return hist;
}

std::uint8_t mean_threshold(const Histogram& hist, std::uint64_t total) {
  if (total == 0) {
    throw Error(ErrorKind::EmptyImage, "mean threshold of an empty sample");
  }
  if (total != hist.total()) {
    throw Error(ErrorKind::InvalidArgument, "pixel total " + std::to_string(total) +
                                                " disagrees with histogram sum " +
                                                std::to_string(hist.total()));
  }
  std::uint64_t weighted = 0;
  for (std::size_t v = 0; v < hist.counts.size(); ++v) {
    weighted += v * hist.counts[v];
  }
  return static_cast<std::uint8_t>(weighted / total);
}

ThresholdRange::ThresholdRange(int low, int high) {
  if (low < 0 || high > 255 || low > high) {
    throw Error(ErrorKind::InvalidArgument, "invalid threshold range [" + std::to_string(low) +
                                                ", " + std::to_string(high) + "]");
  }
  low_ = static_cast<std::uint8_t>(low);
  high_ = static_cast<std::uint8_t>(high);
}

BinaryPlane binarize(const ImagePlane& plane, ThresholdRange range) {
  std::vector<std::uint8_t> out(plane.size());
  std::transform(plane.pixels().begin(), plane.pixels().end(), out.begin(), [&](std::uint8_t v) {
    return static_cast<std::uint8_t>(range.low() <= v && v <= range.high());
  });
  return BinaryPlane(plane.width(), plane.height(), std::move(out));
}

BinaryPlane combine_rgb(const BinaryPlane& r, const BinaryPlane& g, const BinaryPlane& b) {
  require_same_dims(r, g);
  require_same_dims(r, b);
  std::vector<std::uint8_t> out(r.size());
  const auto rp = r.pixels();
  const auto gp = g.pixels();
  const auto bp = b.pixels();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int sum = rp[i] + gp[i] + bp[i];
    out[i] = sum < 1 ? 0 : 1;
  }
  return BinaryPlane(r.width(), r.height(), std::move(out));
}

BinarizeResult binarize_color_detailed(const RgbImage& img, const BinarizeOptions& options) {
  require_stride(options.stride);
  const auto planes = split_channels(img);
  std::array<std::optional<ChannelResult>, 3> results;
  std::array<std::exception_ptr, 3> failures{};

#pragma omp parallel for schedule(static, 1)
  for (int c = 0; c < 3; ++c) {
    try {
      results[c].emplace(threshold_channel(planes[c], options.stride, false));
    } catch (...) {
      failures[c] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  BinaryPlane combined = combine_rgb(results[0]->image, results[1]->image, results[2]->image);
  return {options.invert ? invert(combined) : std::move(combined),
          {results[0]->threshold, results[1]->threshold, results[2]->threshold}};
}

BinaryPlane binarize_color(const RgbImage& img, const BinarizeOptions& options) {
  return binarize_color_detailed(img, options).image;
}

BinarizeResult binarize_gray_detailed(const ImagePlane& plane, const BinarizeOptions& options) {
  require_stride(options.stride);
  auto result = threshold_channel(plane, options.stride, true);
  return {options.invert ? invert(result.image) : std::move(result.image), {result.threshold}};
}

BinaryPlane binarize_gray(const ImagePlane& plane, const BinarizeOptions& options) {
  return binarize_gray_detailed(plane, options).image;
}

BinarizeResult binarize_image(const Image& img, const BinarizeOptions& options) {
  if (const auto* plane = std::get_if<ImagePlane>(&img)) {
    return binarize_gray_detailed(*plane, options);
  }
  return binarize_color_detailed(std::get<RgbImage>(img), options);
}

}  // namespace secvis
