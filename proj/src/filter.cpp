#include "secvis/filter.hpp"

#include <algorithm>
#include <string>

#include "secvis/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace secvis {
namespace {

constexpr int kRadius = Kernel::kRadius;

void require_streamable(int width, int height) {
  if (width < Kernel::kSize || height < Kernel::kSize) {
    throw Error(ErrorKind::Dimension, "streaming convolution needs at least 5x5, got " +
                                          std::to_string(width) + "x" + std::to_string(height));
  }
}

// Streams input rows [first, ...) through a fresh convolver and keeps the
// output rows in [y0, y1). Rows past the bottom edge are zero flushes.
void stream_band(const ImagePlane& plane, const Kernel& kernel, int y0, int y1,
                 std::span<std::uint8_t> out) {
  const int width = plane.width();
  const int height = plane.height();
  const int first = std::max(0, y0 - kRadius);

  StreamingConvolver conv(width, kernel);
  std::vector<std::uint8_t> row_out(static_cast<std::size_t>(width));
  int next_output = first;  // output row produced by the next ready push
  for (int input = first; next_output < y1; ++input) {
    const bool ready = input < height ? conv.push_row(plane.row(input), row_out)
                                      : conv.flush_row(row_out);
    if (!ready) continue;
    if (next_output >= y0) {
      std::copy(row_out.begin(), row_out.end(),
                out.begin() + static_cast<std::ptrdiff_t>(next_output) * width);
    }
    ++next_output;
  }
}

}  // namespace

std::vector<std::int32_t> accumulate_direct(const ImagePlane& plane, const Kernel& kernel) {
  const int width = plane.width();
  const int height = plane.height();
  std::vector<std::int32_t> acc(plane.size(), 0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      std::int32_t sum = 0;
      for (int v = -kRadius; v <= kRadius; ++v) {
        const int sy = y - v;
        if (sy < 0 || sy >= height) continue;
        for (int u = -kRadius; u <= kRadius; ++u) {
          const int sx = x - u;
          if (sx < 0 || sx >= width) continue;
          sum += static_cast<std::int32_t>(plane.at(sx, sy)) * kernel.at(v + kRadius, u + kRadius);
        }
      }
      acc[static_cast<std::size_t>(y) * width + x] = sum;
    }
  }
  return acc;
}

ImagePlane convolve_direct(const ImagePlane& plane, const Kernel& kernel) {
  const auto acc = accumulate_direct(plane, kernel);
  std::vector<std::uint8_t> out(acc.size());
  std::transform(acc.begin(), acc.end(), out.begin(),
                 [&](std::int32_t a) { return saturate_narrow(a, kernel.divisor()); });
  return ImagePlane(plane.width(), plane.height(), std::move(out));
}

LineBuffer::LineBuffer(int width)
    : width_(width), lines_(static_cast<std::size_t>(kLines) * width, 0) {
  if (width < 1) {
    throw Error(ErrorKind::Dimension, "line buffer width must be positive");
  }
}

int LineBuffer::occupancy() const noexcept {
  return static_cast<int>(std::min<long>(rows_ingested_, kLines));
}

int LineBuffer::write(std::uint8_t px) noexcept {
  const int col = write_col_;
  lines_[static_cast<std::size_t>(write_line_) * width_ + col] = px;
  if (++write_col_ == width_) {
    write_col_ = 0;
    write_line_ = (write_line_ + 1) % kLines;
    ++rows_ingested_;
  }
  return col;
}

std::array<std::uint8_t, LineBuffer::kLines> LineBuffer::column(int x) const noexcept {
  // The newest row holding column x is the one being written if the counter
  // has passed x, otherwise the row completed before it.
  const int newest = x < write_col_ ? write_line_ : (write_line_ + kLines - 1) % kLines;
  std::array<std::uint8_t, kLines> col{};
  for (int k = 0; k < kLines; ++k) {
    const int line = (newest + 1 + k) % kLines;
    col[k] = lines_[static_cast<std::size_t>(line) * width_ + x];
  }
  return col;
}

StreamingConvolver::StreamingConvolver(int width, const Kernel& kernel)
    : kernel_(kernel), lines_(width) {
  if (width < Kernel::kSize) {
    throw Error(ErrorKind::Dimension,
                "streaming convolution needs width >= 5, got " + std::to_string(width));
  }
}

void StreamingConvolver::shift_in(
    const std::array<std::uint8_t, LineBuffer::kLines>& column) noexcept {
  for (int k = 0; k < LineBuffer::kLines; ++k) {
    auto& reg = taps_[k];
    std::copy(reg.begin() + 1, reg.end(), reg.begin());
    reg.back() = column[k];
  }
}

std::int32_t StreamingConvolver::mac_sum() const noexcept {
  // taps_[k][t] holds row (r - 4 + k), column (c - 4 + t) for the newest
  // pixel (r, c); the output centre is (r - 2, c - 2), so the kernel is
  // read flipped.
  std::int32_t total = 0;
  for (int k = 0; k < LineBuffer::kLines; ++k) {
    std::int32_t mac = 0;
    for (int t = 0; t < Kernel::kSize; ++t) {
      mac += static_cast<std::int32_t>(taps_[k][t]) *
             kernel_.at(Kernel::kSize - 1 - k, Kernel::kSize - 1 - t);
    }
    total += mac;
  }
  return total;
}

template <typename PixelAt>
bool StreamingConvolver::ingest(PixelAt pixel_at, std::span<std::uint8_t> out) {
  const int width = lines_.width();
  const bool ready = lines_.rows_ingested() >= kRadius;
  if (ready && out.size() < static_cast<std::size_t>(width)) {
    throw Error(ErrorKind::Dimension, "output row shorter than line width");
  }
  for (auto& reg : taps_) reg.fill(0);

  for (int x = 0; x < width; ++x) {
    const int col = lines_.write(pixel_at(x));
    shift_in(lines_.column(col));
    if (ready && x >= kRadius) {
      out[x - kRadius] = saturate_narrow(mac_sum(), kernel_.divisor());
    }
  }
  // Right padding: two zero columns drain the shift registers.
  for (int x = width; x < width + kRadius; ++x) {
    shift_in({});
    if (ready) {
      out[x - kRadius] = saturate_narrow(mac_sum(), kernel_.divisor());
    }
  }
  return ready;
}

bool StreamingConvolver::push_row(std::span<const std::uint8_t> row, std::span<std::uint8_t> out) {
  if (row.size() != static_cast<std::size_t>(lines_.width())) {
    throw Error(ErrorKind::Dimension, "input row length " + std::to_string(row.size()) +
                                          " differs from line width " +
                                          std::to_string(lines_.width()));
  }
  return ingest([&](int x) { return row[x]; }, out);
}

bool StreamingConvolver::flush_row(std::span<std::uint8_t> out) {
  return ingest([](int) { return std::uint8_t{0}; }, out);
}

ImagePlane convolve_streaming(const ImagePlane& plane, const Kernel& kernel) {
  require_streamable(plane.width(), plane.height());
  std::vector<std::uint8_t> out(plane.size());
  stream_band(plane, kernel, 0, plane.height(), out);
  return ImagePlane(plane.width(), plane.height(), std::move(out));
}

ImagePlane convolve_streaming_parallel(const ImagePlane& plane, const Kernel& kernel, int bands) {
  require_streamable(plane.width(), plane.height());
  const int height = plane.height();
  if (bands <= 0) {
#ifdef _OPENMP
    bands = omp_get_max_threads();
#else
    bands = 1;
#endif
  }
  bands = std::clamp(bands, 1, height);

  std::vector<std::uint8_t> out(plane.size());
  const std::span<std::uint8_t> view(out);
#pragma omp parallel for schedule(static)
  for (int b = 0; b < bands; ++b) {
    const int y0 = static_cast<int>(static_cast<long>(height) * b / bands);
    const int y1 = static_cast<int>(static_cast<long>(height) * (b + 1) / bands);
    stream_band(plane, kernel, y0, y1, view);
  }
  return ImagePlane(plane.width(), height, std::move(out));
}

}  // namespace secvis
