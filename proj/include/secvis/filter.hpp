#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "secvis/image.hpp"
#include "secvis/kernel.hpp"

namespace secvis {

// Absolute value, truncating division by the scale factor, clamp to 8 bits.
constexpr std::uint8_t saturate_narrow(std::int32_t acc, std::int32_t divisor) noexcept {
  const std::int64_t magnitude = acc < 0 ? -static_cast<std::int64_t>(acc) : acc;
  const std::int64_t scaled = magnitude / divisor;
  return static_cast<std::uint8_t>(scaled > 255 ? 255 : scaled);
}

// Raw convolution sums (before narrowing), zero padding at the borders.
// out(x, y) = sum over taps of in(x - u, y - v) * k(v + 2, u + 2).
std::vector<std::int32_t> accumulate_direct(const ImagePlane& plane, const Kernel& kernel);

// Serial reference implementation. No size restriction.
ImagePlane convolve_direct(const ImagePlane& plane, const Kernel& kernel);

// Five row buffers written in rotation by a column counter. Rows that have
// not been written read back as zero.
class LineBuffer {
 public:
  static constexpr int kLines = Kernel::kSize;

  explicit LineBuffer(int width);

  int width() const noexcept { return width_; }
  // Number of complete rows ingested so far.
  long rows_ingested() const noexcept { return rows_ingested_; }
  // Rows currently held: min(rows_ingested, 5).
  int occupancy() const noexcept;

  // Writes the next pixel of the current row. Returns the column it landed in.
  int write(std::uint8_t px) noexcept;

  // Column `x` of the five most recent rows, oldest first. The row being
  // written contributes its newest pixel.
  std::array<std::uint8_t, kLines> column(int x) const noexcept;

 private:
  int width_;
  int write_line_ = 0;
  int write_col_ = 0;
  long rows_ingested_ = 0;
  std::vector<std::uint8_t> lines_;
};

// Line-buffered streaming convolver: pixels go in row-major, each output is
// the sum of five per-row MAC results over 5-tap shift registers, then
// narrowed. Output rows lag input rows by two; call flush_row() twice after
// the last input row to drain.
class StreamingConvolver {
 public:
  StreamingConvolver(int width, const Kernel& kernel);

  // Ingests one full input row. If an output row is ready (two rows of
  // latency), writes it into `out` and returns true.
  bool push_row(std::span<const std::uint8_t> row, std::span<std::uint8_t> out);
  // Ingests a row of zeros (bottom padding).
  bool flush_row(std::span<std::uint8_t> out);

  const LineBuffer& line_buffer() const noexcept { return lines_; }

 private:
  template <typename PixelAt>
  bool ingest(PixelAt pixel_at, std::span<std::uint8_t> out);

  void shift_in(const std::array<std::uint8_t, LineBuffer::kLines>& column) noexcept;
  std::int32_t mac_sum() const noexcept;

  Kernel kernel_;
  LineBuffer lines_;
  // Addressable shift registers: one 5-tap delay line per buffered row.
  std::array<std::array<std::uint8_t, Kernel::kSize>, LineBuffer::kLines> taps_{};
};

// Streams the whole plane through one StreamingConvolver. Requires
// width >= 5 and height >= 5; pixel-identical to convolve_direct.
ImagePlane convolve_streaming(const ImagePlane& plane, const Kernel& kernel);

// Splits the rows into horizontal bands, each streamed through its own
// convolver primed with the two rows above the band. Bands run under
// OpenMP. `bands` <= 0 picks one band per available thread.
ImagePlane convolve_streaming_parallel(const ImagePlane& plane, const Kernel& kernel,
                                       int bands = 0);

}  // namespace secvis
