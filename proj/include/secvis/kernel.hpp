#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace secvis {

// 5x5 integer convolution kernel with a positive fixed-point divisor.
class Kernel {
 public:
  static constexpr int kSize = 5;
  static constexpr int kRadius = 2;
  static constexpr std::int32_t kMaxCoefficient = 32767;

  Kernel(const std::array<std::int32_t, 25>& coefficients, std::int32_t divisor);

  // Parses 26 whitespace-separated integers: 25 coefficients row-major, then divisor.
  static Kernel parse(std::string_view text);

  std::int32_t at(int row, int col) const noexcept { return coefficients_[row * kSize + col]; }
  std::int32_t divisor() const noexcept { return divisor_; }
  const std::array<std::int32_t, 25>& coefficients() const noexcept { return coefficients_; }

  friend bool operator==(const Kernel&, const Kernel&) = default;

 private:
  std::array<std::int32_t, 25> coefficients_;
  std::int32_t divisor_;
};

// All ones, divisor 25.
Kernel box_kernel_5x5();

// Center 1, divisor 1.
Kernel identity_kernel();

// Single unit coefficient at (2 + dy, 2 + dx); convolving shifts the image by (dy, dx).
Kernel delta_kernel(int dy, int dx);

}  // namespace secvis
