#include "secvis/kernel.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <string>
#include <vector>

#include "secvis/error.hpp"

namespace secvis {

Kernel::Kernel(const std::array<std::int32_t, 25>& coefficients, std::int32_t divisor)
    : coefficients_(coefficients), divisor_(divisor) {
  if (divisor_ < 1) {
    throw Error(ErrorKind::InvalidArgument,
                "kernel divisor must be >= 1, got " + std::to_string(divisor_));
  }
  for (const auto c : coefficients_) {
    if (std::abs(c) > kMaxCoefficient) {
      throw Error(ErrorKind::InvalidArgument,
                  "kernel coefficient " + std::to_string(c) + " exceeds +/-32767");
    }
  }
}

Kernel Kernel::parse(std::string_view text) {
  std::vector<std::int32_t> values;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    const std::string_view token = text.substr(pos, end - pos);
    std::int32_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw Error(ErrorKind::Parse, "invalid kernel token '" + std::string(token) + "'");
    }
    values.push_back(value);
    pos = end;
  }
  if (values.size() != 26) {
    throw Error(ErrorKind::Parse, "kernel needs 26 integers (25 coefficients + divisor), got " +
                                      std::to_string(values.size()));
  }
  std::array<std::int32_t, 25> coefficients{};
  std::copy_n(values.begin(), 25, coefficients.begin());
  return Kernel(coefficients, values[25]);
}

Kernel box_kernel_5x5() {
  std::array<std::int32_t, 25> ones;
  ones.fill(1);
  return Kernel(ones, 25);
}

Kernel identity_kernel() { return delta_kernel(0, 0); }

Kernel delta_kernel(int dy, int dx) {
  if (dy < -Kernel::kRadius || dy > Kernel::kRadius || dx < -Kernel::kRadius ||
      dx > Kernel::kRadius) {
    throw Error(ErrorKind::InvalidArgument, "delta offset outside the 5x5 window");
  }
  std::array<std::int32_t, 25> coefficients{};
  coefficients[(Kernel::kRadius + dy) * Kernel::kSize + Kernel::kRadius + dx] = 1;
  return Kernel(coefficients, 1);
}

}  // namespace secvis
