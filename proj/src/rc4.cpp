#include "secvis/rc4.hpp"

#include <numeric>
#include <string>

#include "secvis/error.hpp"

namespace secvis {
namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Key::Key(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {
  if (bytes_.empty() || bytes_.size() > 256) {
    throw Error(ErrorKind::Key,
                "key length must be 1..256 bytes, got " + std::to_string(bytes_.size()));
  }
}

Key Key::from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    throw Error(ErrorKind::Key, "hex key has odd number of digits");
  }
  std::vector<std::uint8_t> bytes;
  bytes.reserve(hex.size() / 2);
  for (std::size_t k = 0; k < hex.size(); k += 2) {
    const int hi = hex_value(hex[k]);
    const int lo = hex_value(hex[k + 1]);
    if (hi < 0 || lo < 0) {
      throw Error(ErrorKind::Key, "invalid hex digit in key near '" +
                                      std::string(hex.substr(k, 2)) + "'");
    }
    bytes.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
  }
  return Key(std::move(bytes));
}

Key Key::from_string(std::string_view text) {
  return Key(std::vector<std::uint8_t>(text.begin(), text.end()));
}

Rc4State::Rc4State(const Key& key) {
  std::iota(s_.begin(), s_.end(), 0);
  const auto k = key.bytes();
  std::uint8_t j = 0;
  for (std::size_t i = 0; i < s_.size(); ++i) {
    j = static_cast<std::uint8_t>(j + s_[i] + k[i % k.size()]);
    std::swap(s_[i], s_[j]);
  }
}

Rc4State ksa(const Key& key) { return Rc4State(key); }

std::vector<std::uint8_t> keystream(Rc4State& state, std::size_t n) {
  std::vector<std::uint8_t> out(n);
  for (auto& b : out) b = state.next();
  return out;
}

std::vector<std::uint8_t> apply_keystream(Rc4State& state, std::span<const std::uint8_t> data) {
  std::vector<std::uint8_t> out(data.begin(), data.end());
  apply_keystream_in_place(state, out);
  return out;
}

void apply_keystream_in_place(Rc4State& state, std::span<std::uint8_t> data) noexcept {
  for (auto& b : data) b ^= state.next();
}

}  // namespace secvis
