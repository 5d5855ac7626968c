#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace secvis {

// Shared secret for RC4: 1 to 256 raw bytes.
class Key {
 public:
  explicit Key(std::vector<std::uint8_t> bytes);

  static Key from_hex(std::string_view hex);
  static Key from_string(std::string_view text);

  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  std::size_t size() const noexcept { return bytes_.size(); }

  friend bool operator==(const Key&, const Key&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

/// RC4 generator state: a permutation of 0..255 plus the two PRGA indices.
///
/// Plain RC4 with no dropped prefix and no nonce. The first keystream bytes
/// are biased and a key reused across messages yields the same keystream;
/// callers that encrypt several messages under one key expose the XOR of
/// their plaintexts. Single owner; not safe for concurrent use.
class Rc4State {
 public:
  // Runs the key-scheduling algorithm.
  explicit Rc4State(const Key& key);

  // One PRGA step.
  std::uint8_t next() noexcept {
    i_ = static_cast<std::uint8_t>(i_ + 1);
    j_ = static_cast<std::uint8_t>(j_ + s_[i_]);
    std::swap(s_[i_], s_[j_]);
    return s_[static_cast<std::uint8_t>(s_[i_] + s_[j_])];
  }

  std::span<const std::uint8_t, 256> permutation() const noexcept { return s_; }
  std::uint8_t i() const noexcept { return i_; }
  std::uint8_t j() const noexcept { return j_; }

  friend bool operator==(const Rc4State&, const Rc4State&) = default;

 private:
  std::array<std::uint8_t, 256> s_;
  std::uint8_t i_ = 0;
  std::uint8_t j_ = 0;
};

Rc4State ksa(const Key& key);

// Advances the state by n steps and returns the emitted bytes.
std::vector<std::uint8_t> keystream(Rc4State& state, std::size_t n);

// data XOR keystream; the same call decrypts.
std::vector<std::uint8_t> apply_keystream(Rc4State& state, std::span<const std::uint8_t> data);
void apply_keystream_in_place(Rc4State& state, std::span<std::uint8_t> data) noexcept;

}  // namespace secvis
