#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "secvis/byte_stream.hpp"
#include "secvis/image.hpp"
#include "secvis/rc4.hpp"

namespace secvis {

// Wire layout (big-endian, header sent in clear):
//
//   offset  size  field
//   0       4     magic "SVIP"
//   4       1     version (1)
//   5       1     channels (1 = gray, 3 = RGB)
//   6       2     width
//   8       2     height
//   10      4     CRC-32 of the plaintext payload
//   14      W*H*C payload, RC4-encrypted, row-major, RGB interleaved
//
// Every frame is encrypted with a fresh RC4 state keyed by the shared key,
// so identical images encrypt identically and the keystream repeats across
// frames.
inline constexpr std::array<std::uint8_t, 4> kFrameMagic = {0x53, 0x56, 0x49, 0x50};
inline constexpr std::uint8_t kFrameVersion = 1;
inline constexpr std::size_t kFrameHeaderSize = 14;

struct FrameHeader {
  std::uint8_t channels = 1;
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  std::uint32_t checksum = 0;

  std::size_t payload_size() const noexcept {
    return static_cast<std::size_t>(width) * height * channels;
  }

  std::array<std::uint8_t, kFrameHeaderSize> encode() const noexcept;

  // Validates magic, then version, then channels and dimensions.
  static FrameHeader parse(std::span<const std::uint8_t, kFrameHeaderSize> bytes);
};

struct DecodeOptions {
  // When false the CRC is not checked and a wrong key yields noise.
  bool verify = true;
};

// CRC-32 (IEEE 802.3, reflected, init and xorout 0xFFFFFFFF).
std::uint32_t crc32(std::span<const std::uint8_t> data) noexcept;

std::vector<std::uint8_t> encode_frame(const Image& img, const Key& key);
Image decode_frame(std::span<const std::uint8_t> bytes, const Key& key,
                   const DecodeOptions& options = {});

// Writes one frame and flushes. Throws TransportError on a broken channel.
void send_image(ByteWriter& out, const Image& img, const Key& key);

// Reads one frame. Returns nullopt on end of stream at a frame boundary;
// a stream that ends inside a frame raises TruncationError.
std::optional<Image> recv_image(ByteReader& in, const Key& key, const DecodeOptions& options = {});

}  // namespace secvis
