#include "secvis/transport.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <string>

#include "secvis/error.hpp"

namespace secvis {
namespace {

constexpr std::size_t kReadChunk = 1 << 20;

std::string hex_bytes(std::span<const std::uint8_t> bytes) {
  std::string out;
  char buf[4];
  for (const auto b : bytes) {
    std::snprintf(buf, sizeof(buf), "%02X", b);
    out += buf;
  }
  return out;
}

Image decrypt_payload(const FrameHeader& header, std::vector<std::uint8_t> payload,
                      const Key& key, const DecodeOptions& options) {
  Rc4State state(key);
  apply_keystream_in_place(state, payload);
  if (options.verify) {
    const std::uint32_t actual = crc32(payload);
    if (actual != header.checksum) {
      throw Error(ErrorKind::Integrity, "payload checksum mismatch (wrong key or corrupted frame)");
    }
  }
  return image_from_bytes(header.width, header.height, header.channels, payload);
}

}  // namespace

std::uint32_t crc32(std::span<const std::uint8_t> data) noexcept {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  std::size_t offset = 0;
  while (offset < data.size()) {
    const auto n = static_cast<uInt>(std::min<std::size_t>(data.size() - offset, 1U << 30));
    crc = ::crc32(crc, data.data() + offset, n);
    offset += n;
  }
  return static_cast<std::uint32_t>(crc);
}

std::array<std::uint8_t, kFrameHeaderSize> FrameHeader::encode() const noexcept {
  return {kFrameMagic[0],
          kFrameMagic[1],
          kFrameMagic[2],
          kFrameMagic[3],
          kFrameVersion,
          channels,
          static_cast<std::uint8_t>(width >> 8),
          static_cast<std::uint8_t>(width),
          static_cast<std::uint8_t>(height >> 8),
          static_cast<std::uint8_t>(height),
          static_cast<std::uint8_t>(checksum >> 24),
          static_cast<std::uint8_t>(checksum >> 16),
          static_cast<std::uint8_t>(checksum >> 8),
          static_cast<std::uint8_t>(checksum)};
}

FrameHeader FrameHeader::parse(std::span<const std::uint8_t, kFrameHeaderSize> bytes) {
  if (!std::equal(kFrameMagic.begin(), kFrameMagic.end(), bytes.begin())) {
    throw Error(ErrorKind::Protocol, "bad frame magic " + hex_bytes(bytes.first(4)));
  }
  if (bytes[4] != kFrameVersion) {
    throw Error(ErrorKind::Version, "unsupported frame version " + std::to_string(bytes[4]));
  }
  FrameHeader h;
  h.channels = bytes[5];
  h.width = static_cast<std::uint16_t>((bytes[6] << 8) | bytes[7]);
  h.height = static_cast<std::uint16_t>((bytes[8] << 8) | bytes[9]);
  h.checksum = (static_cast<std::uint32_t>(bytes[10]) << 24) |
               (static_cast<std::uint32_t>(bytes[11]) << 16) |
               (static_cast<std::uint32_t>(bytes[12]) << 8) | bytes[13];
  if (h.channels != 1 && h.channels != 3) {
    throw Error(ErrorKind::Protocol, "invalid channel count " + std::to_string(h.channels));
  }
  if (h.width < 1 || h.height < 1 || h.width > kMaxDimension || h.height > kMaxDimension) {
    throw Error(ErrorKind::Protocol, "invalid frame dimensions " + std::to_string(h.width) + "x" +
                                         std::to_string(h.height));
  }
  return h;
}

std::vector<std::uint8_t> encode_frame(const Image& img, const Key& key) {
  const int width = image_width(img);
  const int height = image_height(img);
  if (width > 0xFFFF || height > 0xFFFF) {
    throw Error(ErrorKind::FrameTooLarge, "image " + std::to_string(width) + "x" +
                                              std::to_string(height) +
                                              " does not fit 16-bit frame fields");
  }
  std::vector<std::uint8_t> payload = image_bytes(img);

  FrameHeader header;
  header.channels = static_cast<std::uint8_t>(image_channels(img));
  header.width = static_cast<std::uint16_t>(width);
  header.height = static_cast<std::uint16_t>(height);
  header.checksum = crc32(payload);

  Rc4State state(key);
  apply_keystream_in_place(state, payload);

  const auto head = header.encode();
  std::vector<std::uint8_t> frame;
  frame.reserve(head.size() + payload.size());
  frame.insert(frame.end(), head.begin(), head.end());
  frame.insert(frame.end(), payload.begin(), payload.end());
  return frame;
}

Image decode_frame(std::span<const std::uint8_t> bytes, const Key& key,
                   const DecodeOptions& options) {
  if (bytes.size() < kFrameHeaderSize) {
    throw TruncationError("truncated frame header", kFrameHeaderSize, bytes.size());
  }
  const FrameHeader header = FrameHeader::parse(bytes.first<kFrameHeaderSize>());
  const auto body = bytes.subspan(kFrameHeaderSize);
  const std::size_t expected = header.payload_size();
  if (body.size() < expected) {
    throw TruncationError("truncated frame payload", expected, body.size());
  }
  if (body.size() > expected) {
    throw Error(ErrorKind::Protocol, std::to_string(body.size() - expected) +
                                         " trailing bytes after frame payload");
  }
  return decrypt_payload(header, {body.begin(), body.end()}, key, options);
}

void send_image(ByteWriter& out, const Image& img, const Key& key) {
  write_all(out, encode_frame(img, key));
}

std::optional<Image> recv_image(ByteReader& in, const Key& key, const DecodeOptions& options) {
  std::array<std::uint8_t, kFrameHeaderSize> head{};
  const std::size_t got = read_fully(in, head);
  if (got == 0) {
    return std::nullopt;
  }
  if (got < head.size()) {
    throw TruncationError("truncated frame header", head.size(), got);
  }
  const FrameHeader header = FrameHeader::parse(head);

  // Grow the buffer as bytes arrive rather than trusting the declared size.
  const std::size_t expected = header.payload_size();
  std::vector<std::uint8_t> payload;
  while (payload.size() < expected) {
    const std::size_t have = payload.size();
    const std::size_t want = std::min(kReadChunk, expected - have);
    payload.resize(have + want);
    const std::size_t n = read_fully(in, std::span(payload).subspan(have, want));
    if (n < want) {
      throw TruncationError("truncated frame payload", expected, have + n);
    }
  }
  return decrypt_payload(header, std::move(payload), key, options);
}

}  // namespace secvis
