#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace secvis {

// Largest accepted width or height.
inline constexpr int kMaxDimension = 16384;

// Single-channel 8-bit raster, row-major. Immutable once constructed.
class ImagePlane {
 public:
  ImagePlane(int width, int height, std::uint8_t fill = 0);
  ImagePlane(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<const std::uint8_t> row(int y) const noexcept {
    return std::span<const std::uint8_t>(pixels_).subspan(
        static_cast<std::size_t>(y) * width_, width_);
  }
  std::uint8_t at(int x, int y) const noexcept {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }

  friend bool operator==(const ImagePlane&, const ImagePlane&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

// Two-valued raster: every pixel is 0 or 1.
class BinaryPlane {
 public:
  BinaryPlane(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::uint8_t at(int x, int y) const noexcept {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }

  friend bool operator==(const BinaryPlane&, const BinaryPlane&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

// Three planes of equal dimensions.
class RgbImage {
 public:
  RgbImage(ImagePlane red, ImagePlane green, ImagePlane blue);

  // Builds from interleaved R,G,B triples (PPM / wire order).
  static RgbImage from_interleaved(int width, int height,
                                   std::span<const std::uint8_t> rgb);

  int width() const noexcept { return red_.width(); }
  int height() const noexcept { return red_.height(); }

  const ImagePlane& red() const noexcept { return red_; }
  const ImagePlane& green() const noexcept { return green_; }
  const ImagePlane& blue() const noexcept { return blue_; }

  std::vector<std::uint8_t> interleaved() const;

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  ImagePlane red_;
  ImagePlane green_;
  ImagePlane blue_;
};

// A decoded file or frame: grayscale or color.
using Image = std::variant<ImagePlane, RgbImage>;

int image_width(const Image& img) noexcept;
int image_height(const Image& img) noexcept;
int image_channels(const Image& img) noexcept;

// Pixel bytes in wire/file order: row-major, RGB interleaved per pixel.
std::vector<std::uint8_t> image_bytes(const Image& img);

// Inverse of image_bytes. Throws Dimension on size mismatch.
Image image_from_bytes(int width, int height, int channels,
                       std::span<const std::uint8_t> bytes);

std::array<ImagePlane, 3> split_channels(const RgbImage& img);
RgbImage merge_channels(ImagePlane red, ImagePlane green, ImagePlane blue);

// 0 -> 0, 1 -> 255.
ImagePlane binary_to_display(const BinaryPlane& b);

}  // namespace secvis
