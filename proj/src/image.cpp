#include "secvis/image.hpp"

#include <algorithm>
#include <string>

#include "secvis/error.hpp"

namespace secvis {
namespace {

void check_dimensions(int width, int height) {
  if (width < 1 || height < 1 || width > kMaxDimension || height > kMaxDimension) {
    throw Error(ErrorKind::Dimension, "image dimensions " + std::to_string(width) + "x" +
                                          std::to_string(height) + " outside 1.." +
                                          std::to_string(kMaxDimension));
  }
}

std::size_t pixel_count(int width, int height) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace

ImagePlane::ImagePlane(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_dimensions(width, height);
  pixels_.assign(pixel_count(width, height), fill);
}

ImagePlane::ImagePlane(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dimensions(width, height);
  if (pixels_.size() != pixel_count(width, height)) {
    throw Error(ErrorKind::Dimension, "plane of " + std::to_string(width) + "x" +
                                          std::to_string(height) + " given " +
                                          std::to_string(pixels_.size()) + " pixels");
  }
}

BinaryPlane::BinaryPlane(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dimensions(width, height);
  if (pixels_.size() != pixel_count(width, height)) {
    throw Error(ErrorKind::Dimension, "binary plane of " + std::to_string(width) + "x" +
                                          std::to_string(height) + " given " +
                                          std::to_string(pixels_.size()) + " pixels");
  }
  if (std::any_of(pixels_.begin(), pixels_.end(), [](std::uint8_t v) { return v > 1; })) {
    throw Error(ErrorKind::InvalidArgument, "binary plane pixel outside {0,1}");
  }
}

RgbImage::RgbImage(ImagePlane red, ImagePlane green, ImagePlane blue)
    : red_(std::move(red)), green_(std::move(green)), blue_(std::move(blue)) {
  const bool same = red_.width() == green_.width() && red_.width() == blue_.width() &&
                    red_.height() == green_.height() && red_.height() == blue_.height();
  if (!same) {
    throw Error(ErrorKind::Dimension, "RGB planes differ in dimensions");
  }
}

RgbImage RgbImage::from_interleaved(int width, int height,
                                    std::span<const std::uint8_t> rgb) {
  check_dimensions(width, height);
  const std::size_t n = pixel_count(width, height);
  if (rgb.size() != 3 * n) {
    throw Error(ErrorKind::Dimension, "interleaved RGB buffer has " +
                                          std::to_string(rgb.size()) + " bytes, expected " +
                                          std::to_string(3 * n));
  }
  std::vector<std::uint8_t> r(n), g(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = rgb[3 * i];
    g[i] = rgb[3 * i + 1];
    b[i] = rgb[3 * i + 2];
  }
  return RgbImage(ImagePlane(width, height, std::move(r)),
                  ImagePlane(width, height, std::move(g)),
                  ImagePlane(width, height, std::move(b)));
}

std::vector<std::uint8_t> RgbImage::interleaved() const {
  const std::size_t n = red_.size();
  std::vector<std::uint8_t> out(3 * n);
  const auto r = red_.pixels();
  const auto g = green_.pixels();
  const auto b = blue_.pixels();
  for (std::size_t i = 0; i < n; ++i) {
    out[3 * i] = r[i];
    out[3 * i + 1] = g[i];
    out[3 * i + 2] = b[i];
  }
  return out;
}

int image_width(const Image& img) noexcept {
  return std::visit([](const auto& v) { return v.width(); }, img);
}

int image_height(const Image& img) noexcept {
  return std::visit([](const auto& v) { return v.height(); }, img);
}

int image_channels(const Image& img) noexcept {
  return std::holds_alternative<ImagePlane>(img) ? 1 : 3;
}

std::vector<std::uint8_t> image_bytes(const Image& img) {
  if (const auto* plane = std::get_if<ImagePlane>(&img)) {
    return {plane->pixels().begin(), plane->pixels().end()};
  }
  return std::get<RgbImage>(img).interleaved();
}

Image image_from_bytes(int width, int height, int channels,
                       std::span<const std::uint8_t> bytes) {
  if (channels == 1) {
    return ImagePlane(width, height, std::vector<std::uint8_t>(bytes.begin(), bytes.end()));
  }
  if (channels == 3) {
    return RgbImage::from_interleaved(width, height, bytes);
  }
  throw Error(ErrorKind::Dimension, "unsupported channel count " + std::to_string(channels));
}

std::array<ImagePlane, 3> split_channels(const RgbImage& img) {
  return {img.red(), img.green(), img.blue()};
}

RgbImage merge_channels(ImagePlane red, ImagePlane green, ImagePlane blue) {
  return RgbImage(std::move(red), std::move(green), std::move(blue));
}

ImagePlane binary_to_display(const BinaryPlane& b) {
  std::vector<std::uint8_t> out(b.size());
  std::transform(b.pixels().begin(), b.pixels().end(), out.begin(),
                 [](std::uint8_t v) { return static_cast<std::uint8_t>(v ? 255 : 0); });
  return ImagePlane(b.width(), b.height(), std::move(out));
}

}  // namespace secvis
