#pragma once

// Test-only reference code. Nothing here calls into the filter or
// threshold implementations it is used to check.

#include <cstdint>
#include <random>
#include <vector>

#include "secvis/image.hpp"
#include "secvis/kernel.hpp"

namespace secvis::testing {

// Zero-padded true 2D convolution written as the textbook double sum over
// source coordinates: out[x,y] = sum_{n1,n2} f[n1,n2] * g[x-n1, y-n2],
// with the kernel g indexed from -2..2 around its centre. Returns raw sums.
std::vector<std::int64_t> oracle_convolve_raw(const ImagePlane& plane, const Kernel& kernel);

// Narrowed with |acc| / divisor, clamped to 255.
ImagePlane oracle_convolve(const ImagePlane& plane, const Kernel& kernel);

// floor of the arithmetic mean by direct summation over pixels.
std::uint8_t oracle_mean(const ImagePlane& plane);

// Brute-force single-channel pipeline: oracle box smoothing, oracle mean,
// then the [T, 255] band test. Returns the 0/1 pixels and T.
struct OraclePipeline {
  std::vector<std::uint8_t> pixels;
  std::uint8_t threshold;
};
OraclePipeline oracle_binarize_gray(const ImagePlane& plane);

ImagePlane random_plane(std::mt19937& rng, int width, int height);
Kernel random_kernel(std::mt19937& rng, int lo, int hi, std::int32_t divisor);

// Synthetic degraded document: dark glyph strokes (intensity 20..60) on a
// noisy bright page (200 +/- 20). `text_mask` marks glyph pixels.
struct DocumentFixture {
  ImagePlane image;
  std::vector<std::uint8_t> text_mask;
};
DocumentFixture make_document(int side, int stroke, int gap, std::uint32_t seed);

}  // namespace secvis::testing
