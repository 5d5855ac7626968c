// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. Tolerances and time limits are fixed below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>

#include "oracles.hpp"
#include "secvis/error.hpp"
#include "secvis/filter.hpp"
#include "secvis/threshold.hpp"
#include "secvis/transport.hpp"

using namespace secvis;

namespace {

using Bytes = std::vector<std::uint8_t>;
using Clock = std::chrono::steady_clock;

constexpr double kRc4LimitSeconds = 1.0;
constexpr double kConvolutionLimitSeconds = 10.0;
constexpr double kTransportLimitSeconds = 30.0;
constexpr double kMinRecall = 0.95;
constexpr double kMaxFalsePositive = 0.05;

// Document fixture: 512x512, strokes 32 px, 24 px gaps, frozen seed.
constexpr int kDocSide = 512;
constexpr int kDocStroke = 32;
constexpr int kDocGap = 24;
constexpr std::uint32_t kDocSeed = 20240501;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("unexpected exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s [%d] %s: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
              secs);
  std::fflush(stdout);
}

double elapsed(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

Bytes bytes_of(std::string_view s) { return Bytes(s.begin(), s.end()); }

Key random_key(std::mt19937& rng) {
  Bytes k(1 + rng() % 256);
  for (auto& b : k) b = static_cast<std::uint8_t>(rng());
  return Key(k);
}

Outcome rc4_vectors() {
  const auto start = Clock::now();
  struct Vector {
    const char* key;
    const char* plain;
    Bytes cipher;
  };
  const Vector vectors[] = {
      {"Key", "Plaintext", {0xBB, 0xF3, 0x16, 0xE8, 0xD9, 0x40, 0xAF, 0x0A, 0xD3}},
      {"Wiki", "pedia", {0x10, 0x21, 0xBF, 0x04, 0x20}},
      {"Secret",
       "Attack at dawn",
       {0x45, 0xA0, 0x1F, 0x64, 0x5F, 0xC3, 0x5B, 0x38, 0x35, 0x52, 0x54, 0x4B, 0x9B, 0xF5}},
  };
  int ok = 0;
  for (const auto& v : vectors) {
    Rc4State s(Key::from_string(v.key));
    if (apply_keystream(s, bytes_of(v.plain)) == v.cipher) ++ok;
  }
  const double t = elapsed(start);
  return {ok == 3 && t < kRc4LimitSeconds,
          std::to_string(ok) + "/3 vectors match"};
}

Outcome convolution_equivalence() {
  const auto start = Clock::now();
  std::mt19937 rng(2);
  const std::int32_t divisors[] = {1, 25, 256};
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int w = 5 + static_cast<int>(rng() % 60);
    const int h = 5 + static_cast<int>(rng() % 60);
    const ImagePlane p = testing::random_plane(rng, w, h);
    const Kernel k = testing::random_kernel(rng, -128, 127, divisors[rng() % 3]);
    if (convolve_streaming(p, k) != convolve_direct(p, k)) ++mismatches;
  }
  const double t = elapsed(start);
  return {mismatches == 0 && t < kConvolutionLimitSeconds,
          std::to_string(200 - mismatches) + "/200 pairs identical"};
}

Outcome threshold_oracle() {
  std::mt19937 rng(3);
  int mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int w = 1 + static_cast<int>(rng() % 128);
    const int h = 1 + static_cast<int>(rng() % 128);
    const ImagePlane p = testing::random_plane(rng, w, h);
    const Histogram hist = histogram(p);
    if (mean_threshold(hist, p.size()) != testing::oracle_mean(p)) ++mismatches;
  }
  return {mismatches == 0, std::to_string(100 - mismatches) + "/100 thresholds match the oracle"};
}

bool is_binary(const BinaryPlane& b) {
  for (const auto v : b.pixels())
    if (v > 1) return false;
  return true;
}

Outcome pipeline_invariants() {
  std::mt19937 rng(4);
  int non_binary = 0;
  int permutation_breaks = 0;
  int monotonic_breaks = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int w = 5 + static_cast<int>(rng() % 60);
    const int h = 5 + static_cast<int>(rng() % 60);
    const ImagePlane r = testing::random_plane(rng, w, h);
    const ImagePlane g = testing::random_plane(rng, w, h);
    const ImagePlane b = testing::random_plane(rng, w, h);

    const BinaryPlane color = binarize_color(RgbImage(r, g, b));
    const BinaryPlane gray = binarize_gray(r);
    if (!is_binary(color) || !is_binary(gray)) ++non_binary;

    const BinaryPlane br = binarize(r, ThresholdRange(100, 255));
    const BinaryPlane bg = binarize(g, ThresholdRange(100, 255));
    const BinaryPlane bb = binarize(b, ThresholdRange(100, 255));
    const BinaryPlane ref = combine_rgb(br, bg, bb);
    if (combine_rgb(bg, br, bb) != ref || combine_rgb(bb, bg, br) != ref ||
        combine_rgb(br, bb, bg) != ref || combine_rgb(bg, bb, br) != ref ||
        combine_rgb(bb, br, bg) != ref)
      ++permutation_breaks;

    BinaryPlane prev = binarize(r, ThresholdRange(0, 255));
    for (int low = 1; low <= 255; ++low) {
      const BinaryPlane cur = binarize(r, ThresholdRange(low, 255));
      for (std::size_t i = 0; i < cur.size(); ++i) {
        if (cur.pixels()[i] > prev.pixels()[i]) {
          ++monotonic_breaks;
          break;
        }
      }
      prev = cur;
    }
  }
  return {non_binary == 0 && permutation_breaks == 0 && monotonic_breaks == 0,
          "50 planes: " + std::to_string(non_binary) + " non-binary, " +
              std::to_string(permutation_breaks) + " permutation breaks, " +
              std::to_string(monotonic_breaks) + " monotonicity breaks"};
}

struct DocumentScore {
  double recall;
  double false_positive;
};

DocumentScore score_document(int side, int stroke, int gap) {
  const auto doc = testing::make_document(side, stroke, gap, kDocSeed);
  BinarizeOptions opts;
  opts.invert = true;
  const BinaryPlane out = binarize_gray(doc.image, opts);
  std::size_t text = 0, hit = 0, background = 0, false_pos = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (doc.text_mask[i]) {
      ++text;
      hit += out.pixels()[i];
    } else {
      ++background;
      false_pos += out.pixels()[i];
    }
  }
  return {static_cast<double>(hit) / static_cast<double>(text),
          static_cast<double>(false_pos) / static_cast<double>(background)};
}

Outcome document_fixture() {
  const DocumentScore s = score_document(kDocSide, kDocStroke, kDocGap);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%dx%d recall %.4f (>= %.2f), background FP %.4f (<= %.2f)",
                kDocSide, kDocSide, s.recall, kMinRecall, s.false_positive, kMaxFalsePositive);
  return {s.recall >= kMinRecall && s.false_positive <= kMaxFalsePositive, buf};
}

Image random_image(std::mt19937& rng) {
  const int w = 1 + static_cast<int>(rng() % 256);
  const int h = 1 + static_cast<int>(rng() % 256);
  if (rng() & 1U) return testing::random_plane(rng, w, h);
  return RgbImage(testing::random_plane(rng, w, h), testing::random_plane(rng, w, h),
                  testing::random_plane(rng, w, h));
}

Outcome transport_roundtrip() {
  const auto start = Clock::now();
  std::mt19937 rng(6);
  int identical = 0;
  int integrity = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Image img = random_image(rng);
    const Key key = random_key(rng);
    Key wrong = random_key(rng);
    while (wrong == key) wrong = random_key(rng);

    auto [writer, reader] = make_loopback(64 * 1024, 1 + rng() % 8192);
    std::thread sender([&, w = std::move(writer)] {
      send_image(*w, img, key);
      w->close();
    });
    const auto got = recv_image(*reader, key);
    sender.join();
    if (got && *got == img) ++identical;

    try {
      decode_frame(encode_frame(img, key), wrong);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Integrity) ++integrity;
    }
  }

  int structured = 0;
  const Key key = Key::from_string("garbage");
  for (int trial = 0; trial < 10000; ++trial) {
    Bytes junk(rng() % 96);
    for (auto& b : junk) b = static_cast<std::uint8_t>(rng());
    if (trial % 2 == 0 && junk.size() >= 5) {
      std::copy(kFrameMagic.begin(), kFrameMagic.end(), junk.begin());
      junk[4] = kFrameVersion;
      if (trial % 4 == 0 && junk.size() >= 10) {
        junk[5] = (trial % 8 == 0) ? 1 : 3;
        junk[6] = 0;
        junk[8] = 0;
      }
    }
    auto [writer, reader] = make_loopback(4096);
    write_all(*writer, junk);
    writer->close();
    try {
      while (recv_image(*reader, key)) {
      }
      // A clean end of stream only counts for an empty stream.
      if (junk.empty()) ++structured;
    } catch (const Error&) {
      ++structured;
    }
  }
  const double t = elapsed(start);
  return {identical == 50 && integrity == 50 && structured == 10000 &&
              t < kTransportLimitSeconds,
          std::to_string(identical) + "/50 identical, " + std::to_string(integrity) +
              "/50 wrong-key integrity errors, " + std::to_string(structured) +
              "/10000 garbage streams rejected with structured errors"};
}

Outcome frame_bit_exactness() {
  const Bytes frame = encode_frame(ImagePlane(1, 1, 0x42), Key::from_string("Key"));
  const Bytes expected = {0x53, 0x56, 0x49, 0x50, 0x01, 0x01, 0x00, 0x01,
                          0x00, 0x01, 0x4A, 0xD0, 0xCF, 0x31, 0xA9};
  std::string hex;
  for (const auto b : frame) {
    char buf[4];
    std::snprintf(buf, sizeof buf, "%02X", b);
    hex += buf;
  }
  return {frame == expected, "frame " + hex};
}

}  // namespace

int main() {
  report(1, "RC4 vector conformance", rc4_vectors);
  report(2, "streaming/direct convolution equivalence", convolution_equivalence);
  report(3, "mean threshold vs direct summation", threshold_oracle);
  report(4, "binarization invariants", pipeline_invariants);
  report(5, "degraded document binarization", document_fixture);
  report(6, "transport roundtrip and rejection", transport_roundtrip);
  report(7, "frame bit-exactness", frame_bit_exactness);

  // Same generator at 64x64 for reference; not gated (see README).
  const DocumentScore small = score_document(64, 4, 4);
  std::printf("INFO document 64x64: recall %.4f, background FP %.4f\n", small.recall,
              small.false_positive);

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
