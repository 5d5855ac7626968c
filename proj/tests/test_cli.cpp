#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "oracles.hpp"
#include "secvis/cli.hpp"
#include "secvis/pnm.hpp"
#include "secvis/threshold.hpp"

using namespace secvis;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("secvis_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args, const std::string& input = {}) {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("rc4-keystream prints uppercase hex") {
  const Result r = run({"rc4-keystream", "--key-hex", "4B6579", "--count", "9"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out == "EB9F7781B734CA72A7\n");
  CHECK(run({"rc4-keystream", "--key-hex", "4B6", "--count", "1"}).code == cli::kExitFailure);
}

TEST_CASE("usage errors exit 1 with help") {
  const Result r = run({"rc4-keystream", "--bogus"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.rfind("error: usage:", 0) == 0);
  CHECK(r.err.find("rc4-keystream") != std::string::npos);
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"binarize", "a.pgm", "b.pgm", "--stride", "0"}).code == cli::kExitUsage);
  CHECK(run({"send", "--to", "-", "--key-hex", "00", "--key-file", "k", "x.pgm"}).code ==
        cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("binarize writes a 0/255 PGM and dumps one threshold per channel") {
  TempDir dir;
  std::mt19937 rng(80);
  const RgbImage img(testing::random_plane(rng, 20, 12), testing::random_plane(rng, 20, 12),
                     testing::random_plane(rng, 20, 12));
  save_image(img, dir / "in.ppm");
  const Result r = run({"binarize", dir / "in.ppm", dir / "out.pgm", "--dump-threshold"});
  REQUIRE(r.code == cli::kExitOk);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 3);

  const BinarizeResult expected = binarize_color_detailed(img);
  for (std::size_t c = 0; c < 3; ++c) CHECK(std::stoi(lines[c]) == expected.thresholds[c]);
  CHECK(std::get<ImagePlane>(load_image(dir / "out.pgm")) == binary_to_display(expected.image));

  save_image(ImagePlane(8, 8, 90), dir / "gray.pgm");
  const Result g = run({"binarize", dir / "gray.pgm", dir / "g.pgm", "--dump-threshold"});
  CHECK(lines_of(g.out).size() == 1);
}

TEST_CASE("binarize --invert flips the output") {
  TempDir dir;
  std::mt19937 rng(81);
  save_image(testing::random_plane(rng, 16, 16), dir / "in.pgm");
  REQUIRE(run({"binarize", dir / "in.pgm", dir / "a.pgm"}).code == 0);
  REQUIRE(run({"binarize", dir / "in.pgm", dir / "b.pgm", "--invert"}).code == 0);
  const auto a = std::get<ImagePlane>(load_image(dir / "a.pgm"));
  const auto b = std::get<ImagePlane>(load_image(dir / "b.pgm"));
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.pixels()[i] + b.pixels()[i] == 255);
}

TEST_CASE("filter kernels from presets and files") {
  TempDir dir;
  std::mt19937 rng(82);
  const ImagePlane p = testing::random_plane(rng, 13, 9);
  save_image(p, dir / "in.pgm");

  REQUIRE(run({"filter", dir / "in.pgm", dir / "id.pgm", "--kernel", "identity"}).code == 0);
  CHECK(std::get<ImagePlane>(load_image(dir / "id.pgm")) == p);

  REQUIRE(run({"filter", dir / "in.pgm", dir / "box.pgm"}).code == 0);
  REQUIRE(run({"filter", dir / "in.pgm", dir / "boxd.pgm", "--direct"}).code == 0);
  CHECK(load_image(dir / "box.pgm") == load_image(dir / "boxd.pgm"));

  std::ofstream(dir / "k.txt") << "0 0 0 0 0\n0 0 0 0 0\n0 0 2 0 0\n0 0 0 0 0\n0 0 0 0 0\n2\n";
  REQUIRE(run({"filter", dir / "in.pgm", dir / "k.pgm", "--kernel", "@" + (dir / "k.txt")}).code ==
          0);
  CHECK(std::get<ImagePlane>(load_image(dir / "k.pgm")) == p);

  const Result bad = run({"filter", dir / "in.pgm", dir / "x.pgm", "--kernel", "sharpen"});
  CHECK(bad.code == cli::kExitFailure);
  CHECK(bad.err.rfind("error: invalid-argument:", 0) == 0);
}

TEST_CASE("failed commands leave no output file") {
  TempDir dir;
  std::ofstream(dir / "bad.pgm") << "P5 4 4 255\nxx";
  const Result r = run({"binarize", dir / "bad.pgm", dir / "out.pgm"});
  CHECK(r.code == cli::kExitFailure);
  CHECK(r.err.rfind("error: truncation:", 0) == 0);
  CHECK_FALSE(fs::exists(dir / "out.pgm"));
  CHECK_FALSE(fs::exists(dir / "out.pgm.partial"));

  const Result missing = run({"binarize", dir / "nope.pgm", dir / "out.pgm"});
  CHECK(missing.err.rfind("error: io:", 0) == 0);
}

TEST_CASE("send to stdout then recv from stdin") {
  TempDir dir;
  std::mt19937 rng(83);
  const ImagePlane gray = testing::random_plane(rng, 17, 11);
  const RgbImage rgb(testing::random_plane(rng, 6, 7), testing::random_plane(rng, 6, 7),
                     testing::random_plane(rng, 6, 7));
  save_image(gray, dir / "a.pgm");
  save_image(rgb, dir / "b.ppm");

  const Result sent =
      run({"send", "--to", "-", "--key-hex", "00112233", dir / "a.pgm", dir / "b.ppm"});
  REQUIRE(sent.code == cli::kExitOk);
  CHECK(sent.out.size() == 2 * 14 + 17 * 11 + 6 * 7 * 3);

  const Result again =
      run({"send", "--to", "-", "--key-hex", "00112233", dir / "a.pgm", dir / "b.ppm"});
  CHECK(again.out == sent.out);

  const Result got =
      run({"recv", "--listen", "-", "--key-hex", "00112233", "--out", dir / "r.pnm"}, sent.out);
  REQUIRE(got.code == cli::kExitOk);
  CHECK(load_image(dir / "r.pnm") == Image(gray));
  CHECK(load_image(dir / "r.1.pnm") == Image(rgb));

  const Result wrong =
      run({"recv", "--listen", "-", "--key-hex", "00112234", "--out", dir / "w.pgm"}, sent.out);
  CHECK(wrong.code == cli::kExitFailure);
  CHECK(wrong.err.rfind("error: integrity:", 0) == 0);
  CHECK_FALSE(fs::exists(dir / "w.pgm"));

  const Result lax = run({"recv", "--listen", "-", "--key-hex", "00112234", "--out",
                          dir / "n.pgm", "--no-verify"},
                         sent.out);
  CHECK(lax.code == cli::kExitOk);
  CHECK(fs::exists(dir / "n.pgm"));

  const Result empty =
      run({"recv", "--listen", "-", "--key-hex", "00", "--out", dir / "e.pgm"}, "");
  CHECK(empty.code == cli::kExitFailure);

  const Result cut = run({"recv", "--listen", "-", "--key-hex", "00112233", "--out",
                          dir / "c.pgm"},
                         sent.out.substr(0, 40));
  CHECK(cut.err.rfind("error: truncation:", 0) == 0);
}

TEST_CASE("key file and roundtrip") {
  TempDir dir;
  std::mt19937 rng(84);
  save_image(testing::random_plane(rng, 64, 48), dir / "in.pgm");
  std::ofstream(dir / "key.bin", std::ios::binary) << "a raw key";
  const Result r = run({"roundtrip", "--key-file", dir / "key.bin", dir / "in.pgm"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out == "OK\n");

  const Result hex = run({"roundtrip", "--key-hex", "DEADBEEF", dir / "in.pgm"});
  CHECK(hex.out == "OK\n");
}
