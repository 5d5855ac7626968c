#include "secvis/pnm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <system_error>

#include "secvis/error.hpp"

namespace secvis {
namespace {

constexpr std::size_t kMaxTokenLength = 32;

bool is_space(int c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

// Returns the next header token. Consumes exactly one delimiter after it,
// which is what the format requires after maxval.
std::string next_token(std::istream& in, const char* what) {
  int c = in.get();
  while (true) {
    if (c == EOF) {
      throw Error(ErrorKind::Parse, std::string("unexpected end of header while reading ") + what);
    }
    if (c == '#') {
      while (c != EOF && c != '\n' && c != '\r') c = in.get();
      continue;
    }
    if (!is_space(c)) break;
    c = in.get();
  }
  std::string token;
  while (c != EOF && !is_space(c)) {
    if (c == '#') {
      in.unget();
      break;
    }
    token.push_back(static_cast<char>(c));
    if (token.size() > kMaxTokenLength) {
      throw Error(ErrorKind::Parse, std::string("oversized token '") + token + "...' for " + what);
    }
    c = in.get();
  }
  return token;
}

long parse_number(const std::string& token, const char* what) {
  long value = 0;
  const bool digits = !token.empty() &&
                      std::all_of(token.begin(), token.end(),
                                  [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (!digits || ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(ErrorKind::Parse, std::string("invalid ") + what + " token '" + token + "'");
  }
  return value;
}

int parse_dimension(const std::string& token, const char* what) {
  const long value = parse_number(token, what);
  if (value < 1) {
    throw Error(ErrorKind::Parse, std::string("invalid ") + what + " token '" + token + "'");
  }
  if (value > kMaxDimension) {
    throw Error(ErrorKind::Dimension, std::string(what) + " " + token + " exceeds limit " +
                                          std::to_string(kMaxDimension));
  }
  return static_cast<int>(value);
}

}  // namespace

Image read_pnm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (in.gcount() != 2 || magic[0] != 'P') {
    std::string token(magic, static_cast<std::size_t>(in.gcount()));
    throw Error(ErrorKind::Parse, "bad magic token '" + token + "'");
  }
  int channels = 0;
  if (magic[1] == '5') {
    channels = 1;
  } else if (magic[1] == '6') {
    channels = 3;
  } else if (magic[1] >= '1' && magic[1] <= '7') {
    throw Error(ErrorKind::Unsupported, std::string("PNM variant P") + magic[1] +
                                            " not supported (only P5/P6)");
  } else {
    throw Error(ErrorKind::Parse, std::string("bad magic token 'P") + magic[1] + "'");
  }
  const int next = in.peek();
  if (next != '#' && !is_space(next)) {
    throw Error(ErrorKind::Parse, "missing whitespace after magic");
  }

  const int width = parse_dimension(next_token(in, "width"), "width");
  const int height = parse_dimension(next_token(in, "height"), "height");
  const std::string maxval_token = next_token(in, "maxval");
  const long maxval = parse_number(maxval_token, "maxval");
  if (maxval != 255) {
    throw Error(ErrorKind::Unsupported, "maxval " + maxval_token + " not supported (only 255)");
  }

  const std::size_t expected = static_cast<std::size_t>(width) *
                               static_cast<std::size_t>(height) *
                               static_cast<std::size_t>(channels);
  std::vector<std::uint8_t> payload(expected);
  in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(expected));
  const auto got = static_cast<std::size_t>(in.gcount());
  if (got != expected) {
    throw TruncationError("truncated PNM payload", expected, got);
  }
  return image_from_bytes(width, height, channels, payload);
}

Image load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for reading");
  }
  try {
    return read_pnm(in);
  } catch (const TruncationError& e) {
    throw TruncationError(path.string() + ": truncated PNM payload", e.expected(), e.actual());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void write_pnm(std::ostream& out, const Image& img) {
  const int channels = image_channels(img);
  out << (channels == 1 ? "P5" : "P6") << '\n'
      << image_width(img) << ' ' << image_height(img) << '\n'
      << 255 << '\n';
  const auto bytes = image_bytes(img);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void save_image(const Image& img, const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
    }
    write_pnm(out, img);
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error(ErrorKind::Io, "cannot move output into '" + path.string() + "': " + ec.message());
  }
}

}  // namespace secvis
