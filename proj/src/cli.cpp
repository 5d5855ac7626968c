#include "secvis/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <thread>

#include "secvis/byte_stream.hpp"
#include "secvis/error.hpp"
#include "secvis/filter.hpp"
#include "secvis/pnm.hpp"
#include "secvis/rc4.hpp"
#include "secvis/threshold.hpp"
#include "secvis/transport.hpp"

namespace secvis::cli {
namespace {

class IstreamReader final : public ByteReader {
 public:
  explicit IstreamReader(std::istream& in) : in_(in) {}
  std::size_t read_some(std::span<std::uint8_t> buf) override {
    if (buf.empty()) return 0;
    in_.read(reinterpret_cast<char*>(buf.data()), 1);
    if (in_.gcount() == 0) return 0;
    const auto more = in_.readsome(reinterpret_cast<char*>(buf.data()) + 1,
                                   static_cast<std::streamsize>(buf.size() - 1));
    return 1 + static_cast<std::size_t>(more);
  }

 private:
  std::istream& in_;
};

class OstreamWriter final : public ByteWriter {
 public:
  explicit OstreamWriter(std::ostream& out) : out_(out) {}
  std::size_t write_some(std::span<const std::uint8_t> buf) override {
    out_.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out_) throw Error(ErrorKind::Transport, "output stream failed");
    return buf.size();
  }
  void flush() override {
    out_.flush();
    if (!out_) throw Error(ErrorKind::Transport, "output stream flush failed");
  }

 private:
  std::ostream& out_;
};

struct KeyOptions {
  std::string hex;
  std::string file;
};

void add_key_options(CLI::App* cmd, KeyOptions& key) {
  auto* hex = cmd->add_option("--key-hex", key.hex, "Shared key as hex digits");
  auto* file = cmd->add_option("--key-file", key.file, "File holding the raw key bytes");
  hex->excludes(file);
}

Key resolve_key(const KeyOptions& opts) {
  if (!opts.hex.empty()) {
    return Key::from_hex(opts.hex);
  }
  if (!opts.file.empty()) {
    std::ifstream in(opts.file, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open key file '" + opts.file + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return Key(std::move(bytes));
  }
  throw Error(ErrorKind::Key, "no key given (use --key-hex or --key-file)");
}

Image read_input(const std::string& path, std::istream& in) {
  if (path == "-") return read_pnm(in);
  return load_image(path);
}

void write_output(const Image& img, const std::string& path, std::ostream& out) {
  if (path == "-") {
    write_pnm(out, img);
    out.flush();
    return;
  }
  save_image(img, path);
}

Kernel resolve_kernel(const std::string& spec) {
  if (spec == "box5") return box_kernel_5x5();
  if (spec == "identity") return identity_kernel();
  if (!spec.empty() && spec.front() == '@') {
    const std::string path = spec.substr(1);
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open kernel file '" + path + "'");
    std::stringstream text;
    text << in.rdbuf();
    return Kernel::parse(text.str());
  }
  throw Error(ErrorKind::InvalidArgument,
              "unknown kernel '" + spec + "' (expected box5, identity or @file)");
}

// frame 0 -> out.pgm, frame n -> out.n.pgm
std::string numbered_path(const std::string& base, std::size_t index) {
  if (index == 0) return base;
  const std::filesystem::path p(base);
  std::filesystem::path numbered = p.parent_path() / p.stem();
  numbered += "." + std::to_string(index);
  numbered += p.extension();
  return numbered.string();
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (const auto b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xF]);
  }
  return s;
}

int cmd_filter(const std::string& input, const std::string& output, const std::string& kernel_spec,
               bool direct, std::istream& in, std::ostream& out) {
  const Kernel kernel = resolve_kernel(kernel_spec);
  const Image img = read_input(input, in);
  const auto apply = [&](const ImagePlane& p) {
    return direct ? convolve_direct(p, kernel) : convolve_streaming_parallel(p, kernel);
  };
  if (const auto* plane = std::get_if<ImagePlane>(&img)) {
    write_output(apply(*plane), output, out);
  } else {
    const auto& rgb = std::get<RgbImage>(img);
    write_output(merge_channels(apply(rgb.red()), apply(rgb.green()), apply(rgb.blue())), output,
                 out);
  }
  return kExitOk;
}

int cmd_binarize(const std::string& input, const std::string& output, int stride, bool invert,
                 bool dump_threshold, std::istream& in, std::ostream& out) {
  const Image img = read_input(input, in);
  BinarizeOptions options;
  options.stride = stride;
  options.invert = invert;
  const BinarizeResult result = binarize_image(img, options);
  write_output(binary_to_display(result.image), output, out);
  if (dump_threshold) {
    for (const auto t : result.thresholds) out << static_cast<int>(t) << '\n';
  }
  return kExitOk;
}

int cmd_send(const std::string& to, const Key& key, const std::vector<std::string>& images,
             std::istream& in, std::ostream& out) {
  std::vector<Image> loaded;
  loaded.reserve(images.size());
  for (const auto& path : images) loaded.push_back(read_input(path, in));

  if (to == "-") {
    OstreamWriter writer(out);
    for (const auto& img : loaded) send_image(writer, img, key);
    return kExitOk;
  }
  auto stream = tcp_connect(to);
  for (const auto& img : loaded) send_image(*stream, img, key);
  stream->shutdown_write();
  return kExitOk;
}

int cmd_recv(const std::string& listen, const Key& key, const std::string& output, bool no_verify,
             std::istream& in, std::ostream& out) {
  DecodeOptions options;
  options.verify = !no_verify;

  const auto drain = [&](ByteReader& reader) {
    std::size_t index = 0;
    while (auto img = recv_image(reader, key, options)) {
      write_output(*img, output == "-" ? output : numbered_path(output, index), out);
      ++index;
    }
    if (index == 0) {
      throw Error(ErrorKind::Truncation, "stream ended before any frame arrived");
    }
  };

  if (listen == "-") {
    IstreamReader reader(in);
    drain(reader);
    return kExitOk;
  }
  TcpListener listener(listen);
  auto stream = listener.accept();
  drain(*stream);
  return kExitOk;
}

int cmd_roundtrip(const std::string& input, const Key& key, std::istream& in, std::ostream& out) {
  const Image img = read_input(input, in);
  auto [writer, reader] = make_loopback(64 * 1024, 4093);

  std::exception_ptr send_failure;
  std::thread sender([&, w = std::move(writer)]() {
    try {
      send_image(*w, img, key);
    } catch (...) {
      send_failure = std::current_exception();
    }
    w->close();
  });

  std::optional<Image> received;
  std::exception_ptr recv_failure;
  try {
    received = recv_image(*reader, key);
  } catch (...) {
    recv_failure = std::current_exception();
  }
  reader->close();
  sender.join();
  if (send_failure) std::rethrow_exception(send_failure);
  if (recv_failure) std::rethrow_exception(recv_failure);
  if (!received) throw Error(ErrorKind::Truncation, "loopback closed before a frame arrived");

  const auto sent_bytes = image_bytes(img);
  const auto got_bytes = image_bytes(*received);
  if (image_width(img) == image_width(*received) && image_height(img) == image_height(*received) &&
      sent_bytes == got_bytes) {
    out << "OK\n";
    return kExitOk;
  }
  std::size_t differing = 0;
  std::size_t first = sent_bytes.size();
  for (std::size_t k = 0; k < std::min(sent_bytes.size(), got_bytes.size()); ++k) {
    if (sent_bytes[k] != got_bytes[k]) {
      ++differing;
      first = std::min(first, k);
    }
  }
  out << "MISMATCH: " << differing << " of " << sent_bytes.size() << " bytes differ";
  if (differing > 0) out << " (first at offset " << first << ")";
  if (sent_bytes.size() != got_bytes.size()) {
    out << "; sizes " << sent_bytes.size() << " vs " << got_bytes.size();
  }
  out << '\n';
  return kExitFailure;
}

int cmd_rc4_keystream(const std::string& key_hex, std::size_t count, std::ostream& out) {
  Rc4State state(Key::from_hex(key_hex));
  out << to_hex(keystream(state, count)) << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Streaming image filtering, adaptive binarization and RC4 image transport",
               "secvis"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string kernel_spec = "box5";
  bool direct = false;
  auto* filter = app.add_subcommand("filter", "Convolve an image with a 5x5 kernel");
  filter->add_option("input", input, "Input PGM/PPM ('-' for stdin)")->required();
  filter->add_option("output", output, "Output path ('-' for stdout)")->required();
  filter->add_option("--kernel", kernel_spec, "box5, identity or @file (26 integers)");
  filter->add_flag("--direct", direct, "Use the direct reference convolution");

  int stride = 1;
  bool invert = false;
  bool dump_threshold = false;
  auto* binarize_cmd = app.add_subcommand("binarize", "Adaptive mean-threshold binarization");
  binarize_cmd->add_option("input", input, "Input PGM/PPM ('-' for stdin)")->required();
  binarize_cmd->add_option("output", output, "Output PGM ('-' for stdout)")->required();
  binarize_cmd->add_option("--stride", stride, "Sampling stride for the mean")
      ->check(CLI::PositiveNumber);
  binarize_cmd->add_flag("--invert", invert, "Mark pixels below the threshold as foreground");
  binarize_cmd->add_flag("--dump-threshold", dump_threshold,
                         "Print per-channel thresholds, one per line");

  KeyOptions send_key;
  std::string to;
  std::vector<std::string> images;
  auto* send = app.add_subcommand("send", "Encrypt and send images as frames");
  send->add_option("--to", to, "host:port or '-' for stdout")->required();
  add_key_options(send, send_key);
  send->add_option("images", images, "Images to send in order")->required();

  KeyOptions recv_key;
  std::string listen;
  bool no_verify = false;
  auto* recv = app.add_subcommand("recv", "Receive and decrypt frames");
  recv->add_option("--listen", listen, "host:port or '-' for stdin")->required();
  add_key_options(recv, recv_key);
  recv->add_option("--out", output, "Output path; later frames get .N before the extension")
      ->required();
  recv->add_flag("--no-verify", no_verify, "Skip the checksum and keep whatever decrypts");

  KeyOptions roundtrip_key;
  auto* roundtrip = app.add_subcommand("roundtrip", "Send and receive over an in-memory link");
  add_key_options(roundtrip, roundtrip_key);
  roundtrip->add_option("image", input, "Image to send")->required();

  std::string keystream_hex;
  std::size_t count = 0;
  auto* rc4_cmd = app.add_subcommand("rc4-keystream", "Print the first bytes of an RC4 keystream");
  rc4_cmd->add_option("--key-hex", keystream_hex, "Key as hex digits")->required();
  rc4_cmd->add_option("--count", count, "Number of keystream bytes")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (*filter) return cmd_filter(input, output, kernel_spec, direct, in, out);
    if (*binarize_cmd) return cmd_binarize(input, output, stride, invert, dump_threshold, in, out);
    if (*send) return cmd_send(to, resolve_key(send_key), images, in, out);
    if (*recv) return cmd_recv(listen, resolve_key(recv_key), output, no_verify, in, out);
    if (*roundtrip) return cmd_roundtrip(input, resolve_key(roundtrip_key), in, out);
    if (*rc4_cmd) return cmd_rc4_keystream(keystream_hex, count, out);
  } catch (const Error& e) {
    err << "error: " << error_tag(e.kind()) << ": " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace secvis::cli
