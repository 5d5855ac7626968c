#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>

namespace secvis {

// Reliable ordered byte source. read_some blocks until at least one byte is
// available and returns 0 only at end of stream.
class ByteReader {
 public:
  virtual ~ByteReader() = default;
  virtual std::size_t read_some(std::span<std::uint8_t> buf) = 0;
};

// Reliable ordered byte sink. write_some may accept fewer bytes than
// offered; it throws Error(Transport) once the channel is broken.
class ByteWriter {
 public:
  virtual ~ByteWriter() = default;
  virtual std::size_t write_some(std::span<const std::uint8_t> buf) = 0;
  virtual void flush() {}
};

// Reads until `buf` is full or the stream ends; returns bytes read.
std::size_t read_fully(ByteReader& in, std::span<std::uint8_t> buf);

// Writes all of `buf`. On failure throws TransportError carrying the number
// of bytes of `buf` that were accepted.
void write_all(ByteWriter& out, std::span<const std::uint8_t> buf);

// Owned or borrowed POSIX file descriptor (pipes, stdin/stdout, sockets).
class FdStream final : public ByteReader, public ByteWriter {
 public:
  FdStream(int fd, bool owned);
  ~FdStream() override;
  FdStream(const FdStream&) = delete;
  FdStream& operator=(const FdStream&) = delete;

  int fd() const noexcept { return fd_; }

  std::size_t read_some(std::span<std::uint8_t> buf) override;
  std::size_t write_some(std::span<const std::uint8_t> buf) override;
  // Half-closes the write side of a socket; no-op for other descriptors.
  void shutdown_write() noexcept;

 private:
  int fd_;
  bool owned_;
};

// "host:port" client connection.
std::unique_ptr<FdStream> tcp_connect(const std::string& address);

// Listening socket on "host:port". Port 0 picks a free port.
class TcpListener {
 public:
  explicit TcpListener(const std::string& address);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  int port() const noexcept { return port_; }
  std::unique_ptr<FdStream> accept();

 private:
  int fd_ = -1;
  int port_ = 0;
};

// In-memory pipe with a bounded buffer. Closing the writer makes the reader
// see end of stream once drained; closing the reader breaks the writer.
// Both ends may live on different threads.
struct LoopbackChannel;

class LoopbackWriter final : public ByteWriter {
 public:
  explicit LoopbackWriter(std::shared_ptr<LoopbackChannel> channel, std::size_t max_chunk = 0);
  ~LoopbackWriter() override;

  std::size_t write_some(std::span<const std::uint8_t> buf) override;
  void close() noexcept;

 private:
  std::shared_ptr<LoopbackChannel> channel_;
  std::size_t max_chunk_;
};

class LoopbackReader final : public ByteReader {
 public:
  explicit LoopbackReader(std::shared_ptr<LoopbackChannel> channel, std::size_t max_chunk = 0);
  ~LoopbackReader() override;

  std::size_t read_some(std::span<std::uint8_t> buf) override;
  void close() noexcept;

 private:
  std::shared_ptr<LoopbackChannel> channel_;
  std::size_t max_chunk_;
};

struct Loopback {
  std::unique_ptr<LoopbackWriter> writer;
  std::unique_ptr<LoopbackReader> reader;
};

// `capacity` bounds buffered bytes (the writer blocks when full).
// `max_chunk` > 0 caps bytes moved per read_some/write_some call, to
// exercise arbitrary chunking.
Loopback make_loopback(std::size_t capacity = 64 * 1024, std::size_t max_chunk = 0);

}  // namespace secvis
