#include "secvis/byte_stream.hpp"

#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>

#include "secvis/error.hpp"

namespace secvis {
namespace {

struct HostPort {
  std::string host;
  std::string port;
};

HostPort split_address(const std::string& address) {
  const auto colon = address.rfind(':');
  if (colon == std::string::npos || colon + 1 == address.size()) {
    throw Error(ErrorKind::InvalidArgument, "address '" + address + "' is not host:port");
  }
  return {address.substr(0, colon), address.substr(colon + 1)};
}

struct AddrInfo {
  addrinfo* head = nullptr;
  ~AddrInfo() {
    if (head) freeaddrinfo(head);
  }
};

void resolve(const std::string& address, bool passive, AddrInfo& out) {
  const HostPort hp = split_address(address);
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  const char* host = hp.host.empty() ? nullptr : hp.host.c_str();
  const int rc = getaddrinfo(host, hp.port.c_str(), &hints, &out.head);
  if (rc != 0) {
    throw Error(ErrorKind::Transport, "cannot resolve '" + address + "': " + gai_strerror(rc));
  }
}

}  // namespace

std::size_t read_fully(ByteReader& in, std::span<std::uint8_t> buf) {
  std::size_t got = 0;
  while (got < buf.size()) {
    const std::size_t n = in.read_some(buf.subspan(got));
    if (n == 0) break;
    got += n;
  }
  return got;
}

void write_all(ByteWriter& out, std::span<const std::uint8_t> buf) {
  std::size_t sent = 0;
  try {
    while (sent < buf.size()) {
      sent += out.write_some(buf.subspan(sent));
    }
    out.flush();
  } catch (const Error& e) {
    throw TransportError(e.what(), sent);
  }
}

// --- FdStream -------------------------------------------------------------

FdStream::FdStream(int fd, bool owned) : fd_(fd), owned_(owned) {}

FdStream::~FdStream() {
  if (owned_ && fd_ >= 0) ::close(fd_);
}

std::size_t FdStream::read_some(std::span<std::uint8_t> buf) {
  if (buf.empty()) return 0;
  while (true) {
    const ssize_t n = ::read(fd_, buf.data(), buf.size());
    if (n >= 0) return static_cast<std::size_t>(n);
    if (errno == EINTR) continue;
    throw Error(ErrorKind::Transport, std::string("read failed: ") + std::strerror(errno));
  }
}

std::size_t FdStream::write_some(std::span<const std::uint8_t> buf) {
  if (buf.empty()) return 0;
  while (true) {
    ssize_t n = ::send(fd_, buf.data(), buf.size(), MSG_NOSIGNAL);
    if (n < 0 && errno == ENOTSOCK) n = ::write(fd_, buf.data(), buf.size());
    if (n >= 0) return static_cast<std::size_t>(n);
    if (errno == EINTR) continue;
    throw Error(ErrorKind::Transport, std::string("write failed: ") + std::strerror(errno));
  }
}

void FdStream::shutdown_write() noexcept { ::shutdown(fd_, SHUT_WR); }

std::unique_ptr<FdStream> tcp_connect(const std::string& address) {
  AddrInfo info;
  resolve(address, false, info);
  int last_errno = 0;
  for (addrinfo* ai = info.head; ai; ai = ai->ai_next) {
    const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      last_errno = errno;
      continue;
    }
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      return std::make_unique<FdStream>(fd, true);
    }
    last_errno = errno;
    ::close(fd);
  }
  throw Error(ErrorKind::Transport,
              "cannot connect to '" + address + "': " + std::strerror(last_errno));
}

TcpListener::TcpListener(const std::string& address) {
  AddrInfo info;
  resolve(address, true, info);
  int last_errno = 0;
  for (addrinfo* ai = info.head; ai; ai = ai->ai_next) {
    const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      last_errno = errno;
      continue;
    }
    const int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 1) == 0) {
      fd_ = fd;
      break;
    }
    last_errno = errno;
    ::close(fd);
  }
  if (fd_ < 0) {
    throw Error(ErrorKind::Transport,
                "cannot listen on '" + address + "': " + std::strerror(last_errno));
  }
  sockaddr_storage bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  if (bound.ss_family == AF_INET) {
    port_ = ntohs(reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
  } else if (bound.ss_family == AF_INET6) {
    port_ = ntohs(reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port);
  }
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<FdStream> TcpListener::accept() {
  while (true) {
    const int fd = ::accept(fd_, nullptr, nullptr);
    if (fd >= 0) return std::make_unique<FdStream>(fd, true);
    if (errno == EINTR) continue;
    throw Error(ErrorKind::Transport, std::string("accept failed: ") + std::strerror(errno));
  }
}

// --- Loopback -------------------------------------------------------------

struct LoopbackChannel {
  std::mutex mutex;
  std::condition_variable changed;
  std::deque<std::uint8_t> buffer;
  std::size_t capacity;
  bool writer_closed = false;
  bool reader_closed = false;

  explicit LoopbackChannel(std::size_t cap) : capacity(std::max<std::size_t>(cap, 1)) {}
};

LoopbackWriter::LoopbackWriter(std::shared_ptr<LoopbackChannel> channel, std::size_t max_chunk)
    : channel_(std::move(channel)), max_chunk_(max_chunk) {}

LoopbackWriter::~LoopbackWriter() { close(); }

std::size_t LoopbackWriter::write_some(std::span<const std::uint8_t> buf) {
  if (buf.empty()) return 0;
  std::unique_lock lock(channel_->mutex);
  channel_->changed.wait(lock, [&] {
    return channel_->reader_closed || channel_->writer_closed ||
           channel_->buffer.size() < channel_->capacity;
  });
  if (channel_->reader_closed || channel_->writer_closed) {
    throw Error(ErrorKind::Transport, "loopback reader closed");
  }
  std::size_t n = std::min(buf.size(), channel_->capacity - channel_->buffer.size());
  if (max_chunk_ > 0) n = std::min(n, max_chunk_);
  channel_->buffer.insert(channel_->buffer.end(), buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(n));
  channel_->changed.notify_all();
  return n;
}

void LoopbackWriter::close() noexcept {
  std::lock_guard lock(channel_->mutex);
  channel_->writer_closed = true;
  channel_->changed.notify_all();
}

LoopbackReader::LoopbackReader(std::shared_ptr<LoopbackChannel> channel, std::size_t max_chunk)
    : channel_(std::move(channel)), max_chunk_(max_chunk) {}

LoopbackReader::~LoopbackReader() { close(); }

std::size_t LoopbackReader::read_some(std::span<std::uint8_t> buf) {
  if (buf.empty()) return 0;
  std::unique_lock lock(channel_->mutex);
  channel_->changed.wait(lock, [&] { return !channel_->buffer.empty() || channel_->writer_closed; });
  std::size_t n = std::min(buf.size(), channel_->buffer.size());
  if (max_chunk_ > 0) n = std::min(n, max_chunk_);
  std::copy_n(channel_->buffer.begin(), n, buf.begin());
  channel_->buffer.erase(channel_->buffer.begin(), channel_->buffer.begin() + static_cast<std::ptrdiff_t>(n));
  channel_->changed.notify_all();
  return n;
}

void LoopbackReader::close() noexcept {
  std::lock_guard lock(channel_->mutex);
  channel_->reader_closed = true;
  channel_->changed.notify_all();
}

Loopback make_loopback(std::size_t capacity, std::size_t max_chunk) {
  auto channel = std::make_shared<LoopbackChannel>(capacity);
  return {std::make_unique<LoopbackWriter>(channel, max_chunk),
          std::make_unique<LoopbackReader>(channel, max_chunk)};
}

}  // namespace secvis
