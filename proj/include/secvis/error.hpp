#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace secvis {

enum class ErrorKind {
  Parse,
  Unsupported,
  Truncation,
  Io,
  Dimension,
  EmptyImage,
  Key,
  Protocol,
  Version,
  Integrity,
  Transport,
  FrameTooLarge,
  InvalidArgument,
};

// Stable, greppable tag for each kind ("parse", "integrity", ...).
std::string_view error_tag(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when a byte source ends before a declared length is satisfied.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, std::size_t expected, std::size_t actual);

  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

// Raised by byte-stream writers when the channel breaks.
class TransportError : public Error {
 public:
  TransportError(const std::string& what, std::size_t bytes_written);

  std::size_t bytes_written() const noexcept { return bytes_written_; }

 private:
  std::size_t bytes_written_;
};

}  // namespace secvis
