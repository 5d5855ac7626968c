#include "secvis/error.hpp"

namespace secvis {

std::string_view error_tag(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::Io: return "io";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::EmptyImage: return "empty-image";
    case ErrorKind::Key: return "key";
    case ErrorKind::Protocol: return "protocol";
    case ErrorKind::Version: return "version";
    case ErrorKind::Integrity: return "integrity";
    case ErrorKind::Transport: return "transport";
    case ErrorKind::FrameTooLarge: return "frame-too-large";
    case ErrorKind::InvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

TruncationError::TruncationError(const std::string& what, std::size_t expected,
                                 std::size_t actual)
    : Error(ErrorKind::Truncation, what + ": expected " + std::to_string(expected) +
                                       " bytes, got " + std::to_string(actual)),
      expected_(expected),
      actual_(actual) {}

TransportError::TransportError(const std::string& what, std::size_t bytes_written)
    : Error(ErrorKind::Transport,
            what + " after " + std::to_string(bytes_written) + " bytes written"),
      bytes_written_(bytes_written) {}

}  // namespace secvis
