#pragma once

#include <stdexcept>
#include <string>

namespace wildrisk {

enum class ErrorKind {
  kInvalidInput,
  kOutOfBounds,
  kMissingLayer,
  kInconsistentRaster,
  kCatalog,
  kMalformedSeries,
  kInvalidSample,
  kCoverage,
  kTopology,
  kGeometry,
  kDegenerateNormalization,
  kConfig,
  kIo,
  kInvariant,
};

const char* to_string(ErrorKind kind);

/// Every recoverable failure in the library is reported as an Error carrying
/// its kind, so callers (the CLI in particular) can map it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

}  // namespace wildrisk
