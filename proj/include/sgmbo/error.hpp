#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sgmbo {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  LengthMismatch,
  IsolatedNode,
  NoConvergence,
  AllZeroSpectrum,
  DegenerateEigenvector,
  EmptyCluster,
  DegenerateImage,
  NonPositivePrice,
  ZeroVarianceRow,
  EmptyMatrix,
  Io,
  Parse,
};

const char* to_string(ErrorCode code) noexcept;

// All library failures are reported through this type. `index` carries the
// offending node/row/iteration count where the error names one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::size_t index = npos)
      : std::runtime_error(what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t index() const noexcept { return index_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  ErrorCode code_;
  std::size_t index_;
};

}  // namespace sgmbo
