#include "sgmbo/error.hpp"

namespace sgmbo {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::IsolatedNode: return "IsolatedNode";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::AllZeroSpectrum: return "AllZeroSpectrum";
    case ErrorCode::DegenerateEigenvector: return "DegenerateEigenvector";
    case ErrorCode::EmptyCluster: return "EmptyCluster";
    case ErrorCode::DegenerateImage: return "DegenerateImage";
    case ErrorCode::NonPositivePrice: return "NonPositivePrice";
    case ErrorCode::ZeroVarianceRow: return "ZeroVarianceRow";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace sgmbo
