#include "chaoscope/error.hpp"

namespace chaoscope {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::InvalidSample: return "InvalidSample";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::NoNeighbor: return "NoNeighbor";
    case ErrorCode::DegenerateNeighbors: return "DegenerateNeighbors";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::UnknownWavelet: return "UnknownWavelet";
    case ErrorCode::InsufficientEvolution: return "InsufficientEvolution";
    case ErrorCode::NoUsableReference: return "NoUsableReference";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::UnitsError: return "UnitsError";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::NoReference: return "NoReference";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput:
    case ErrorCode::ParseError:
    case ErrorCode::RangeError:
    case ErrorCode::InvalidSample:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& what,
             std::optional<std::size_t> position)
    : std::runtime_error(std::string(error_name(code)) + ": " + what),
      code_(code),
      position_(position) {}

}  // namespace chaoscope
