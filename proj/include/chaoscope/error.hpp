#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chaoscope {

enum class ErrorCode {
  EmptyInput,
  ParseError,
  RangeError,
  InvalidSample,
  TooShort,
  NoNeighbor,
  DegenerateNeighbors,
  DegenerateSpectrum,
  UnknownWavelet,
  InsufficientEvolution,
  NoUsableReference,
  EmptySet,
  EmptySubset,
  UnitsError,
  BadParams,
  NoReference,
};

/// Stable identifier for an error code, e.g. "DegenerateSpectrum".
std::string_view error_name(ErrorCode code) noexcept;

/// True for errors raised while reading input (as opposed to estimating).
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> position = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

  /// Line number (parse errors) or sample index (range errors), when known.
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

}  // namespace chaoscope
