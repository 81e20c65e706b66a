#pragma once

#include "chaoscope/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chaoscope {

enum class Method { Wolf, Rosenstein, MazharEslam };

std::string_view method_name(Method m) noexcept;  // "wolf", "rosenstein", "mazhar-eslam"
std::optional<Method> parse_method(std::string_view name);

/// Parameters needed to reproduce a run.
struct ParamEcho {
  std::map<std::string, double> numbers;
  std::map<std::string, std::string> text;
};

/// A largest-exponent value in nats per time unit of the input series,
/// with the method-specific diagnostics that produced it.
template <class Diagnostics>
struct ExponentEstimate {
  double lambda = 0.0;
  Method method = Method::Wolf;
  ParamEcho params;
  Diagnostics diagnostics;
};

}  // namespace chaoscope
