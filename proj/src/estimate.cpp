#include "chaoscope/estimate.hpp"

namespace chaoscope {

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::Wolf: return "wolf";
    case Method::Rosenstein: return "rosenstein";
    case Method::MazharEslam: return "mazhar-eslam";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "wolf") return Method::Wolf;
  if (name == "rosenstein") return Method::Rosenstein;
  if (name == "mazhar-eslam" || name == "mazhar_eslam" || name == "me") return Method::MazharEslam;
  return std::nullopt;
}

}  // namespace chaoscope
