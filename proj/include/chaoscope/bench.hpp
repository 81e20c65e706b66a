#pragma once

#include "chaoscope/series.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace chaoscope {

enum class SystemKind { Logistic, Henon, Lorenz, Sine };

std::string_view system_name(SystemKind kind) noexcept;
SystemKind parse_system(std::string_view name);

/// A synthetic dynamical system with its sampling. Parameter names:
///   Logistic: r                          seed_state {x0}
///   Henon:    a, b                       seed_state {x0, y0}
///   Lorenz:   sigma, rho, beta, dt       seed_state {x0, y0, z0}
///   Sine:     frequency, amplitude, phase, dt   (no seed_state)
struct SystemSpec {
  SystemKind kind = SystemKind::Logistic;
  std::map<std::string, double> params;
  Index n = 4000;
  std::vector<double> seed_state;
  Index transient_skip = 0;

  /// Canonical parameterizations.
  static SystemSpec logistic(double r = 4.0, double x0 = 0.2, Index n = 4000, Index skip = 0);
  static SystemSpec henon(double a = 1.4, double b = 0.3, Index n = 4000, Index skip = 0);
  static SystemSpec lorenz(Index n = 4000, double dt = 0.01, Index skip = 1000);
  static SystemSpec sine(double frequency, double dt, Index n, double amplitude = 1.0,
                         double phase = 0.0);

  double param(const std::string& key) const;
  void validate() const;
};

/// Emits the first observable (x) after discarding transient_skip samples.
TimeSeries generate(const SystemSpec& spec);

struct ReferenceExponent {
  double value = 0.0;      // nats per time unit of the generated series
  double tolerance = 0.0;  // relative
};

/// Known largest exponent for the registered chaotic systems. Henon and
/// Lorenz values were produced by tangent-space oracles (tests/oracles) and
/// frozen here; only the canonical parameters are registered.
ReferenceExponent reference_lle(const SystemSpec& spec);

}  // namespace chaoscope
