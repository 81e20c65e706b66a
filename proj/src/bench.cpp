#include "chaoscope/bench.hpp"

#include "chaoscope/error.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace chaoscope {

namespace {

// Frozen outputs of tests/oracles/tangent_oracles.hpp (1e7 iterations,
// 1e3/1e4 transient) for the canonical parameters.
constexpr double kHenonReference = 0.41917;
constexpr double kLorenzReference = 0.9066;

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::BadParams, what);
}

}  // namespace

std::string_view system_name(SystemKind kind) noexcept {
  switch (kind) {
    case SystemKind::Logistic: return "logistic";
    case SystemKind::Henon: return "henon";
    case SystemKind::Lorenz: return "lorenz";
    case SystemKind::Sine: return "sine";
  }
  return "unknown";
}

SystemKind parse_system(std::string_view name) {
  for (SystemKind k : {SystemKind::Logistic, SystemKind::Henon, SystemKind::Lorenz, SystemKind::Sine})
    if (system_name(k) == name) return k;
  throw Error(ErrorCode::BadParams, "unknown system '" + std::string(name) + "'");
}

SystemSpec SystemSpec::logistic(double r, double x0, Index n, Index skip) {
  return {SystemKind::Logistic, {{"r", r}}, n, {x0}, skip};
}

SystemSpec SystemSpec::henon(double a, double b, Index n, Index skip) {
  return {SystemKind::Henon, {{"a", a}, {"b", b}}, n, {0.0, 0.0}, skip};
}

SystemSpec SystemSpec::lorenz(Index n, double dt, Index skip) {
  return {SystemKind::Lorenz,
          {{"sigma", 10.0}, {"rho", 28.0}, {"beta", 8.0 / 3.0}, {"dt", dt}},
          n,
          {1.0, 1.0, 1.0},
          skip};
}

SystemSpec SystemSpec::sine(double frequency, double dt, Index n, double amplitude, double phase) {
  return {SystemKind::Sine,
          {{"frequency", frequency}, {"amplitude", amplitude}, {"phase", phase}, {"dt", dt}},
          n,
          {},
          0};
}

double SystemSpec::param(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end())
    throw Error(ErrorCode::BadParams,
                std::string(system_name(kind)) + " requires parameter '" + key + "'");
  return it->second;
}

void SystemSpec::validate() const {
  require(n >= 64, "sample count must be >= 64");
  require(transient_skip >= 0, "transient_skip must be >= 0");
  for (const auto& [key, value] : params) require(std::isfinite(value), key + " must be finite");
  for (double v : seed_state) require(std::isfinite(v), "seed state must be finite");
  switch (kind) {
    case SystemKind::Logistic:
      require(param("r") > 0.0 && param("r") <= 4.0, "logistic r must lie in (0, 4]");
      require(seed_state.size() == 1 && seed_state[0] >= 0.0 && seed_state[0] <= 1.0,
              "logistic seed must be one value in [0, 1]");
      break;
    case SystemKind::Henon:
      require(param("a") > 0.0 && param("a") <= 2.0, "henon a must lie in (0, 2]");
      require(std::abs(param("b")) < 1.0, "henon |b| must be < 1");
      require(seed_state.size() == 2, "henon seed must be (x0, y0)");
      break;
    case SystemKind::Lorenz:
      require(param("sigma") > 0.0 && param("rho") > 0.0 && param("beta") > 0.0,
              "lorenz sigma, rho, beta must be positive");
      require(param("dt") > 0.0 && param("dt") <= 0.05, "lorenz dt must lie in (0, 0.05]");
      require(seed_state.size() == 3, "lorenz seed must be (x0, y0, z0)");
      break;
    case SystemKind::Sine:
      require(param("frequency") > 0.0, "sine frequency must be positive");
      require(param("dt") > 0.0, "sine dt must be positive");
      require(param("amplitude") != 0.0, "sine amplitude must be non-zero");
      (void)param("phase");
      break;
  }
}

TimeSeries generate(const SystemSpec& spec) {
  spec.validate();
  const Index total = spec.n + spec.transient_skip;
  Eigen::VectorXd out(spec.n);
  const auto emit = [&](Index step, double value) {
    if (step >= spec.transient_skip) out[step - spec.transient_skip] = value;
  };

  double dt = 1.0;
  switch (spec.kind) {
    case SystemKind::Logistic: {
      const double r = spec.param("r");
      double x = spec.seed_state[0];
      for (Index i = 0; i < total; ++i) {
        emit(i, x);
        x = r * x * (1.0 - x);
      }
      break;
    }
    case SystemKind::Henon: {
      const double a = spec.param("a"), b = spec.param("b");
      double x = spec.seed_state[0], y = spec.seed_state[1];
      for (Index i = 0; i < total; ++i) {
        emit(i, x);
        const double xn = 1.0 - a * x * x + y;
        y = b * x;
        x = xn;
      }
      break;
    }
    case SystemKind::Lorenz: {
      const double sigma = spec.param("sigma"), rho = spec.param("rho"), beta = spec.param("beta");
      dt = spec.param("dt");
      using State = std::array<double, 3>;
      const auto f = [&](const State& s) {
        return State{sigma * (s[1] - s[0]), s[0] * (rho - s[2]) - s[1], s[0] * s[1] - beta * s[2]};
      };
      const auto axpy = [](const State& s, double h, const State& k) {
        return State{s[0] + h * k[0], s[1] + h * k[1], s[2] + h * k[2]};
      };
      State s{spec.seed_state[0], spec.seed_state[1], spec.seed_state[2]};
      for (Index i = 0; i < total; ++i) {
        emit(i, s[0]);
        const State k1 = f(s);
        const State k2 = f(axpy(s, 0.5 * dt, k1));
        const State k3 = f(axpy(s, 0.5 * dt, k2));
        const State k4 = f(axpy(s, dt, k3));
        for (int c = 0; c < 3; ++c) s[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        if (!std::isfinite(s[0]) || !std::isfinite(s[1]) || !std::isfinite(s[2]))
          throw Error(ErrorCode::BadParams, "lorenz integration diverged; reduce dt");
      }
      break;
    }
    case SystemKind::Sine: {
      const double f = spec.param("frequency"), amp = spec.param("amplitude");
      const double phase = spec.param("phase");
      dt = spec.param("dt");
      for (Index i = 0; i < total; ++i)
        emit(i, amp * std::sin(2.0 * std::numbers::pi * f * static_cast<double>(i) * dt + phase));
      break;
    }
  }
  return TimeSeries(std::move(out), dt, std::string(system_name(spec.kind)));
}

ReferenceExponent reference_lle(const SystemSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case SystemKind::Logistic:
      if (near(spec.param("r"), 4.0)) return {std::numbers::ln2, 0.10};
      break;
    case SystemKind::Henon:
      if (near(spec.param("a"), 1.4) && near(spec.param("b"), 0.3)) return {kHenonReference, 0.10};
      break;
    case SystemKind::Lorenz:
      if (near(spec.param("sigma"), 10.0) && near(spec.param("rho"), 28.0) &&
          near(spec.param("beta"), 8.0 / 3.0))
        return {kLorenzReference, 0.10};
      break;
    case SystemKind::Sine:
      break;
  }
  throw Error(ErrorCode::NoReference,
              "no registered reference exponent for " + std::string(system_name(spec.kind)) +
                  " with these parameters");
}

}  // namespace chaoscope
