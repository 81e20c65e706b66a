#include "chaoscope/cli.hpp"

#include "chaoscope/bench.hpp"
#include "chaoscope/error.hpp"
#include "chaoscope/hrv.hpp"
#include "chaoscope/mazhar_eslam.hpp"
#include "chaoscope/rosenstein.hpp"
#include "chaoscope/series.hpp"
#include "chaoscope/spectral.hpp"
#include "chaoscope/wolf.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace chaoscope {
namespace {

using nlohmann::json;

/// Failure outside the library's error taxonomy (missing file, bad flag value).
struct UsageError : std::runtime_error {
  UsageError(std::string name, const std::string& msg)
      : std::runtime_error(msg), name(std::move(name)) {}
  std::string name;
};

struct InputOptions {
  std::string path;
  std::string format = "rr";
  std::string time_base = "per-beat";
  double dt = 1.0;
};

struct EstimatorOptions {
  std::string method = "all";
  int m = 10;
  int tau = 1;
  std::string wavelet = "db4";
  Index stride = 1;
  Index horizon = 0;
  std::optional<Index> fit_lo;
  std::optional<Index> fit_hi;
  std::string policy = "full-horizon";
  Index evolve_steps = 3;
  double eps_max_frac = 0.10;
  double eps_min_frac = 0.001;
  double theta_max_rad = 0.3;
  std::string replacement = "nearest-in-cone";
  std::string local_mode = "per-reference";
  std::string diag_dir;
  std::string format = "json";
};

struct LoadedInput {
  std::optional<TimeSeries> ts;
  std::optional<RRSeries> rr;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("FileNotFound", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("WriteFailed", "cannot write '" + path.string() + "'");
  out << text;
}

std::optional<double> to_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

/// Plain series: one value per line, or `t,x` rows (a non-numeric first row
/// is taken as a header). With a time column, dt is its first increment.
TimeSeries parse_series_text(std::string_view text, double dt_flag, const std::string& label) {
  std::vector<double> t, x;
  std::size_t line_no = 0;
  bool first = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    const bool header = first && !to_double(line.substr(0, comma));
    first = false;
    if (header) continue;
    if (comma == std::string_view::npos) {
      const auto v = to_double(line);
      if (!v) throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": not a number", line_no);
      x.push_back(*v);
    } else {
      const auto a = to_double(line.substr(0, comma)), b = to_double(line.substr(comma + 1));
      if (!a || !b) throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected t,x", line_no);
      t.push_back(*a);
      x.push_back(*b);
    }
  }
  if (x.empty()) throw Error(ErrorCode::EmptyInput, "no samples in input");
  const double dt = t.size() >= 2 ? t[1] - t[0] : dt_flag;
  return TimeSeries(x, dt, label);
}

LoadedInput load_input(const InputOptions& in) {
  const std::string text = read_file(in.path);
  LoadedInput out;
  if (in.format == "rr") {
    out.rr = parse_rr_file(text, in.path);
    out.ts = rr_to_timeseries(*out.rr, in.time_base == "mean-rr" ? TimeBase::MeanRRSeconds
                                                                   : TimeBase::PerBeat);
  } else {
    out.ts = parse_series_text(text, in.dt, in.path);
  }
  return out;
}

json echo_json(const ParamEcho& echo) {
  json j = json::object();
  for (const auto& [k, v] : echo.numbers) j[k] = v;
  for (const auto& [k, v] : echo.text) j[k] = v;
  return j;
}

WolfParams wolf_params(const EstimatorOptions& o) {
  WolfParams p;
  p.evolve_steps = o.evolve_steps;
  p.eps_max_frac = o.eps_max_frac;
  p.eps_min_frac = o.eps_min_frac;
  p.theta_max_rad = o.theta_max_rad;
  p.rule = o.replacement == "min-angle" ? ReplacementRule::MinAngle : ReplacementRule::NearestInCone;
  p.validate();
  return p;
}

RosensteinOptions rosenstein_options(const EstimatorOptions& o) {
  RosensteinOptions r;
  if (o.fit_lo || o.fit_hi) {
    if (!o.fit_lo || !o.fit_hi) throw UsageError("BadParams", "--fit-lo and --fit-hi go together");
    r.fit_range = std::pair<Index, Index>{*o.fit_lo, *o.fit_hi};
  }
  r.policy = o.policy == "drop-on-exit" ? PairPolicy::DropOnExit : PairPolicy::FullHorizon;
  return r;
}

std::vector<Method> selected_methods(const std::string& name) {
  if (name == "all") return {Method::MazharEslam, Method::Wolf, Method::Rosenstein};
  const auto m = parse_method(name);
  if (!m) throw UsageError("BadParams", "unknown method '" + name + "'");
  return {*m};
}

std::filesystem::path diag_path(const EstimatorOptions& o, std::string_view file) {
  std::filesystem::create_directories(o.diag_dir);
  return std::filesystem::path(o.diag_dir) / file;
}

json run_method(Method method, const TimeSeries& ts, const EstimatorOptions& o) {
  const EmbeddingConfig cfg{o.m, o.tau};
  json j;
  j["method"] = std::string(method_name(method));
  switch (method) {
    case Method::Wolf: {
      const MeanPeriod period = mean_period_fft(ts);
      const auto est = wolf_lle(embed(ts, cfg), wolf_params(o), period.samples);
      ParamEcho echo = est.params;
      echo.text["mean_period"] = "fft";
      j["lambda"] = est.lambda;
      j["params"] = echo_json(echo);
      const WolfTrace& tr = est.diagnostics;
      j["diagnostics"] = {{"events", tr.M()},
                          {"replacements", tr.replacements},
                          {"restarts", tr.restarts},
                          {"eps_min", tr.eps_min},
                          {"eps_max", tr.eps_max},
                          {"mean_period_seconds", period.seconds}};
      if (!o.diag_dir.empty()) {
        const auto p = diag_path(o, "wolf_trace.csv");
        write_file(p, wolf_trace_csv(tr));
        j["diagnostics"]["path"] = p.string();
      }
      break;
    }
    case Method::Rosenstein: {
      const auto est = rosenstein_lle(ts, cfg, o.horizon, rosenstein_options(o));
      const auto& d = est.diagnostics;
      j["lambda"] = est.lambda;
      j["params"] = echo_json(est.params);
      j["diagnostics"] = {{"pairs", d.curve.pairs.size()},
                          {"fit_intercept", d.fit.intercept},
                          {"fit_residual_rms", d.fit.residual_rms},
                          {"mean_period_seconds", d.mean_period.seconds}};
      if (!o.diag_dir.empty()) {
        const auto p = diag_path(o, "divergence_curve.csv");
        write_file(p, divergence_curve_csv(d.curve));
        j["diagnostics"]["path"] = p.string();
      }
      break;
    }
    case Method::MazharEslam: {
      MazharEslamOptions me;
      me.stride = o.stride;
      me.horizon = o.horizon;
      me.wavelet = o.wavelet;
      me.mode = o.local_mode == "per-step" ? LocalExponentMode::PerStep
                                           : LocalExponentMode::PerReference;
      const auto est = mazhar_eslam_lle(ts, cfg, wolf_params(o), me);
      const auto& d = est.diagnostics;
      j["lambda"] = est.lambda;
      j["params"] = echo_json(est.params);
      j["diagnostics"] = {{"local_exponents", d.local.j()},
                          {"skipped_no_neighbor", d.local.skipped_no_neighbor},
                          {"skipped_no_events", d.local.skipped_no_events},
                          {"mean_period_seconds", d.mean_period.seconds},
                          {"dwt_levels", d.decomposition.levels},
                          {"dwt_samples_used", d.decomposition.samples_used},
                          {"dwt_truncated", d.decomposition.truncated()},
                          {"eps_min", d.eps_min},
                          {"eps_max", d.eps_max}};
      if (!o.diag_dir.empty()) {
        const auto p = diag_path(o, "local_exponents.csv");
        write_file(p, local_exponents_csv(d.local));
        j["diagnostics"]["path"] = p.string();
      }
      break;
    }
  }
  return j;
}

json run_options_echo(const InputOptions& in, const EstimatorOptions& o) {
  json j = {{"input", in.path},
            {"input_format", in.format},
            {"method", o.method},
            {"m", o.m},
            {"tau", o.tau},
            {"wavelet", o.wavelet},
            {"stride", o.stride},
            {"horizon", o.horizon},
            {"policy", o.policy},
            {"evolve_steps", o.evolve_steps},
            {"eps_max_frac", o.eps_max_frac},
            {"eps_min_frac", o.eps_min_frac},
            {"theta_max_rad", o.theta_max_rad},
            {"replacement", o.replacement},
            {"local_mode", o.local_mode}};
  if (in.format == "rr")
    j["time_base"] = in.time_base;
  else
    j["dt"] = in.dt;
  if (o.fit_lo) j["fit_lo"] = *o.fit_lo;
  if (o.fit_hi) j["fit_hi"] = *o.fit_hi;
  if (!o.diag_dir.empty()) j["diag_dir"] = o.diag_dir;
  return j;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_analyze(const InputOptions& in, const EstimatorOptions& o, std::ostream& out) {
  const LoadedInput data = load_input(in);
  const TimeSeries& ts = *data.ts;

  json report;
  report["command"] = "analyze";
  report["params_echo"] = run_options_echo(in, o);
  report["input"] = {{"samples", ts.size()},
                     {"dt", ts.dt()},
                     {"unit", ts.unit() == TimeUnit::Seconds ? "seconds" : "beats"}};

  json estimates = json::array();
  for (Method m : selected_methods(o.method)) {
    json e = run_method(m, ts, o);
    if (data.rr) e["classification"] = std::string(hrv_class_name(classify(e["lambda"].get<double>(), m)));
    estimates.push_back(std::move(e));
  }
  report["estimates"] = estimates;

  if (data.rr) {
    report["rmssd"] = data.rr->size() >= 2 ? json(rmssd(*data.rr)) : json(nullptr);
    try {
      const BandPowerReport b = band_powers(ts);
      report["band_powers"] = {{"vlf", b.vlf}, {"lf", b.lf}, {"hf", b.hf},
                               {"lf_hf_ratio", b.lf_hf_ratio ? json(*b.lf_hf_ratio) : json(nullptr)}};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnitsError && e.code() != ErrorCode::TooShort) throw;
      report["band_powers"] = nullptr;
      report["band_powers_unavailable"] = std::string(e.name());
    }
  }

  if (o.format == "csv") {
    out << "method,lambda,classification\n";
    for (const json& e : estimates)
      out << e["method"].get<std::string>() << ',' << fmt(e["lambda"].get<double>()) << ','
          << (e.contains("classification") ? e["classification"].get<std::string>() : "") << '\n';
  } else {
    out << report.dump() << '\n';
  }
  return kExitOk;
}

int cmd_diverge(const InputOptions& in, const EstimatorOptions& o, std::ostream& out,
                std::ostream& err) {
  const LoadedInput data = load_input(in);
  const auto est = rosenstein_lle(*data.ts, {o.m, o.tau}, o.horizon, rosenstein_options(o));
  out << divergence_curve_csv(est.diagnostics.curve);
  err << "slope " << fmt(est.lambda) << " over [" << est.diagnostics.fit.lo << ", "
      << est.diagnostics.fit.hi << "]\n";
  return kExitOk;
}

int cmd_cohort(const std::string& path, double optimum, const std::string& format,
               std::ostream& out) {
  const auto records = parse_cohort_csv(read_file(path));

  std::vector<std::string> conditions;
  for (const CohortRecord& r : records)
    if (!r.label.healthy && !r.label.condition.empty() &&
        std::find(conditions.begin(), conditions.end(), r.label.condition) == conditions.end())
      conditions.push_back(r.label.condition);
  std::sort(conditions.begin(), conditions.end());

  struct Row {
    std::string method, subset;
    CohortStats stats;
  };
  std::vector<Row> rows;
  const auto add = [&](Method m, const std::string& subset, const LabelFilter& f) {
    try {
      rows.push_back({std::string(method_name(m)), subset, cohort_stats(records, m, f, optimum)});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptySubset) throw;
    }
  };
  for (Method m : {Method::MazharEslam, Method::Wolf, Method::Rosenstein}) {
    add(m, "healthy", {LabelFilter::Kind::Healthy, {}});
    add(m, "patient", {LabelFilter::Kind::Patient, {}});
    for (const std::string& c : conditions) add(m, "patient:" + c, {LabelFilter::Kind::Patient, c});
  }

  if (format == "csv") {
    out << "method,subset,count,mean,mean_error,accuracy\n";
    for (const Row& r : rows)
      out << r.method << ',' << r.subset << ',' << r.stats.count << ',' << fmt(r.stats.mean) << ','
          << fmt(r.stats.mean_error) << ',' << fmt(r.stats.accuracy) << '\n';
    return kExitOk;
  }
  json report;
  report["command"] = "cohort";
  report["params_echo"] = {{"input", path}, {"optimum", optimum}};
  report["records"] = records.size();
  json methods = json::object();
  for (const Row& r : rows)
    methods[r.method][r.subset] = {{"count", r.stats.count},
                                   {"mean", r.stats.mean},
                                   {"mean_error", r.stats.mean_error},
                                   {"accuracy", r.stats.accuracy}};
  report["methods"] = methods;
  out << report.dump() << '\n';
  return kExitOk;
}

struct SynthOptions {
  std::string system = "logistic";
  Index n = 4000;
  std::optional<double> r, x0, a, b, dt, frequency, amplitude, phase, sigma, rho, beta;
  std::optional<Index> skip;
  std::string format = "rr";
  std::string output;
};

int cmd_synth(const SynthOptions& o, std::ostream& out) {
  SystemSpec spec;
  switch (parse_system(o.system)) {
    case SystemKind::Logistic:
      spec = SystemSpec::logistic(o.r.value_or(4.0), o.x0.value_or(0.2), o.n, o.skip.value_or(0));
      break;
    case SystemKind::Henon:
      spec = SystemSpec::henon(o.a.value_or(1.4), o.b.value_or(0.3), o.n, o.skip.value_or(0));
      break;
    case SystemKind::Lorenz:
      spec = SystemSpec::lorenz(o.n, o.dt.value_or(0.01), o.skip.value_or(1000));
      if (o.sigma) spec.params["sigma"] = *o.sigma;
      if (o.rho) spec.params["rho"] = *o.rho;
      if (o.beta) spec.params["beta"] = *o.beta;
      break;
    case SystemKind::Sine:
      spec = SystemSpec::sine(o.frequency.value_or(0.1), o.dt.value_or(1.0), o.n,
                              o.amplitude.value_or(1.0), o.phase.value_or(0.0));
      break;
  }
  const TimeSeries ts = generate(spec);

  std::string text;
  if (o.format == "csv") {
    text = "t,x\n";
    for (Index i = 0; i < ts.size(); ++i)
      text += fmt(static_cast<double>(i) * ts.dt()) + "," + fmt(ts[i]) + "\n";
  } else {
    // Map the observable onto 400..1200 ms so it passes the RR gate.
    const double lo = ts.samples().minCoeff(), hi = ts.samples().maxCoeff();
    if (!(hi > lo)) throw Error(ErrorCode::BadParams, "constant series cannot be scaled to RR range");
    const double scale = 0.8 / (hi - lo);
    const TimeSeries rr_ts = ts.affine(scale, 0.4 - lo * scale);
    std::vector<double> v(rr_ts.samples().data(), rr_ts.samples().data() + rr_ts.size());
    text = serialize_rr(RRSeries(std::move(v)));
  }
  if (o.output.empty())
    out << text;
  else
    write_file(o.output, text);
  return kExitOk;
}

void add_input_flags(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("input", in.path, "Input file")->required();
  cmd->add_option("--input-format", in.format, "rr (milliseconds per line) or series (values or t,x)")
      ->check(CLI::IsMember({"rr", "series"}));
  cmd->add_option("--time-base", in.time_base, "RR time base")
      ->check(CLI::IsMember({"per-beat", "mean-rr"}));
  cmd->add_option("--dt", in.dt, "Sampling step for series input without a time column")
      ->check(CLI::PositiveNumber);
}

void add_estimator_flags(CLI::App* cmd, EstimatorOptions& o) {
  cmd->add_option("--m", o.m, "Embedding dimension")->check(CLI::Range(1, 1000));
  cmd->add_option("--tau", o.tau, "Embedding lag")->check(CLI::Range(1, 100000));
  cmd->add_option("--horizon", o.horizon, "Evolution horizon in samples (0: N/10)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--fit-lo", o.fit_lo, "First divergence-curve step in the slope fit");
  cmd->add_option("--fit-hi", o.fit_hi, "Last divergence-curve step in the slope fit");
  cmd->add_option("--policy", o.policy, "Divergence pair policy")
      ->check(CLI::IsMember({"full-horizon", "drop-on-exit"}));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Largest Lyapunov exponent estimation and HRV metrics"};
  app.name("chaoscope");
  app.require_subcommand(1);

  InputOptions in;
  EstimatorOptions est;
  SynthOptions synth;
  std::string cohort_path, cohort_format = "json";
  double optimum = kDefaultOptimum;

  auto* analyze = app.add_subcommand("analyze", "Estimate the largest exponent of a series");
  add_input_flags(analyze, in);
  add_estimator_flags(analyze, est);
  analyze->add_option("--method", est.method, "wolf, rosenstein, mazhar-eslam or all")
      ->check(CLI::IsMember({"wolf", "rosenstein", "mazhar-eslam", "all"}));
  analyze->add_option("--wavelet", est.wavelet, "haar or db4");
  analyze->add_option("--stride", est.stride, "Reference stride for mazhar-eslam")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--evolve-steps", est.evolve_steps, "Wolf evolution interval")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--eps-max", est.eps_max_frac, "Wolf shell outer radius (fraction of diameter)");
  analyze->add_option("--eps-min", est.eps_min_frac, "Wolf shell inner radius (fraction of diameter)");
  analyze->add_option("--theta-max", est.theta_max_rad, "Wolf angular cutoff in radians");
  analyze->add_option("--replacement", est.replacement, "Wolf replacement ranking")
      ->check(CLI::IsMember({"nearest-in-cone", "min-angle"}));
  analyze->add_option("--local-mode", est.local_mode, "mazhar-eslam local exponents")
      ->check(CLI::IsMember({"per-reference", "per-step"}));
  analyze->add_option("--diag-dir", est.diag_dir, "Directory for diagnostic CSV files");
  analyze->add_option("--format", est.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* diverge = app.add_subcommand("diverge", "Print the divergence curve as CSV");
  add_input_flags(diverge, in);
  add_estimator_flags(diverge, est);

  auto* cohort = app.add_subcommand("cohort", "Summarize a cohort CSV per method");
  cohort->add_option("input", cohort_path, "Cohort CSV")->required();
  cohort->add_option("--optimum", optimum, "Reference exponent for error and accuracy");
  cohort->add_option("--format", cohort_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* syn = app.add_subcommand("synth", "Generate a benchmark series");
  syn->add_option("--system", synth.system, "logistic, henon, lorenz or sine");
  syn->add_option("--n", synth.n, "Samples to emit");
  syn->add_option("--r", synth.r);
  syn->add_option("--x0", synth.x0);
  syn->add_option("--a", synth.a);
  syn->add_option("--b", synth.b);
  syn->add_option("--sigma", synth.sigma);
  syn->add_option("--rho", synth.rho);
  syn->add_option("--beta", synth.beta);
  syn->add_option("--dt", synth.dt);
  syn->add_option("--frequency", synth.frequency);
  syn->add_option("--amplitude", synth.amplitude);
  syn->add_option("--phase", synth.phase);
  syn->add_option("--skip", synth.skip, "Transient samples to discard");
  syn->add_option("--format", synth.format, "rr (milliseconds) or csv (t,x)")
      ->check(CLI::IsMember({"rr", "csv"}));
  syn->add_option("--output", synth.output, "Write to a file instead of standard output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "UsageError: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (*analyze) return cmd_analyze(in, est, out);
    if (*diverge) return cmd_diverge(in, est, out, err);
    if (*cohort) return cmd_cohort(cohort_path, optimum, cohort_format, out);
    return cmd_synth(synth, out);
  } catch (const UsageError& e) {
    err << e.name << ": " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << e.what() << '\n';
    const bool input = is_input_error(e.code()) || e.code() == ErrorCode::BadParams ||
                       e.code() == ErrorCode::UnknownWavelet;
    return input ? kExitInput : kExitEstimation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "WriteFailed: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace chaoscope
