// Command-line front end: success-probability sweeps, image recovery
// from coded diffraction patterns, data generation, pattern moment
// checks, regularity diagnostics, and FFT-unit calibration.
//
// Exit codes: 0 success, 1 usage error (also: pattern not admissible in
// check-moments), 2 I/O error, 3 numerical divergence.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wirtflow/core.hpp"
#include "wirtflow/harness.hpp"
#include "wirtflow/objective.hpp"
#include "wirtflow/vector_io.hpp"

using namespace wirtflow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitDivergence = 3;

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty()) continue;
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError(std::string(what) + ": cannot parse '" + token + "'");
    }
    if (used != token.size()) {
      throw CLI::ValidationError(std::string(what) + ": trailing characters in '" + token + "'");
    }
    values.push_back(value);
  }
  if (values.empty()) throw CLI::ValidationError(std::string(what) + ": empty list");
  return values;
}

PatternDistribution parse_atoms(const std::string& text) {
  std::vector<PatternAtom> atoms;
  std::stringstream stream(text);
  std::string group;
  while (std::getline(stream, group, ';')) {
    if (group.empty()) continue;
    const std::vector<double> parts = parse_list(group, "--atoms");
    if (parts.size() != 3) {
      throw CLI::ValidationError("--atoms: each entry needs re,im,prob");
    }
    atoms.push_back({{parts[0], parts[1]}, parts[2]});
  }
  return PatternDistribution::custom(std::move(atoms));
}

PatternDistribution named_pattern(const std::string& name) {
  if (name == "octanary") return PatternDistribution::octanary();
  if (name == "ternary") return PatternDistribution::ternary();
  throw CLI::ValidationError("unknown pattern distribution: " + name);
}

SignalModel named_signal(const std::string& name, int band) {
  SignalModel model;
  if (name == "gaussian") {
    model.kind = SignalKind::gaussian_complex;
  } else if (name == "lowpass") {
    model.kind = SignalKind::lowpass;
    model.band = band;
  } else {
    throw CLI::ValidationError("unknown signal model: " + name);
  }
  return model;
}

void print_moment_report(const PatternDistribution& pattern, const MomentReport& report) {
  std::printf("pattern: %s\n", pattern.name().c_str());
  std::printf("E d            = %.17g + %.17gi\n", report.mean.real(), report.mean.imag());
  std::printf("E d^2          = %.17g + %.17gi\n", report.second_moment_d2.real(),
              report.second_moment_d2.imag());
  std::printf("E |d|^2        = %.17g\n", report.abs2);
  std::printf("E |d|^4        = %.17g\n", report.abs4);
  std::printf("E|d|^4-2E|d|^2^2 = %.17g\n", report.abs4 - 2.0 * report.abs2 * report.abs2);
  std::printf("max |d|        = %.17g\n", report.max_abs);
  std::printf("symmetric      = %s\n", report.symmetric ? "true" : "false");
  std::printf("degenerate     = %s\n", report.degenerate ? "true" : "false");
  std::printf("admissible     = %s\n", report.admissible ? "true" : "false");
}

std::string trace_path_for_channel(const std::string& base, std::size_t channel,
                                   std::size_t channel_count) {
  if (channel_count == 1) return base;
  const char* suffix[3] = {"_r", "_g", "_b"};
  const std::size_t dot = base.rfind('.');
  if (dot == std::string::npos) return base + suffix[channel];
  return base.substr(0, dot) + suffix[channel] + base.substr(dot);
}

int run_sweep(const std::string& model_name, const std::string& pattern_name,
              const std::string& signal_name, int n, const std::string& ratios,
              const std::string& patterns, int trials, std::uint64_t seed, int iters,
              double tau0, double mu_max, const std::string& out_path,
              const std::string& format) {
  ExperimentSpec spec;
  spec.n = n;
  spec.trials = trials;
  spec.base_seed = seed;
  spec.signal = named_signal(signal_name, 0);
  spec.solver.max_iterations = iters;
  spec.solver.schedule = Schedule::heuristic(tau0, mu_max);
  spec.solver.trace_every = iters;

  if (model_name == "gaussian") {
    spec.model = MeasurementKind::gaussian;
    if (ratios.empty()) throw CLI::ValidationError("gaussian sweeps need --ratios");
    spec.sweep = parse_list(ratios, "--ratios");
  } else if (model_name == "cdp") {
    spec.model = MeasurementKind::cdp;
    spec.pattern = named_pattern(pattern_name);
    if (patterns.empty()) throw CLI::ValidationError("cdp sweeps need --patterns");
    spec.sweep = parse_list(patterns, "--patterns");
  } else {
    throw CLI::ValidationError("unknown model: " + model_name);
  }

  const SuccessCurve curve = run_success_sweep(spec);
  export_curve(curve, out_path, format);
  for (const auto& point : curve.points) {
    std::printf("sweep %g: %d/%d success (rate %.3f), mean rel error %.3e\n",
                point.sweep_value, point.successes, point.trials, point.success_rate(),
                point.mean_rel_error);
  }
  std::printf("wrote %s\n", out_path.c_str());
  return kExitOk;
}

int run_recover(const std::string& image_path, int L, const std::string& pattern_name,
                int iters, int power_iters, std::uint64_t seed,
                const std::string& out_image, const std::string& out_trace) {
  const ImageProblem image = ingest_image(image_path);

  SpectralConfig init_config;
  init_config.power_iterations = power_iters;
  SolverConfig solver_config;
  solver_config.max_iterations = iters;
  solver_config.schedule = Schedule::heuristic(330.0, 0.4);
  solver_config.trace_every = 1;

  const RecoveryReport report =
      run_image_recovery(image, L, named_pattern(pattern_name), init_config, solver_config,
                         RandomSource(seed, 0));

  for (std::size_t c = 0; c < report.channels.size(); ++c) {
    const ChannelRecovery& channel = report.channels[c];
    std::printf("channel %zu: rel error %.3e, %d iterations, %lld FFTs (predicted %lld), %.2f s\n",
                c, channel.rel_error, channel.solve.iterations_run,
                static_cast<long long>(channel.fft_count),
                static_cast<long long>(channel.fft_predicted), channel.seconds);
  }
  std::printf("total: %lld FFTs, %.2f s, %.3e s/FFT, %.0f FFT units elapsed\n",
              static_cast<long long>(report.fft_count_total), report.seconds_total,
              report.seconds_per_fft, report.fft_units_elapsed);

  if (!out_image.empty()) {
    write_image(out_image, report.recovered);
    std::printf("wrote %s\n", out_image.c_str());
  }
  if (!out_trace.empty()) {
    for (std::size_t c = 0; c < report.channels.size(); ++c) {
      const std::string path = trace_path_for_channel(out_trace, c, report.channels.size());
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot open for writing: " + path);
      report.channels[c].solve.trace.write_csv(out);
      std::printf("wrote %s\n", path.c_str());
    }
  }
  return kExitOk;
}

int run_make_data(int n, const std::string& model_name, const std::string& signal_name,
                  int lowpass_band, int m, int L, const std::string& pattern_name,
                  std::uint64_t seed, const std::string& out_signal,
                  const std::string& out_obs, const std::string& out_codes) {
  RandomSource rng(seed, 0);
  const ComplexVector x = generate_signal(named_signal(signal_name, lowpass_band), n, rng);
  if (!out_signal.empty()) {
    write_cvec(out_signal, x);
    std::printf("wrote %s\n", out_signal.c_str());
  }

  if (model_name == "gaussian") {
    if (!out_codes.empty()) {
      throw CLI::ValidationError("--out-codes applies to the cdp model only");
    }
    if (!out_obs.empty()) {
      const int rows = m > 0 ? m : 6 * n;
      RandomSource ensemble_rng = rng.derived(1);
      const GaussianEnsemble ensemble = GaussianEnsemble::sample(n, rows, ensemble_rng);
      write_yobs(out_obs, observe(ensemble, x));
      std::printf("wrote %s (gaussian ensemble regenerable from seed)\n", out_obs.c_str());
    }
  } else if (model_name == "cdp") {
    RandomSource ensemble_rng = rng.derived(1);
    const CdpEnsemble ensemble =
        CdpEnsemble::sample(n, L, named_pattern(pattern_name), ensemble_rng);
    if (!out_codes.empty()) {
      write_cdpe(out_codes, ensemble);
      std::printf("wrote %s\n", out_codes.c_str());
    }
    if (!out_obs.empty()) {
      write_yobs(out_obs, observe(ensemble, x));
      std::printf("wrote %s\n", out_obs.c_str());
    }
  } else {
    throw CLI::ValidationError("unknown model: " + model_name);
  }
  return kExitOk;
}

int run_check_moments(const std::string& pattern_name, const std::string& atoms) {
  if (pattern_name.empty() == atoms.empty()) {
    throw CLI::ValidationError("check-moments needs exactly one of --pattern or --atoms");
  }
  const PatternDistribution pattern =
      atoms.empty() ? named_pattern(pattern_name) : parse_atoms(atoms);
  const MomentReport report = pattern_moments(pattern);
  print_moment_report(pattern, report);
  return report.admissible ? kExitOk : kExitUsage;
}

int run_diagnose(int n, int m, double alpha, double beta, int samples, std::uint64_t seed) {
  RandomSource rng(seed, 0);
  ComplexVector x = sample_complex_gaussian(n, rng);
  x /= x.norm();
  RandomSource ensemble_rng = rng.derived(1);
  const GaussianEnsemble ensemble = GaussianEnsemble::sample(n, m, ensemble_rng);
  const RealVector y = observe(ensemble, x);

  const double epsilon = 0.125;
  int non_negative = 0;
  for (int s = 0; s < samples; ++s) {
    RandomSource point_rng = rng.derived(100 + static_cast<std::uint64_t>(s));
    ComplexVector w = sample_complex_gaussian(n, point_rng);
    w /= w.norm();
    const ComplexVector z = x + (epsilon * point_rng.uniform()) * w;
    if (regularity_diagnostic(ensemble, y, x, z, alpha, beta) >= 0.0) ++non_negative;
  }
  std::printf("n=%d m=%d alpha=%g beta=%g epsilon=%g\n", n, m, alpha, beta, epsilon);
  std::printf("passes=%d samples=%d pass_rate=%.4f\n", non_negative, samples,
              static_cast<double>(non_negative) / static_cast<double>(samples));
  return kExitOk;
}

int run_calibrate(int n, int repetitions) {
  const double unit = fft_unit_calibration(n, repetitions);
  std::printf("fft unit at n=%d: %.6e seconds\n", n, unit);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wirtinger Flow phase retrieval"};
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "success-probability sweep");
  std::string sweep_model = "gaussian", sweep_pattern = "octanary", sweep_signal = "gaussian";
  std::string ratios, patterns, sweep_out = "sweep.csv", sweep_format = "csv";
  int sweep_n = 128, sweep_trials = 100, sweep_iters = 2500;
  double sweep_tau0 = 330.0, sweep_mu_max = 0.2;
  std::uint64_t sweep_seed = 0;
  sweep->add_option("--model", sweep_model, "gaussian|cdp");
  sweep->add_option("--pattern", sweep_pattern, "octanary|ternary (cdp)");
  sweep->add_option("--signal", sweep_signal, "gaussian|lowpass");
  sweep->add_option("--n", sweep_n, "signal length");
  sweep->add_option("--ratios", ratios, "comma list of m/n ratios (gaussian)");
  sweep->add_option("--patterns", patterns, "comma list of L values (cdp)");
  sweep->add_option("--trials", sweep_trials, "trials per sweep point");
  sweep->add_option("--seed", sweep_seed, "base seed");
  sweep->add_option("--iters", sweep_iters, "gradient iterations");
  sweep->add_option("--tau0", sweep_tau0, "schedule ramp constant");
  sweep->add_option("--mu-max", sweep_mu_max, "schedule cap");
  sweep->add_option("--out", sweep_out, "output path");
  sweep->add_option("--format", sweep_format, "csv|json");

  // recover
  auto* recover = app.add_subcommand("recover", "image recovery from octanary CDPs");
  std::string recover_image, recover_dist = "octanary", recover_out_image, recover_out_trace;
  int recover_L = 20, recover_iters = 300, recover_power = 50;
  std::uint64_t recover_seed = 0;
  recover->add_option("--image", recover_image, "PGM (P5) or PPM (P6) input")->required();
  recover->add_option("--patterns", recover_L, "number of patterns L");
  recover->add_option("--pattern-dist", recover_dist, "octanary|ternary");
  recover->add_option("--iters", recover_iters, "gradient iterations");
  recover->add_option("--power-iters", recover_power, "power-method iterations");
  recover->add_option("--seed", recover_seed, "seed");
  recover->add_option("--out-image", recover_out_image, "recovered image path");
  recover->add_option("--out-trace", recover_out_trace, "iterate trace CSV path");

  // make-data
  auto* make_data = app.add_subcommand("make-data", "generate signal/observation files");
  std::string md_model = "cdp", md_signal = "gaussian", md_pattern = "octanary";
  std::string md_out_signal, md_out_obs, md_out_codes;
  int md_n = 128, md_m = 0, md_L = 8, md_band = 0;
  std::uint64_t md_seed = 0;
  make_data->add_option("--n", md_n, "signal length");
  make_data->add_option("--model", md_model, "gaussian|cdp");
  make_data->add_option("--signal", md_signal, "gaussian|lowpass");
  make_data->add_option("--lowpass-band", md_band, "lowpass band M (default n/8)");
  make_data->add_option("--m", md_m, "gaussian measurement count (default 6n)");
  make_data->add_option("--patterns", md_L, "cdp pattern count");
  make_data->add_option("--pattern-dist", md_pattern, "octanary|ternary");
  make_data->add_option("--seed", md_seed, "seed");
  make_data->add_option("--out-signal", md_out_signal, "CVEC1 output");
  make_data->add_option("--out-obs", md_out_obs, "YOBS1 output");
  make_data->add_option("--out-codes", md_out_codes, "CDPE1 output (cdp)");

  // check-moments
  auto* check = app.add_subcommand("check-moments", "pattern admissibility report");
  std::string check_pattern, check_atoms;
  check->add_option("--pattern", check_pattern, "octanary|ternary");
  check->add_option("--atoms", check_atoms, "custom atoms re,im,prob;re,im,prob;...");

  // diagnose
  auto* diagnose = app.add_subcommand("diagnose", "regularity-condition pass rate");
  int diag_n = 64, diag_m = 1280, diag_samples = 100;
  double diag_alpha = 30.0, diag_beta = 742.0;
  std::uint64_t diag_seed = 0;
  diagnose->add_option("--n", diag_n, "signal length");
  diagnose->add_option("--m", diag_m, "measurement count");
  diagnose->add_option("--alpha", diag_alpha, "curvature constant");
  diagnose->add_option("--beta", diag_beta, "smoothness constant");
  diagnose->add_option("--samples", diag_samples, "points sampled in E(1/8)");
  diagnose->add_option("--seed", diag_seed, "seed");

  // calibrate
  auto* calibrate = app.add_subcommand("calibrate", "time one FFT unit");
  int cal_n = 4096, cal_reps = 25;
  calibrate->add_option("--n", cal_n, "transform length");
  calibrate->add_option("--reps", cal_reps, "repetitions for the median");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sweep->parsed()) {
      return run_sweep(sweep_model, sweep_pattern, sweep_signal, sweep_n, ratios, patterns,
                       sweep_trials, sweep_seed, sweep_iters, sweep_tau0, sweep_mu_max,
                       sweep_out, sweep_format);
    }
    if (recover->parsed()) {
      return run_recover(recover_image, recover_L, recover_dist, recover_iters,
                         recover_power, recover_seed, recover_out_image, recover_out_trace);
    }
    if (make_data->parsed()) {
      return run_make_data(md_n, md_model, md_signal, md_band, md_m, md_L, md_pattern,
                           md_seed, md_out_signal, md_out_obs, md_out_codes);
    }
    if (check->parsed()) return run_check_moments(check_pattern, check_atoms);
    if (diagnose->parsed()) {
      return run_diagnose(diag_n, diag_m, diag_alpha, diag_beta, diag_samples, diag_seed);
    }
    if (calibrate->parsed()) return run_calibrate(cal_n, cal_reps);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const DivergenceError& e) {
    std::fprintf(stderr, "divergence: %s\n", e.what());
    return kExitDivergence;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kExitIo;
  } catch (const FormatError& e) {
    std::fprintf(stderr, "format error: %s\n", e.what());
    return kExitIo;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
