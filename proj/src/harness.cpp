#include "wirtflow/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "wirtflow/core.hpp"
#include "wirtflow/errors.hpp"
#include "wirtflow/fft.hpp"
#include "wirtflow/objective.hpp"
#include "wirtflow/parallel.hpp"

namespace wirtflow {

namespace {

struct TrialOutcome {
  bool success = false;
  int iterations = 0;
  double rel_error = 1.0;
};

TrialOutcome run_trial(const ExperimentSpec& spec, int point, int trial, double sweep_value) {
  RandomSource rng(spec.base_seed, RandomSource::trial_stream(
                                       static_cast<std::uint64_t>(point),
                                       static_cast<std::uint64_t>(trial)));
  const ComplexVector x = generate_signal(spec.signal, spec.n, rng);

  TrialOutcome outcome;
  auto finish = [&](const SolveResult& result) {
    outcome.iterations = result.iterations_run;
    outcome.rel_error = relative_error(result.z_final, x);
    outcome.success = outcome.rel_error < spec.success_threshold;
  };
  auto run = [&](const Ensemble& ensemble) {
    const RealVector y = observe(ensemble, x);
    const SpectralInit init = spectral_init(ensemble, y, spec.init, rng);
    try {
      finish(solve(ensemble, y, init.z0, spec.solver));
    } catch (const DivergenceError& diverged) {
      outcome.success = false;
      outcome.iterations = diverged.iteration;
      outcome.rel_error = 1.0;
    }
  };
  if (spec.model == MeasurementKind::gaussian) {
    const int m = static_cast<int>(std::lround(sweep_value * spec.n));
    run(GaussianEnsemble::sample(spec.n, m, rng));
  } else {
    const int L = static_cast<int>(std::lround(sweep_value));
    run(CdpEnsemble::sample(spec.n, L, spec.pattern, rng));
  }
  return outcome;
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

SuccessCurve run_success_sweep(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw PreconditionError("run_success_sweep: trials must be >= 1");
  if (spec.sweep.empty()) throw PreconditionError("run_success_sweep: empty sweep");
  if (spec.n < 1) throw DimensionError("run_success_sweep: n must be >= 1");
  for (double value : spec.sweep) {
    if (spec.model == MeasurementKind::cdp &&
        std::abs(value - std::round(value)) > 1e-9) {
      throw PreconditionError("run_success_sweep: CDP pattern counts must be integers");
    }
    if (value * spec.n < 1.0) {
      throw PreconditionError("run_success_sweep: sweep value yields no measurements");
    }
  }

  SuccessCurve curve;
  for (std::size_t point = 0; point < spec.sweep.size(); ++point) {
    const double sweep_value = spec.sweep[point];
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(spec.trials));
    parallel_for(spec.trials, [&](int trial) {
      outcomes[static_cast<std::size_t>(trial)] =
          run_trial(spec, static_cast<int>(point), trial, sweep_value);
    });
    SweepPoint aggregated{};
    aggregated.sweep_value = sweep_value;
    aggregated.trials = spec.trials;
    double iteration_sum = 0.0;
    double error_sum = 0.0;
    for (const auto& outcome : outcomes) {
      aggregated.successes += outcome.success ? 1 : 0;
      iteration_sum += outcome.iterations;
      error_sum += outcome.rel_error;
    }
    aggregated.mean_iterations = iteration_sum / static_cast<double>(spec.trials);
    aggregated.mean_rel_error = error_sum / static_cast<double>(spec.trials);
    curve.points.push_back(aggregated);
  }
  return curve;
}

void export_curve_csv(const SuccessCurve& curve, std::ostream& out) {
  out << "sweep_value,successes,trials,success_rate,mean_iters,mean_rel_error\n";
  for (const auto& point : curve.points) {
    out << format_double(point.sweep_value) << ',' << point.successes << ','
        << point.trials << ',' << format_double(point.success_rate()) << ','
        << format_double(point.mean_iterations) << ','
        << format_double(point.mean_rel_error) << '\n';
  }
}

void export_curve_json(const SuccessCurve& curve, std::ostream& out) {
  nlohmann::ordered_json root;
  root["points"] = nlohmann::ordered_json::array();
  for (const auto& point : curve.points) {
    nlohmann::ordered_json entry;
    entry["sweep_value"] = point.sweep_value;
    entry["successes"] = point.successes;
    entry["trials"] = point.trials;
    entry["success_rate"] = point.success_rate();
    entry["mean_iters"] = point.mean_iterations;
    entry["mean_rel_error"] = point.mean_rel_error;
    root["points"].push_back(entry);
  }
  out << root.dump(2) << '\n';
}

SuccessCurve parse_curve_json(std::istream& in) {
  nlohmann::json root;
  try {
    in >> root;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("curve json: ") + e.what());
  }
  SuccessCurve curve;
  if (!root.contains("points") || !root["points"].is_array()) {
    throw FormatError("curve json: missing points array");
  }
  for (const auto& entry : root["points"]) {
    SweepPoint point{};
    point.sweep_value = entry.at("sweep_value").get<double>();
    point.successes = entry.at("successes").get<int>();
    point.trials = entry.at("trials").get<int>();
    point.mean_iterations = entry.at("mean_iters").get<double>();
    point.mean_rel_error = entry.at("mean_rel_error").get<double>();
    curve.points.push_back(point);
  }
  return curve;
}

void export_curve(const SuccessCurve& curve, const std::string& path,
                  const std::string& format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  if (format == "csv") {
    export_curve_csv(curve, out);
  } else if (format == "json") {
    export_curve_json(curve, out);
  } else {
    throw PreconditionError("export_curve: format must be csv or json");
  }
  if (!out) throw IoError("write failed: " + path);
}

ChannelRecovery recover_channel(const CdpEnsemble& ensemble, const RealVector& channel,
                                const SpectralConfig& init_config,
                                const SolverConfig& solver_config, RandomSource rng) {
  if (channel.size() != ensemble.n()) {
    throw DimensionError("recover_channel: channel has wrong length");
  }
  ComplexVector x(channel.size());
  for (Eigen::Index i = 0; i < channel.size(); ++i) x[i] = Complex(channel[i], 0.0);
  const RealVector y = observe(ensemble, x);

  ChannelRecovery recovery{};
  const auto start_time = std::chrono::steady_clock::now();
  const std::int64_t ffts_before = ensemble.fft_count();

  const SpectralInit init = spectral_init(ensemble, y, init_config, rng);
  if (init.degenerate) {
    // all-dark channel; the zero vector reproduces it exactly
    recovery.solve.z_final = init.z0;
    recovery.solve.converged = true;
    recovery.rel_error = 0.0;
  } else {
    recovery.solve = solve(ensemble, y, init.z0, solver_config, &x);
    recovery.rel_error = relative_error(recovery.solve.z_final, x);
  }

  recovery.fft_count = ensemble.fft_count() - ffts_before;
  recovery.fft_predicted =
      2LL * ensemble.L() *
      (init.degenerate ? 0
                       : init_config.power_iterations + recovery.solve.iterations_run);
  recovery.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  return recovery;
}

RecoveryReport run_image_recovery(const ImageProblem& image, int L,
                                  const PatternDistribution& pattern,
                                  const SpectralConfig& init_config,
                                  const SolverConfig& solver_config, RandomSource rng) {
  if (L < 1) throw PreconditionError("run_image_recovery: L must be >= 1");
  const int n = image.pixel_count();
  if (n < 1) throw DimensionError("run_image_recovery: empty image");
  if (image.channels.empty()) throw DimensionError("run_image_recovery: no channels");

  RandomSource code_rng = rng.derived(1);
  const CdpEnsemble ensemble = CdpEnsemble::sample(n, L, pattern, code_rng);

  RecoveryReport report;
  report.recovered = image;
  const auto start_time = std::chrono::steady_clock::now();
  for (std::size_t c = 0; c < image.channels.size(); ++c) {
    ChannelRecovery recovery =
        recover_channel(ensemble, image.channels[c], init_config, solver_config,
                        rng.derived(100 + static_cast<std::uint64_t>(c)));
    // export the aligned real projection of the recovered channel
    ComplexVector original(n);
    for (int i = 0; i < n; ++i) original[i] = Complex(image.channels[c][i], 0.0);
    const double phi = optimal_phase(recovery.solve.z_final, original);
    const Complex rotation = std::polar(1.0, -phi);
    for (int i = 0; i < n; ++i) {
      report.recovered.channels[c][i] = (rotation * recovery.solve.z_final[i]).real();
    }
    report.fft_count_total += recovery.fft_count;
    report.fft_predicted_total += recovery.fft_predicted;
    report.channels.push_back(std::move(recovery));
  }
  report.seconds_total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  report.seconds_per_fft = fft_unit_calibration(n, 15);
  report.fft_units_elapsed = report.seconds_total / report.seconds_per_fft;
  return report;
}

double fft_unit_calibration(int n, int repetitions) {
  if (n < 2) throw PreconditionError("fft_unit_calibration: n must be >= 2");
  if (repetitions < 1) throw PreconditionError("fft_unit_calibration: repetitions must be >= 1");
  const auto dft = Dft::plan(n);
  ComplexVector input(n);
  for (int i = 0; i < n; ++i) {
    input[i] = Complex(std::cos(0.37 * i), std::sin(0.11 * i));
  }
  ComplexVector output(n);
  dft->forward(input, output);  // warm the plan and scratch buffers
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(repetitions));
  for (int r = 0; r < repetitions; ++r) {
    const auto start = std::chrono::steady_clock::now();
    dft->forward(input, output);
    times.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
  return times[times.size() / 2];
}

}  // namespace wirtflow
