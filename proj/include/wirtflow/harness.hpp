#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wirtflow/ensemble.hpp"
#include "wirtflow/image.hpp"
#include "wirtflow/init.hpp"
#include "wirtflow/pattern.hpp"
#include "wirtflow/signal.hpp"
#include "wirtflow/solver.hpp"
#include "wirtflow/types.hpp"

namespace wirtflow {

enum class MeasurementKind { gaussian, cdp };

struct ExperimentSpec {
  MeasurementKind model = MeasurementKind::gaussian;
  PatternDistribution pattern = PatternDistribution::octanary();  // cdp only
  SignalModel signal;
  int n = 128;
  /// m/n ratios for the Gaussian model, pattern counts L for CDP
  /// (CDP values must be integers).
  std::vector<double> sweep;
  int trials = 100;
  std::uint64_t base_seed = 0;
  SpectralConfig init;
  SolverConfig solver;
  double success_threshold = 1e-5;
};

struct SweepPoint {
  double sweep_value;
  int successes;
  int trials;
  double mean_iterations;
  double mean_rel_error;

  double success_rate() const {
    return static_cast<double>(successes) / static_cast<double>(trials);
  }
};

struct SuccessCurve {
  std::vector<SweepPoint> points;
};

/// Runs `trials` independent end-to-end pipelines per sweep point
/// (signal, ensemble, observe, spectral init, solve, success test).
/// Trial t of point p uses the RNG stream trial_stream(p, t); trials run
/// on the worker pool and are aggregated in index order, so the curve is
/// independent of scheduling. Divergent trials count as failures with
/// relative error 1.
SuccessCurve run_success_sweep(const ExperimentSpec& spec);

void export_curve_csv(const SuccessCurve& curve, std::ostream& out);
void export_curve_json(const SuccessCurve& curve, std::ostream& out);
SuccessCurve parse_curve_json(std::istream& in);
void export_curve(const SuccessCurve& curve, const std::string& path,
                  const std::string& format);

struct ChannelRecovery {
  SolveResult solve;
  double rel_error;
  std::int64_t fft_count;      // length-n transforms actually executed
  std::int64_t fft_predicted;  // 2 L (power_iterations + solve iterations)
  double seconds;
};

struct RecoveryReport {
  std::vector<ChannelRecovery> channels;
  ImageProblem recovered;
  double seconds_total = 0.0;
  std::int64_t fft_count_total = 0;
  std::int64_t fft_predicted_total = 0;
  double seconds_per_fft = 0.0;      // from fft_unit_calibration at this n
  double fft_units_elapsed = 0.0;    // seconds_total / seconds_per_fft
};

/// Recovers one real channel from CDP intensities: spectral init then
/// WF iterations. The FFT count covers init + solve only (observation
/// is data acquisition, not reconstruction work). All-zero channels
/// short-circuit to the zero vector.
ChannelRecovery recover_channel(const CdpEnsemble& ensemble, const RealVector& channel,
                                const SpectralConfig& init_config,
                                const SolverConfig& solver_config, RandomSource rng);

/// Runs recover_channel per color band against one shared set of L
/// patterns; channels use independent derived RNG streams, so recovering
/// them in any order gives identical outputs. The recovered image is the
/// real part of each channel after optimal phase alignment.
RecoveryReport run_image_recovery(const ImageProblem& image, int L,
                                  const PatternDistribution& pattern,
                                  const SpectralConfig& init_config,
                                  const SolverConfig& solver_config, RandomSource rng);

/// Median wall time of one length-n transform over `repetitions` runs.
double fft_unit_calibration(int n, int repetitions);

}  // namespace wirtflow
