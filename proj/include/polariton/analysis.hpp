#pragma once

// Collapse/revival observables extracted from intensity traces.

#include <optional>
#include <string>
#include <vector>

#include "polariton/model.hpp"
#include "polariton/trace.hpp"

namespace polariton {

struct RevivalOptions {
  double contrast_threshold = 0.05;  // collapse: contrast falls below this
  double revival_threshold = 0.5;    // revival: contrast climbs above this * initial contrast
  // Exponential damping rate of the beat, exp(-rate t). Revival peaks are
  // located after dividing it out; when unset it is estimated from the
  // heights of successive revivals, which assumes equal undamped maxima.
  std::optional<double> decay_rate;
};

/// Local oscillation contrast sampled between consecutive extrema:
/// |I_max - I_min| / (2 * center). Equals the envelope of
/// I = c (1 - cos(w t) env(t)).
struct ContrastSample {
  double t = 0.0;
  double contrast = 0.0;
};

std::vector<ContrastSample> oscillation_contrast(const IntensityTrace& trace, double center_level);

struct RevivalReport {
  double center_level = 0.0;
  std::optional<double> carrier_frequency;
  std::optional<double> collapse_time;
  std::vector<double> revival_times;       // refined peaks of the decay-compensated envelope
  std::vector<double> revival_amplitudes;  // measured contrast at each peak, in [0, 1]
  double grid_resolution = 0.0;
  double decay_rate = 0.0;                 // rate divided out before peak location
  std::string status;                      // "ok" or the reason nothing was found

  bool collapse_detected() const { return collapse_time.has_value(); }
  /// Spacings between successive revival peaks.
  std::vector<double> revival_periods() const;
  /// Mean spacing; with a single revival, its distance from t = 0.
  std::optional<double> revival_period() const;
};

RevivalReport detect_revivals(const IntensityTrace& trace, const RevivalOptions& options = {});

/// Collapse time predicted from the envelope formulas, with
/// A_eff = 2 |2 A12 - A11 - A22| (= A on resonance).
/// coherent: 2 nbar sin^2(A_eff t / 4) = 1;  number: envelope_number = 1/e.
/// Throws InputError when the envelope never gets that low.
double collapse_time_estimate(const InitialState& state, const ModelParams& params,
                              const PolaritonBasis& basis);

/// Carrier angular frequency from the mean spacing of zero crossings of
/// (I - running mean) before the contrast first halves.
double carrier_frequency(const IntensityTrace& trace);

struct TraceComparison {
  double max_abs = 0.0;
  double rms = 0.0;
  double argmax_t = 0.0;
};

/// Throws InputError when the time grids differ.
TraceComparison compare_traces(const IntensityTrace& a, const IntensityTrace& b);

}  // namespace polariton
