#include "polariton/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

namespace polariton {
namespace {

struct Extremum {
  double t;
  double value;
  bool is_max;
};

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double grid_step(const IntensityTrace& trace) {
  if (trace.times.size() < 2) throw InputError("trace needs at least two samples");
  return (trace.times.back() - trace.times.front()) / static_cast<double>(trace.times.size() - 1);
}

// Local extrema with three-point parabolic refinement, forced to alternate.
std::vector<Extremum> find_extrema(const IntensityTrace& trace) {
  const auto& t = trace.times;
  const auto& y = trace.intensity;
  std::vector<Extremum> out;
  for (std::size_t k = 1; k + 1 < y.size(); ++k) {
    const bool is_max = y[k] > y[k - 1] && y[k] >= y[k + 1];
    const bool is_min = y[k] < y[k - 1] && y[k] <= y[k + 1];
    if (!is_max && !is_min) continue;
    const double curvature = y[k - 1] - 2.0 * y[k] + y[k + 1];
    double offset = 0.0;
    if (curvature != 0.0) offset = std::clamp(0.5 * (y[k - 1] - y[k + 1]) / curvature, -0.5, 0.5);
    const double h = t[k + 1] - t[k];
    Extremum e{t[k] + offset * h, y[k] - 0.25 * (y[k - 1] - y[k + 1]) * offset, is_max};
    if (!out.empty() && out.back().is_max == e.is_max) {
      const bool more_extreme = e.is_max ? e.value > out.back().value : e.value < out.back().value;
      if (more_extreme) out.back() = e;
      continue;
    }
    out.push_back(e);
  }
  return out;
}

// Least-squares quadratic y = c0 + c1 x + c2 x^2.
bool fit_quadratic(const std::vector<double>& x, const std::vector<double>& y, double& c0, double& c1,
                   double& c2) {
  if (x.size() < 3) return false;
  double s[5] = {0, 0, 0, 0, 0};
  double r[3] = {0, 0, 0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = 1.0;
    for (int k = 0; k < 5; ++k) {
      s[k] += p;
      if (k < 3) r[k] += p * y[i];
      p *= x[i];
    }
  }
  // Normal equations via Cramer's rule on the 3x3 Hankel system.
  const double m[3][3] = {{s[0], s[1], s[2]}, {s[1], s[2], s[3]}, {s[2], s[3], s[4]}};
  auto det3 = [](const double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double d = det3(m);
  if (d == 0.0 || !std::isfinite(d)) return false;
  double coeffs[3];
  for (int col = 0; col < 3; ++col) {
    double a[3][3];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a[i][j] = (j == col) ? r[i] : m[i][j];
    }
    coeffs[col] = det3(a) / d;
  }
  c0 = coeffs[0];
  c1 = coeffs[1];
  c2 = coeffs[2];
  return true;
}

struct Peak {
  double t;
  double amplitude;
};

// Vertex of a log-quadratic fitted over a window centred on the running
// estimate; recentring keeps the window symmetric about the true peak.
Peak refine_peak(const std::vector<ContrastSample>& samples, std::size_t lo, std::size_t hi,
                 std::size_t arg) {
  Peak peak{samples[arg].t, samples[arg].contrast};
  const double half_width =
      0.6 * std::min(samples[arg].t - samples[lo].t, samples[hi].t - samples[arg].t);
  if (!(half_width > 0.0)) return peak;

  double centre = samples[arg].t;
  for (int iter = 0; iter < 4; ++iter) {
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t k = lo; k <= hi; ++k) {
      if (std::abs(samples[k].t - centre) <= half_width && samples[k].contrast > 0.0) {
        x.push_back(samples[k].t - centre);
        y.push_back(std::log(samples[k].contrast));
      }
    }
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;
    if (!fit_quadratic(x, y, c0, c1, c2) || !(c2 < 0.0)) return peak;
    const double vertex = -c1 / (2.0 * c2);
    if (std::abs(vertex) > half_width) return peak;
    centre += vertex;
    peak.t = centre;
    peak.amplitude = std::exp(c0 - c1 * c1 / (4.0 * c2));
  }
  return peak;
}


// Revival regions after the collapse: runs of contrast at or above `level`
// whose maximum is interior to the run.
std::vector<Peak> find_revival_peaks(const std::vector<ContrastSample>& samples, std::size_t from,
                                     double level) {
  std::vector<Peak> peaks;
  std::size_t k = from;
  while (k < samples.size()) {
    if (samples[k].contrast < level) {
      ++k;
      continue;
    }
    const std::size_t start = k;
    while (k < samples.size() && samples[k].contrast >= level) ++k;
    const std::size_t stop = k - 1;  // inclusive
    std::size_t arg = start;
    for (std::size_t i = start; i <= stop; ++i) {
      if (samples[i].contrast > samples[arg].contrast) arg = i;
    }
    // A region cut off by the end of the trace only counts when its maximum
    // is clearly interior.
    const bool closed = k < samples.size();
    if (!closed && (arg == stop || 2 * (arg - start) > 3 * (stop - start))) break;
    if (arg == start || arg == stop) continue;
    peaks.push_back(refine_peak(samples, start, stop, arg));
  }
  return peaks;
}

// Least-squares slope of log amplitude against time, negated.
double decay_from_peaks(const std::vector<Peak>& peaks) {
  double st = 0.0, sy = 0.0;
  for (const auto& p : peaks) {
    st += p.t;
    sy += std::log(p.amplitude);
  }
  const double n = static_cast<double>(peaks.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& p : peaks) {
    sxy += (p.t - st / n) * (std::log(p.amplitude) - sy / n);
    sxx += (p.t - st / n) * (p.t - st / n);
  }
  return -sxy / sxx;
}


// Damping rate read off the opening of the trace, where the undamped
// envelope is even in t: fit log c = c0 - rate t + c2 t^2 + c4 t^4.
std::optional<double> opening_decay(const std::vector<ContrastSample>& samples) {
  std::vector<double> t;
  std::vector<double> y;
  for (const auto& s : samples) {
    if (!(s.contrast >= 0.8 * samples.front().contrast) || !(s.contrast > 0.0)) break;
    t.push_back(s.t);
    y.push_back(std::log(s.contrast));
  }
  if (t.size() < 6) return std::nullopt;
  Eigen::MatrixXd design(static_cast<Eigen::Index>(t.size()), 4);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(t.size()));
  const double scale = t.back();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double x = t[i] / scale;
    design.row(static_cast<Eigen::Index>(i)) << 1.0, x, x * x, x * x * x * x;
    rhs(static_cast<Eigen::Index>(i)) = y[i];
  }
  const Eigen::VectorXd c = design.colPivHouseholderQr().solve(rhs);
  return -c(1) / scale;
}

}  // namespace

std::vector<ContrastSample> oscillation_contrast(const IntensityTrace& trace, double center_level) {
  if (trace.times.size() != trace.intensity.size()) throw InputError("malformed trace");
  std::vector<ContrastSample> out;
  if (!(center_level > 0.0)) return out;
  const auto extrema = find_extrema(trace);
  for (std::size_t i = 0; i + 1 < extrema.size(); ++i) {
    const auto& a = extrema[i];
    const auto& b = extrema[i + 1];
    out.push_back({0.5 * (a.t + b.t), std::abs(a.value - b.value) / (2.0 * center_level)});
  }
  return out;
}

std::vector<double> RevivalReport::revival_periods() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < revival_times.size(); ++i) {
    out.push_back(revival_times[i] - revival_times[i - 1]);
  }
  return out;
}

std::optional<double> RevivalReport::revival_period() const {
  if (revival_times.empty()) return std::nullopt;
  if (revival_times.size() == 1) return revival_times.front();
  return (revival_times.back() - revival_times.front()) /
         static_cast<double>(revival_times.size() - 1);
}

RevivalReport detect_revivals(const IntensityTrace& trace, const RevivalOptions& options) {
  RevivalReport report;
  report.grid_resolution = grid_step(trace);
  report.center_level = mean_of(trace.intensity);
  report.status = "ok";

  const auto samples = oscillation_contrast(trace, report.center_level);
  if (samples.size() < 3) {
    report.status = "no oscillation detected";
    return report;
  }
  try {
    report.carrier_frequency = carrier_frequency(trace);
  } catch (const InputError&) {
    report.carrier_frequency.reset();
  }

  std::size_t collapse_idx = samples.size();
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (samples[k].contrast < options.contrast_threshold) {
      collapse_idx = k;
      break;
    }
  }
  if (collapse_idx == samples.size()) {
    report.status = "no collapse detected";
    return report;
  }
  if (collapse_idx == 0) {
    report.collapse_time = samples[0].t;
  } else {
    const auto& a = samples[collapse_idx - 1];
    const auto& b = samples[collapse_idx];
    const double frac = (a.contrast - options.contrast_threshold) / (a.contrast - b.contrast);
    report.collapse_time = a.t + frac * (b.t - a.t);
  }

  const double t0 = samples.front().t;
  auto locate = [&](double rate) {
    std::vector<ContrastSample> flat = samples;
    for (auto& s : flat) s.contrast *= std::exp(rate * (s.t - t0));
    auto peaks = find_revival_peaks(flat, collapse_idx, options.revival_threshold * flat.front().contrast);
    for (auto& p : peaks) p.amplitude *= std::exp(-rate * (p.t - t0));
    return peaks;
  };

  double rate = options.decay_rate.value_or(0.0);
  auto peaks = locate(rate);
  if (!options.decay_rate && peaks.empty()) {
    // Damping may have pushed every revival under the threshold.
    if (auto seed = opening_decay(samples); seed && *seed > 0.0) {
      rate = *seed;
      peaks = locate(rate);
      if (peaks.empty()) rate = 0.0;
    }
  }
  if (!options.decay_rate) {
    // Undamped maxima are taken as equal: either successive revivals, or the
    // first revival against the opening contrast.
    for (int pass = 0; pass < 3 && !peaks.empty(); ++pass) {
      const double estimate = peaks.size() >= 2 ? decay_from_peaks(peaks)
                                                : -std::log(peaks.front().amplitude / samples.front().contrast) /
                                                      (peaks.front().t - t0);
      if (!std::isfinite(estimate)) break;
      const double next = std::max(0.0, estimate);
      if (std::abs(next - rate) <= 1e-12 * std::max(1.0, rate)) break;
      rate = next;
      peaks = locate(rate);
    }
  }
  report.decay_rate = rate;
  for (const auto& p : peaks) {
    report.revival_times.push_back(p.t);
    report.revival_amplitudes.push_back(std::clamp(p.amplitude, 0.0, 1.0));
  }
  if (report.revival_times.empty()) report.status = "collapse without revival";
  return report;
}

double collapse_time_estimate(const InitialState& state, const ModelParams& params,
                              const PolaritonBasis& basis) {
  params.validate();
  const double chi = std::abs(basis.chi());
  if (!(chi > 1e-15 * params.g)) throw InputError("no collapse: effective nonlinearity vanishes");

  if (const auto* s = std::get_if<NumberState>(&state)) {
    if (s->n <= 1) throw InputError("no collapse: number state with N <= 1");
    const double ratio = (1.0 - std::exp(-2.0 / (s->n - 1.0))) / basis.mixing();
    if (ratio > 1.0) throw InputError("no collapse: envelope never reaches 1/e");
    return std::asin(std::sqrt(ratio)) / chi;
  }
  const double nbar = std::get<CoherentState>(state).nbar;
  if (2.0 * nbar < 1.0) throw InputError("no collapse: 2 nbar < 1");
  const double a_eff = 2.0 * chi;
  return 4.0 / a_eff * std::asin(1.0 / std::sqrt(2.0 * nbar));
}

double carrier_frequency(const IntensityTrace& trace) {
  const double dt = grid_step(trace);
  const auto& t = trace.times;
  const auto& y = trace.intensity;
  const double center = mean_of(y);

  // Pre-collapse window: until the contrast first halves.
  std::size_t end = y.size();
  const auto samples = oscillation_contrast(trace, center);
  if (!samples.empty()) {
    for (const auto& s : samples) {
      if (s.contrast < 0.5 * samples.front().contrast) {
        end = std::min(y.size(), static_cast<std::size_t>(std::ceil(s.t / dt)) + 1);
        break;
      }
    }
  }

  auto crossings = [&](const std::vector<double>& reference, std::size_t from, std::size_t to) {
    std::vector<double> out;
    for (std::size_t k = from; k + 1 < to; ++k) {
      const double a = y[k] - reference[k];
      const double b = y[k + 1] - reference[k + 1];
      if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
        out.push_back(t[k] + a / (a - b) * (t[k + 1] - t[k]));
      }
    }
    return out;
  };

  const std::vector<double> flat(y.size(), center);
  const auto rough = crossings(flat, 0, end);
  if (rough.size() < 3) throw InputError("insufficient resolution: fewer than three zero crossings");
  const double period = 2.0 * (rough.back() - rough.front()) / static_cast<double>(rough.size() - 1);
  if (period / dt < 10.0) {
    throw InputError("insufficient resolution: fewer than 10 samples per carrier period");
  }

  // Centred running mean over one carrier period.
  const auto half = static_cast<std::size_t>(std::lround(0.5 * period / dt));
  std::vector<double> prefix(y.size() + 1, 0.0);
  for (std::size_t k = 0; k < y.size(); ++k) prefix[k + 1] = prefix[k] + y[k];
  std::vector<double> running(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    const std::size_t lo = k >= half ? k - half : 0;
    const std::size_t hi = std::min(y.size(), k + half + 1);
    running[k] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
  }

  const std::size_t from = std::min(half, end);
  const std::size_t to = end > half + from ? end - half : end;
  auto fine = crossings(running, from, to);
  if (fine.size() < 3) fine = crossings(running, 0, end);
  if (fine.size() < 3) throw InputError("insufficient resolution: carrier not resolved");
  const double spacing = (fine.back() - fine.front()) / static_cast<double>(fine.size() - 1);
  return std::numbers::pi / spacing;
}

TraceComparison compare_traces(const IntensityTrace& a, const IntensityTrace& b) {
  if (a.times.size() != b.times.size() || a.times != b.times) {
    throw InputError("trace grids differ");
  }
  if (a.intensity.size() != a.times.size() || b.intensity.size() != b.times.size()) {
    throw InputError("malformed trace");
  }
  TraceComparison out;
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    const double diff = std::abs(a.intensity[k] - b.intensity[k]);
    sum_sq += diff * diff;
    if (diff > out.max_abs) {
      out.max_abs = diff;
      out.argmax_t = a.times[k];
    }
  }
  out.rms = a.times.empty() ? 0.0 : std::sqrt(sum_sq / static_cast<double>(a.times.size()));
  return out;
}

}  // namespace polariton
