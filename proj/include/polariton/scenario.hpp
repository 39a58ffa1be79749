#pragma once

// Scenario configuration, figure presets and deterministic CSV I/O used by
// the command-line front end.
//
// Config files are flat `key = value` lines; `[section]` headers and lines
// starting with '#' or ';' are ignored. Recognized keys:
//   omega_c omega_ex g A B gamma1 gamma2   physics
//   state (number|coherent) n nbar phi      initial state
//   t_end n_samples                         time grid
//   method (one, or two comma-separated for compare)
//   preset tolerance formula (exact|printed) outputs (intensity,envelope,report)
// A preset supplies every physics and state key; explicit physics keys are
// then ignored, while grid, method and the remaining keys still apply.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polariton/analysis.hpp"
#include "polariton/model.hpp"
#include "polariton/trace.hpp"

namespace polariton {

struct ScenarioConfig {
  ModelParams params;
  InitialState state = NumberState{1};
  double t_end = 10.0;
  std::size_t n_samples = 20000;
  std::vector<Method> methods{Method::closed_general};
  Formula formula = Formula::exact;
  bool emit_envelope = false;
  bool emit_report = false;
  std::optional<double> tolerance;
  std::optional<std::string> preset;

  TimeGrid grid() const { return TimeGrid(t_end, n_samples); }
};

struct Preset {
  std::string name;
  std::string description;
  ScenarioConfig config;
};

/// fig1a-d, fig2a-d, fig3a-d; time unit 1/gamma, g = 1000.
const std::vector<Preset>& presets();
const Preset* find_preset(std::string_view name);

/// Throws InputError on unknown keys, malformed values or unknown presets.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

/// Replaces everything but the grid/method/output keys with the preset's.
void apply_preset(ScenarioConfig& config, std::string_view name);

/// Checks method-specific requirements (resonance, zero decay, state ranges).
void validate(const ScenarioConfig& config);

/// Builds the trace for one method, dispatching to closed form or oracle.
IntensityTrace run_method(const ScenarioConfig& config, Method method);

/// Shortest round-trip scientific rendering (std::to_chars).
std::string format_double(double x);

/// `# method=<m> state=<s> n=<..> g=<..> A=<..> B=<..> delta=<..> gamma1=<..> gamma2=<..>`
/// plus ` formula=printed` for the printed closed forms.
std::string csv_header(const ScenarioConfig& config, std::string_view method_label,
                       bool closed_form);

void write_trace_csv(std::ostream& out, const ScenarioConfig& config, const IntensityTrace& trace,
                     const std::vector<double>* envelope = nullptr);

/// Reads `t,intensity[,...]` rows back; the method is taken from the header.
IntensityTrace read_trace_csv(std::istream& in);

/// Per-sample difference rows and the trailing `max_abs=<v> rms=<v>` line.
void write_comparison_csv(std::ostream& out, const std::string& header_line,
                          const IntensityTrace& a, const IntensityTrace& b,
                          std::string_view label_a, std::string_view label_b,
                          const TraceComparison& summary);

std::string summary_line(const TraceComparison& summary);

/// `key=value` lines describing a revival report.
std::string format_report(const RevivalReport& report, std::optional<double> collapse_estimate);

}  // namespace polariton
