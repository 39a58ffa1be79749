// polariton: simulate, compare and analyze microcavity emission traces.
//
// Exit status: 0 success, 1 comparison exceeded --tolerance, 2 invalid input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polariton/analysis.hpp"
#include "polariton/closedform.hpp"
#include "polariton/model.hpp"
#include "polariton/scenario.hpp"

namespace {

using namespace polariton;

struct Options {
  std::string config_path;
  std::string preset;
  std::string output_path;
  std::vector<std::string> methods;
  std::vector<std::string> inputs;
  std::optional<double> tolerance;
  std::string formula;
};

ScenarioConfig resolve_config(const Options& opt) {
  ScenarioConfig config;
  if (!opt.config_path.empty()) config = load_config(opt.config_path);
  if (!opt.preset.empty()) {
    if (opt.config_path.empty()) {
      const Preset* p = find_preset(opt.preset);
      if (p == nullptr) throw InputError("unknown preset '" + opt.preset + "'");
      config = p->config;
    } else {
      apply_preset(config, opt.preset);
    }
  }
  if (opt.config_path.empty() && opt.preset.empty()) {
    throw InputError("either --config or --preset is required");
  }
  if (!opt.methods.empty()) {
    config.methods.clear();
    for (const auto& m : opt.methods) {
      auto parsed = parse_method(m);
      if (!parsed) throw InputError("unknown method '" + m + "'");
      config.methods.push_back(*parsed);
    }
  }
  if (opt.tolerance) config.tolerance = opt.tolerance;
  if (!opt.formula.empty()) {
    auto f = parse_formula(opt.formula);
    if (!f) throw InputError("formula must be 'exact' or 'printed'");
    config.formula = *f;
  }
  validate(config);
  return config;
}

void warn_if_strong(const ScenarioConfig& config, const IntensityTrace& trace) {
  if (trace.meta.weak_nonlinearity_flagged ||
      weak_nonlinearity_exceeded(config.params, excitation(config.state))) {
    std::cerr << "warning: n*max(A,B) exceeds the weak-nonlinearity range; secular results may be inaccurate\n";
  }
}

// Writes to --output when given, stdout otherwise.
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open output '" + path + "'");
  fn(out);
  if (!out) throw InputError("failed writing '" + path + "'");
}

IntensityTrace read_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input '" + path + "'");
  return read_trace_csv(in);
}

int cmd_simulate(const Options& opt) {
  const auto config = resolve_config(opt);
  if (config.methods.size() != 1) throw InputError("simulate takes exactly one method");
  const auto trace = run_method(config, config.methods.front());
  warn_if_strong(config, trace);
  std::optional<std::vector<double>> envelope;
  if (config.emit_envelope) {
    envelope = closed_form_envelope(config.params, config.state, config.grid(), config.formula);
  }
  with_output(opt.output_path, [&](std::ostream& out) {
    write_trace_csv(out, config, trace, envelope ? &*envelope : nullptr);
  });
  if (config.emit_report) {
    const auto basis = build_polariton_basis(config.params);
    std::optional<double> estimate;
    try {
      estimate = collapse_time_estimate(config.state, config.params, basis);
    } catch (const InputError&) {
    }
    RevivalOptions options;
    options.decay_rate = 0.5 * config.params.total_decay();
    std::cerr << format_report(detect_revivals(trace, options), estimate);
  }
  return 0;
}

int cmd_compare(const Options& opt) {
  IntensityTrace a;
  IntensityTrace b;
  std::string label_a;
  std::string label_b;
  std::string header;
  std::optional<double> tolerance = opt.tolerance;

  if (!opt.inputs.empty()) {
    if (opt.inputs.size() != 2) throw InputError("compare needs exactly two --input files");
    a = read_trace_file(opt.inputs[0]);
    b = read_trace_file(opt.inputs[1]);
    label_a = std::string(to_string(a.method));
    label_b = std::string(to_string(b.method));
    header = "# compare " + opt.inputs[0] + " " + opt.inputs[1];
  } else {
    const auto config = resolve_config(opt);
    if (config.methods.size() != 2) throw InputError("compare needs exactly two methods");
    a = run_method(config, config.methods[0]);
    b = run_method(config, config.methods[1]);
    warn_if_strong(config, b);
    label_a = std::string(to_string(config.methods[0]));
    label_b = std::string(to_string(config.methods[1]));
    header = csv_header(config, label_a + "-" + label_b, false);
    tolerance = config.tolerance;
  }
  if (label_a == label_b) {
    label_a += "_a";
    label_b += "_b";
  }
  const auto summary = compare_traces(a, b);
  with_output(opt.output_path, [&](std::ostream& out) {
    write_comparison_csv(out, header, a, b, label_a, label_b, summary);
  });
  if (!opt.output_path.empty() && opt.output_path != "-") std::cerr << summary_line(summary) << '\n';
  return tolerance && summary.max_abs > *tolerance ? 1 : 0;
}

int cmd_analyze(const Options& opt) {
  IntensityTrace trace;
  std::optional<double> estimate;
  RevivalOptions options;
  if (!opt.inputs.empty()) {
    if (opt.inputs.size() != 1) throw InputError("analyze takes one --input file");
    trace = read_trace_file(opt.inputs.front());
  } else {
    const auto config = resolve_config(opt);
    trace = run_method(config, config.methods.front());
    warn_if_strong(config, trace);
    options.decay_rate = 0.5 * config.params.total_decay();
    try {
      estimate = collapse_time_estimate(config.state, config.params,
                                        build_polariton_basis(config.params));
    } catch (const InputError&) {
    }
  }
  const auto report = detect_revivals(trace, options);
  with_output(opt.output_path, [&](std::ostream& out) { out << format_report(report, estimate); });
  return 0;
}

int cmd_presets() {
  for (const auto& p : presets()) std::cout << p.name << "  " << p.description << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Emission dynamics of a nonlinear exciton-photon microcavity"};
  app.require_subcommand(1);
  Options opt;

  auto add_scenario_flags = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "scenario file (key = value)");
    sub->add_option("--preset", opt.preset, "figure preset, see `presets`");
    sub->add_option("--output", opt.output_path, "output path (default stdout)");
    sub->add_option("--method", opt.methods,
                    "closed_general|closed_resonant|oracle_secular|oracle_full (repeatable)");
    sub->add_option("--formula", opt.formula, "closed-form variant: exact|printed");
  };

  auto* simulate = app.add_subcommand("simulate", "write an intensity trace as CSV");
  add_scenario_flags(simulate);

  auto* compare = app.add_subcommand("compare", "compare two methods or two trace files");
  add_scenario_flags(compare);
  compare->add_option("--tolerance", opt.tolerance, "exit 1 when max_abs exceeds this");
  compare->add_option("--input", opt.inputs, "trace CSV (give twice)");

  auto* analyze = app.add_subcommand("analyze", "collapse/revival report for a trace");
  add_scenario_flags(analyze);
  analyze->add_option("--input", opt.inputs, "trace CSV");

  auto* list = app.add_subcommand("presets", "list figure presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (auto& c : msg) if (c == '\n') c = ' ';
    std::cerr << "error: " << msg << '\n';
    return 2;
  }

  try {
    if (*simulate) return cmd_simulate(opt);
    if (*compare) return cmd_compare(opt);
    if (*analyze) return cmd_analyze(opt);
    if (*list) return cmd_presets();
  } catch (const std::exception& e) {
    std::string msg = e.what();
    for (auto& c : msg) if (c == '\n') c = ' ';
    std::cerr << "error: " << msg << '\n';
    return 2;
  }
  return 2;
}
