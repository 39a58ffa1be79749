#include "polariton/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "polariton/closedform.hpp"
#include "polariton/oracle.hpp"

namespace polariton {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw InputError("invalid number for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return value;
}

long long parse_integer(std::string_view key, std::string_view text) {
  long long value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw InputError("invalid integer for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return value;
}

Method require_method(std::string_view text) {
  if (auto m = parse_method(text)) return *m;
  throw InputError("unknown method '" + std::string(text) + "'");
}

ScenarioConfig preset_config(double delta, double B, double gamma, InitialState state, double t_end,
                             Method method) {
  ScenarioConfig c;
  c.params.omega_ex = 0.0;
  c.params.omega_c = delta;
  c.params.g = 1000.0;
  c.params.A = 10.0;
  c.params.B = B;
  c.params.gamma1 = gamma;
  c.params.gamma2 = gamma;
  c.state = state;
  c.t_end = t_end;
  c.n_samples = 20000;
  c.methods = {method};
  c.preset.reset();
  return c;
}

}  // namespace

const std::vector<Preset>& presets() {
  // Time in units of 1/gamma with g = 1000 gamma, A = 0.01 g.
  static const std::vector<Preset> table = [] {
    const auto cr = Method::closed_resonant;
    const auto cg = Method::closed_general;
    std::vector<Preset> p;
    p.push_back({"fig1a", "number N=2, resonant, B=0, no dissipation",
                 preset_config(0.0, 0.0, 0.0, NumberState{2}, 2.0, cr)});
    p.push_back({"fig1b", "number N=2, resonant, B=0, gamma=1",
                 preset_config(0.0, 0.0, 1.0, NumberState{2}, 2.0, cr)});
    p.push_back({"fig1c", "number N=11, resonant, B=0, no dissipation",
                 preset_config(0.0, 0.0, 0.0, NumberState{11}, 2.0, cr)});
    p.push_back({"fig1d", "number N=11, resonant, B=0, gamma=1",
                 preset_config(0.0, 0.0, 1.0, NumberState{11}, 2.0, cr)});
    p.push_back({"fig2a", "number N=10, delta=0.2g, B=0",
                 preset_config(200.0, 0.0, 0.0, NumberState{10}, 5.0, cg)});
    p.push_back({"fig2b", "number N=10, delta=0.2g, B=0.3A",
                 preset_config(200.0, 3.0, 0.0, NumberState{10}, 5.0, cg)});
    // B = 0.3A, as in the neighbouring panels.
    p.push_back({"fig2c", "number N=10, delta=0.4g, B=0.3A",
                 preset_config(400.0, 3.0, 0.0, NumberState{10}, 5.0, cg)});
    p.push_back({"fig2d", "number N=10, delta=0.6g, B=0.3A",
                 preset_config(600.0, 3.0, 0.0, NumberState{10}, 5.0, cg)});
    p.push_back({"fig3a", "coherent nbar=2, resonant, B=0, no dissipation",
                 preset_config(0.0, 0.0, 0.0, CoherentState{2.0, 0.0}, 3.0, cr)});
    p.push_back({"fig3b", "coherent nbar=2, resonant, B=0, gamma=1",
                 preset_config(0.0, 0.0, 1.0, CoherentState{2.0, 0.0}, 3.0, cr)});
    p.push_back({"fig3c", "coherent nbar=11, resonant, B=0, no dissipation",
                 preset_config(0.0, 0.0, 0.0, CoherentState{11.0, 0.0}, 3.0, cr)});
    p.push_back({"fig3d", "coherent nbar=11, resonant, B=0, gamma=1",
                 preset_config(0.0, 0.0, 1.0, CoherentState{11.0, 0.0}, 3.0, cr)});
    for (auto& entry : p) entry.config.preset = entry.name;
    return p;
  }();
  return table;
}

const Preset* find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

void apply_preset(ScenarioConfig& config, std::string_view name) {
  const Preset* p = find_preset(name);
  if (p == nullptr) throw InputError("unknown preset '" + std::string(name) + "'");
  config.params = p->config.params;
  config.state = p->config.state;
  config.preset = p->name;
}

ScenarioConfig parse_config(std::string_view text) {
  std::map<std::string, std::string, std::less<>> values;
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw InputError("malformed section header on line " + std::to_string(line_no));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InputError("expected key = value on line " + std::to_string(line_no));
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    static const std::vector<std::string_view> known = {
        "omega_c", "omega_ex", "g",         "A",      "B",         "gamma1",  "gamma2",
        "state",   "n",        "nbar",      "phi",    "t_end",     "n_samples", "method",
        "preset",  "tolerance", "formula",  "outputs"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw InputError("unknown config key '" + key + "'");
    }
    values[key] = value;
  }

  ScenarioConfig config;
  auto get = [&](std::string_view key) -> const std::string* {
    auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };

  if (const auto* preset = get("preset")) {
    const Preset* p = find_preset(*preset);
    if (p == nullptr) throw InputError("unknown preset '" + *preset + "'");
    config = p->config;
  } else {
    auto& prm = config.params;
    if (auto* v = get("omega_c")) prm.omega_c = parse_double("omega_c", *v);
    if (auto* v = get("omega_ex")) prm.omega_ex = parse_double("omega_ex", *v);
    if (auto* v = get("g")) prm.g = parse_double("g", *v);
    if (auto* v = get("A")) prm.A = parse_double("A", *v);
    if (auto* v = get("B")) prm.B = parse_double("B", *v);
    if (auto* v = get("gamma1")) prm.gamma1 = parse_double("gamma1", *v);
    if (auto* v = get("gamma2")) prm.gamma2 = parse_double("gamma2", *v);

    const std::string kind = get("state") ? *get("state") : "number";
    if (kind == "number") {
      if (get("nbar")) throw InputError("'nbar' given for a number state");
      const long long n = get("n") ? parse_integer("n", *get("n")) : 1;
      if (n < 0 || n > 100000) throw InputError("'n' must lie in [0, 100000]");
      config.state = make_number_state(static_cast<int>(n));
    } else if (kind == "coherent") {
      if (get("n")) throw InputError("'n' given for a coherent state; use 'nbar'");
      const double nbar = get("nbar") ? parse_double("nbar", *get("nbar")) : 1.0;
      const double phi = get("phi") ? parse_double("phi", *get("phi")) : 0.0;
      config.state = make_coherent_state(nbar, phi);
    } else {
      throw InputError("state must be 'number' or 'coherent'");
    }
  }

  if (auto* v = get("t_end")) config.t_end = parse_double("t_end", *v);
  if (auto* v = get("n_samples")) {
    const long long n = parse_integer("n_samples", *v);
    if (n < 2) throw InputError("'n_samples' must be at least 2");
    config.n_samples = static_cast<std::size_t>(n);
  }
  if (auto* v = get("method")) {
    config.methods.clear();
    for (auto item : split(*v, ',')) config.methods.push_back(require_method(item));
  }
  if (auto* v = get("tolerance")) config.tolerance = parse_double("tolerance", *v);
  if (auto* v = get("formula")) {
    auto f = parse_formula(*v);
    if (!f) throw InputError("formula must be 'exact' or 'printed'");
    config.formula = *f;
  }
  if (auto* v = get("outputs")) {
    for (auto item : split(*v, ',')) {
      if (item == "envelope") {
        config.emit_envelope = true;
      } else if (item == "report") {
        config.emit_report = true;
      } else if (item != "intensity" && item != "comparison") {
        throw InputError("unknown output '" + std::string(item) + "'");
      }
    }
  }
  return config;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void validate(const ScenarioConfig& config) {
  config.params.validate();
  (void)config.grid();
  if (config.methods.empty()) throw InputError("no method selected");
  for (Method m : config.methods) {
    if (m == Method::closed_resonant && std::abs(config.params.detuning()) > 1e-12 * config.params.g) {
      throw InputError("closed_resonant requires omega_c == omega_ex");
    }
    if (m == Method::oracle_full && config.params.total_decay() != 0.0) {
      throw InputError("oracle_full requires gamma1 = gamma2 = 0");
    }
  }
  if (config.tolerance && !(*config.tolerance >= 0.0)) throw InputError("tolerance must be >= 0");
}

IntensityTrace run_method(const ScenarioConfig& config, Method method) {
  validate(config);
  const auto grid = config.grid();
  switch (method) {
    case Method::closed_general:
    case Method::closed_resonant:
      return closed_form_intensity(config.params, config.state, grid, method, config.formula);
    case Method::oracle_secular:
    case Method::oracle_full: {
      const auto basis = build_polariton_basis(config.params);
      const auto mode =
          method == Method::oracle_full ? HamiltonianMode::full : HamiltonianMode::secular;
      return oracle_intensity(config.params, basis, config.state, grid, mode);
    }
  }
  throw InputError("unknown method");
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

std::string csv_header(const ScenarioConfig& config, std::string_view method_label,
                       bool closed_form) {
  std::string out = "# method=";
  out += method_label;
  out += " state=";
  out += state_kind(config.state);
  out += " n=";
  if (const auto* s = std::get_if<NumberState>(&config.state)) {
    out += std::to_string(s->n);
  } else {
    out += format_double(std::get<CoherentState>(config.state).nbar);
  }
  const auto& p = config.params;
  out += " g=" + format_double(p.g);
  out += " A=" + format_double(p.A);
  out += " B=" + format_double(p.B);
  out += " delta=" + format_double(p.detuning());
  out += " gamma1=" + format_double(p.gamma1);
  out += " gamma2=" + format_double(p.gamma2);
  if (closed_form && config.formula == Formula::printed) out += " formula=printed";
  return out;
}

void write_trace_csv(std::ostream& out, const ScenarioConfig& config, const IntensityTrace& trace,
                     const std::vector<double>* envelope) {
  const bool closed =
      trace.method == Method::closed_general || trace.method == Method::closed_resonant;
  out << csv_header(config, to_string(trace.method), closed) << '\n';
  out << (envelope ? "t,intensity,envelope" : "t,intensity") << '\n';
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    out << format_double(trace.times[k]) << ',' << format_double(trace.intensity[k]);
    if (envelope) out << ',' << format_double((*envelope)[k]);
    out << '\n';
  }
}

IntensityTrace read_trace_csv(std::istream& in) {
  IntensityTrace trace;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# method=", 0) != 0) {
    throw InputError("trace CSV must start with a '# method=' header");
  }
  {
    const auto label = std::string_view(line).substr(9, line.find(' ', 9) - 9);
    if (auto m = parse_method(label)) trace.method = *m;
  }
  if (!std::getline(in, line) || line.rfind("t,intensity", 0) != 0) {
    throw InputError("trace CSV is missing the 't,intensity' column line");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() < 2) throw InputError("malformed trace row '" + line + "'");
    trace.times.push_back(parse_double("t", fields[0]));
    trace.intensity.push_back(parse_double("intensity", fields[1]));
  }
  return trace;
}

std::string summary_line(const TraceComparison& summary) {
  return "max_abs=" + format_double(summary.max_abs) + " rms=" + format_double(summary.rms);
}

void write_comparison_csv(std::ostream& out, const std::string& header_line,
                          const IntensityTrace& a, const IntensityTrace& b,
                          std::string_view label_a, std::string_view label_b,
                          const TraceComparison& summary) {
  out << header_line << '\n';
  out << "t," << label_a << ',' << label_b << ",diff\n";
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    out << format_double(a.times[k]) << ',' << format_double(a.intensity[k]) << ','
        << format_double(b.intensity[k]) << ',' << format_double(a.intensity[k] - b.intensity[k])
        << '\n';
  }
  out << summary_line(summary) << '\n';
}

std::string format_report(const RevivalReport& report, std::optional<double> collapse_estimate) {
  auto join = [](const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) s += ';';
      s += format_double(xs[i]);
    }
    return s;
  };
  std::ostringstream out;
  out << "status=" << report.status << '\n';
  out << "center_level=" << format_double(report.center_level) << '\n';
  out << "carrier_frequency="
      << (report.carrier_frequency ? format_double(*report.carrier_frequency) : "none") << '\n';
  out << "collapse_time="
      << (report.collapse_time ? format_double(*report.collapse_time) : "none") << '\n';
  out << "collapse_time_estimate="
      << (collapse_estimate ? format_double(*collapse_estimate) : "none") << '\n';
  out << "revival_times=" << join(report.revival_times) << '\n';
  out << "revival_amplitudes=" << join(report.revival_amplitudes) << '\n';
  out << "revival_periods=" << join(report.revival_periods()) << '\n';
  out << "decay_rate=" << format_double(report.decay_rate) << '\n';
  out << "grid_resolution=" << format_double(report.grid_resolution) << '\n';
  return out.str();
}

}  // namespace polariton
