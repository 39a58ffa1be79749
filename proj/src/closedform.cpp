#include "polariton/closedform.hpp"

#include <cmath>

#include "polariton/wigner.hpp"

namespace polariton {
namespace {

using cplx = std::complex<double>;
constexpr cplx I_unit{0.0, 1.0};

void require_resonance(const ModelParams& params) {
  if (std::abs(params.detuning()) > 1e-12 * params.g) {
    throw InputError("resonant evaluator requires omega_c == omega_ex");
  }
}

// e^{-i Delta t} for the exact rendering, e^{+i Delta t} for the printed one.
cplx beat(const PolaritonBasis& basis, double t, Formula formula) {
  const double sign = formula == Formula::exact ? -1.0 : 1.0;
  return std::polar(1.0, sign * basis.Delta * t);
}

cplx integer_power(cplx base, int exponent) {
  cplx result = 1.0;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

cplx slow_bracket(const PolaritonBasis& basis, double t) {
  return basis.u * basis.u + basis.v * basis.v * std::exp(2.0 * I_unit * basis.chi() * t);
}

IntensityTrace make_trace(const ModelParams& params, const TimeGrid& grid, Method method,
                          InitialState state, Formula formula) {
  IntensityTrace trace;
  trace.times = grid.times();
  trace.intensity.resize(grid.size());
  trace.method = method;
  trace.state = state;
  trace.params_digest = params_digest(params);
  trace.meta.formula = formula;
  return trace;
}

}  // namespace

double intensity_number_at(const PolaritonBasis& basis, const ModelParams& params, int n, double t,
                           Formula formula) {
  if (n < 0) throw InputError("number state needs N >= 0");
  if (n == 0) return 0.0;
  const double half_n = 0.5 * n;
  const double mixing = basis.mixing();
  const double decay = std::exp(-0.5 * params.total_decay() * t);
  const cplx slow = std::exp(2.0 * I_unit * (basis.A11 - basis.A12) * double(n - 1) * t) *
                    integer_power(slow_bracket(basis, t), n - 1);
  const cplx modulated = beat(basis, t, formula) * decay * slow;
  return half_n * mixing - half_n * mixing * modulated.real();
}

IntensityTrace intensity_number(const ModelParams& params, const PolaritonBasis& basis, int n,
                                const TimeGrid& grid, Formula formula) {
  if (n < 0) throw InputError("number state needs N >= 0");
  auto trace = make_trace(params, grid, Method::closed_general, NumberState{n}, formula);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    trace.intensity[k] = intensity_number_at(basis, params, n, trace.times[k], formula);
  }
  return trace;
}

double intensity_number_resonant_at(const ModelParams& params, int n, double t, Formula formula) {
  require_resonance(params);
  if (n < 0) throw InputError("number state needs N >= 0");
  if (n == 0) return 0.0;
  const double shift = params.B * double(n - 1);
  const double carrier = formula == Formula::exact ? 2.0 * params.g - shift : 2.0 * params.g + shift;
  const double envelope = std::pow(std::cos(0.5 * params.A * t), n - 1);
  const double decay = std::exp(-0.5 * params.total_decay() * t);
  return 0.5 * n * (1.0 - std::cos(carrier * t) * envelope * decay);
}

IntensityTrace intensity_number_resonant(const ModelParams& params, int n, const TimeGrid& grid,
                                         Formula formula) {
  require_resonance(params);
  if (n < 0) throw InputError("number state needs N >= 0");
  auto trace = make_trace(params, grid, Method::closed_resonant, NumberState{n}, formula);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    trace.intensity[k] = intensity_number_resonant_at(params, n, trace.times[k], formula);
  }
  return trace;
}

double intensity_coherent_at(const PolaritonBasis& basis, const ModelParams& params, double nbar,
                             double t, Formula formula) {
  if (!(nbar >= 0.0)) throw InputError("coherent state needs nbar >= 0");
  const double mixing = basis.mixing();
  const double decay = std::exp(-0.5 * params.total_decay() * t);
  const cplx bracket = slow_bracket(basis, t);

  cplx slow;
  if (formula == Formula::exact) {
    // Poisson sum over N of N z^{N-1} e^{-nbar} nbar^N / N! = nbar exp(nbar (z - 1)).
    const cplx z = std::exp(2.0 * I_unit * (basis.A11 - basis.A12) * t) * bracket;
    slow = std::exp(nbar * (z - 1.0));
  } else {
    const cplx w = std::exp(-I_unit * basis.chi() * t) * bracket;
    slow = std::exp(I_unit * (basis.A11 - basis.A22) * (nbar - 1.0) * t) * std::exp(nbar * (w - 1.0));
  }
  const cplx modulated = beat(basis, t, formula) * decay * slow;
  return 0.5 * nbar * mixing - 0.5 * nbar * mixing * modulated.real();
}

IntensityTrace intensity_coherent(const ModelParams& params, const PolaritonBasis& basis,
                                  const CoherentState& state, const TimeGrid& grid,
                                  Formula formula) {
  auto trace = make_trace(params, grid, Method::closed_general, state, formula);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    trace.intensity[k] = intensity_coherent_at(basis, params, state.nbar, trace.times[k], formula);
  }
  return trace;
}

double intensity_coherent_resonant_at(const ModelParams& params, double nbar, double t,
                                      Formula formula) {
  require_resonance(params);
  if (!(nbar >= 0.0)) throw InputError("coherent state needs nbar >= 0");
  const double decay = std::exp(-0.5 * params.total_decay() * t);
  const double half_cos = std::cos(0.5 * params.A * t);
  if (formula == Formula::printed) {
    const double carrier = 2.0 * params.g + params.B * (nbar - 1.0);
    const double s = std::sin(0.25 * params.A * t);
    return 0.5 * nbar * (1.0 - std::cos(carrier * t) * std::exp(-2.0 * nbar * s * s) * decay);
  }
  // exp(nbar (e^{iBt} cos(At/2) - 1)) against the e^{-2igt} beat.
  const double bt = params.B * t;
  const double phase = 2.0 * params.g * t - nbar * std::sin(bt) * half_cos;
  const double magnitude = std::exp(nbar * (std::cos(bt) * half_cos - 1.0));
  return 0.5 * nbar * (1.0 - std::cos(phase) * magnitude * decay);
}

IntensityTrace intensity_coherent_resonant(const ModelParams& params, const CoherentState& state,
                                           const TimeGrid& grid, Formula formula) {
  require_resonance(params);
  auto trace = make_trace(params, grid, Method::closed_resonant, state, formula);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    trace.intensity[k] = intensity_coherent_resonant_at(params, state.nbar, trace.times[k], formula);
  }
  return trace;
}

std::complex<double> cross_coherence_number(const ModelParams& params, const PolaritonBasis& basis,
                                            int n, double t) {
  if (n < 1) throw InputError("cross-coherence needs N >= 1");
  const HalfInt j = HalfInt::from_twice(n);
  const double rotation = 2.0 * basis.theta;

  // Rotated frame: |j,m> carries n2 = j+m upper and n1 = j-m lower polaritons.
  // p1'p2 = -R J_- R', so each term links m to m-1.
  cplx sum = 0.0;
  double d_upper = wigner_d_top_row(j, j, rotation);
  for (int twice_m = n; twice_m > -n; twice_m -= 2) {
    const HalfInt m_lower = HalfInt::from_twice(twice_m - 2);
    const double d_lower = wigner_d_top_row(j, m_lower, rotation);
    const int n2 = (n + twice_m) / 2;
    const int n1 = n - n2;
    const double ladder = std::sqrt(double(n2) * double(n1 + 1));
    const double frequency = -basis.Delta + 2.0 * basis.A11 * n1 - 2.0 * basis.A22 * (n2 - 1) +
                             2.0 * basis.A12 * (n2 - n1 - 1);
    sum -= d_lower * d_upper * ladder * std::polar(1.0, frequency * t);
    d_upper = d_lower;
  }
  return sum * std::exp(-0.5 * params.total_decay() * t);
}

double envelope_number(int n, const PolaritonBasis& basis, double t) {
  if (n < 0) throw InputError("number state needs N >= 0");
  if (n == 0) return 0.0;
  return std::pow(std::abs(slow_bracket(basis, t)), n - 1);
}

double envelope_coherent(double nbar, const PolaritonBasis& basis, double t, Formula formula) {
  if (!(nbar >= 0.0)) throw InputError("coherent state needs nbar >= 0");
  if (formula == Formula::printed) {
    return std::exp(nbar * (std::cos(basis.chi() * t) - 1.0));
  }
  const cplx z = std::exp(2.0 * I_unit * (basis.A11 - basis.A12) * t) * slow_bracket(basis, t);
  return std::exp(nbar * (z.real() - 1.0));
}

IntensityTrace closed_form_intensity(const ModelParams& params, const InitialState& state,
                                     const TimeGrid& grid, Method method, Formula formula) {
  if (method == Method::closed_resonant) {
    if (const auto* s = std::get_if<NumberState>(&state)) {
      return intensity_number_resonant(params, s->n, grid, formula);
    }
    return intensity_coherent_resonant(params, std::get<CoherentState>(state), grid, formula);
  }
  if (method != Method::closed_general) throw InputError("not a closed-form method");
  const auto basis = build_polariton_basis(params);
  if (const auto* s = std::get_if<NumberState>(&state)) {
    return intensity_number(params, basis, s->n, grid, formula);
  }
  return intensity_coherent(params, basis, std::get<CoherentState>(state), grid, formula);
}

std::vector<double> closed_form_envelope(const ModelParams& params, const InitialState& state,
                                         const TimeGrid& grid, Formula formula) {
  const auto basis = build_polariton_basis(params);
  std::vector<double> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid.at(k);
    if (const auto* s = std::get_if<NumberState>(&state)) {
      out[k] = envelope_number(s->n, basis, t);
    } else {
      out[k] = envelope_coherent(std::get<CoherentState>(state).nbar, basis, t, formula);
    }
  }
  return out;
}

}  // namespace polariton
