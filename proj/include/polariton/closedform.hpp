#pragma once

// Closed-form light intensity I(t) = <a'(t) a(t)> for excitons prepared in a
// number or coherent state with the cavity in vacuum, under the secular
// polariton Hamiltonian
//
//   H = sum_j w_j n_j + A11 n1(n1-1) + A22 n2(n2-1) + 2 A12 n1 n2.
//
// The intensity splits into a constant part and a beat carried by the
// cross-coherence <p1'(t) p2(t)>, damped by exp(-(gamma1+gamma2) t / 2):
//
//   I(t) = u^2 <n2> + v^2 <n1> - 2 u v Re{ e^{-Gamma t} <p1'(t) p2(t)> }.
//
// Every evaluator takes a Formula; see trace.hpp for the two renderings.

#include <complex>

#include "polariton/model.hpp"
#include "polariton/trace.hpp"

namespace polariton {

double intensity_number_at(const PolaritonBasis& basis, const ModelParams& params, int n, double t,
                           Formula formula = Formula::exact);

/// Number-state intensity on a grid. N = 0 gives an all-zero trace.
IntensityTrace intensity_number(const ModelParams& params, const PolaritonBasis& basis, int n,
                                const TimeGrid& grid, Formula formula = Formula::exact);

/// Resonant number-state intensity
///   (N/2) {1 - cos[(2g -+ B(N-1)) t] cos^{N-1}(A t/2) e^{-Gamma t}},
/// with the minus sign for Formula::exact and the plus sign for the printed
/// rendering. Throws InputError unless omega_c == omega_ex.
double intensity_number_resonant_at(const ModelParams& params, int n, double t,
                                    Formula formula = Formula::exact);
IntensityTrace intensity_number_resonant(const ModelParams& params, int n, const TimeGrid& grid,
                                         Formula formula = Formula::exact);

double intensity_coherent_at(const PolaritonBasis& basis, const ModelParams& params, double nbar,
                             double t, Formula formula = Formula::exact);

/// Coherent-state intensity. The phase of beta never enters.
IntensityTrace intensity_coherent(const ModelParams& params, const PolaritonBasis& basis,
                                  const CoherentState& state, const TimeGrid& grid,
                                  Formula formula = Formula::exact);

double intensity_coherent_resonant_at(const ModelParams& params, double nbar, double t,
                                      Formula formula = Formula::exact);
IntensityTrace intensity_coherent_resonant(const ModelParams& params, const CoherentState& state,
                                           const TimeGrid& grid, Formula formula = Formula::exact);

/// <p1'(t) p2(t)> for |N> (decay included), assembled from the top row of
/// the d-matrix d^{N/2}(2 theta) and the J_- ladder element. Requires N >= 1.
std::complex<double> cross_coherence_number(const ModelParams& params, const PolaritonBasis& basis,
                                            int n, double t);

/// |sin^2(theta) + cos^2(theta) e^{2 i chi t}|^{N-1}; reduces to
/// |cos(A t/2)|^{N-1} on resonance. Zero for N = 0.
double envelope_number(int n, const PolaritonBasis& basis, double t);

/// Magnitude of the slow factor of the coherent-state cross term.
/// printed: exp(nbar (cos(chi t) - 1)) = exp(-2 nbar sin^2(chi t / 2));
/// exact:   exp(nbar (Re z(t) - 1)), z = e^{2i(A11-A12)t}(u^2 + v^2 e^{2 i chi t}).
double envelope_coherent(double nbar, const PolaritonBasis& basis, double t,
                         Formula formula = Formula::exact);

/// Intensity of any state through the matching closed form.
IntensityTrace closed_form_intensity(const ModelParams& params, const InitialState& state,
                                     const TimeGrid& grid, Method method,
                                     Formula formula = Formula::exact);

/// Envelope of the state's slow modulation, sampled on the grid.
std::vector<double> closed_form_envelope(const ModelParams& params, const InitialState& state,
                                         const TimeGrid& grid, Formula formula = Formula::exact);

}  // namespace polariton
