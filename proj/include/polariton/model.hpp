#pragma once

// Physical parameters of the single-mode exciton/cavity system and the
// linear (Hopfield) diagonalization that every other module builds on.
//
// Units: hbar = 1, every frequency is expressed in one caller-chosen unit.

#include <stdexcept>
#include <string>

namespace polariton {

/// Thrown for inputs that violate a documented precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ModelParams {
  double omega_c = 0.0;   // cavity mode
  double omega_ex = 0.0;  // exciton mode
  double g = 1.0;         // linear exciton-photon coupling
  double A = 0.0;         // exciton-exciton interaction
  double B = 0.0;         // phase-space filling coupling
  double gamma1 = 0.0;    // lower-branch linewidth
  double gamma2 = 0.0;    // upper-branch linewidth

  double detuning() const { return omega_c - omega_ex; }
  double total_decay() const { return gamma1 + gamma2; }

  /// Throws InputError unless g > 0 and A, B, gamma1, gamma2 >= 0 (all finite).
  void validate() const;
};

/// True when n_max * max(A, B) exceeds 0.2 g, i.e. the weak-nonlinearity
/// premise of the secular Hamiltonian is no longer comfortably satisfied.
/// This is advisory only.
bool weak_nonlinearity_exceeded(const ModelParams& params, double n_max);

/// Hopfield rotation and the polariton-picture coefficients.
///
///   p1 = -v a + u b,   p2 = u a + v b,   u = sin(theta), v = cos(theta)
///
/// theta is the half-angle of the planar vector (-delta, 2g), so it lies in
/// (0, pi/2), equals pi/4 on resonance and moves towards pi/2 when the
/// cavity is tuned far above the exciton.
struct PolaritonBasis {
  double delta = 0.0;   // omega_c - omega_ex
  double Delta = 0.0;   // omega2 - omega1 = sqrt(delta^2 + 4 g^2)
  double theta = 0.0;
  double u = 0.0;
  double v = 0.0;
  double omega1 = 0.0;  // lower branch
  double omega2 = 0.0;  // upper branch
  double A11 = 0.0;
  double A22 = 0.0;
  double A12 = 0.0;

  /// 2 A12 - A11 - A22; sets the period pi/|chi| of the slow modulation.
  double chi() const { return 2.0 * A12 - A11 - A22; }
  /// sin^2(2 theta) = 4 u^2 v^2.
  double mixing() const { return 4.0 * u * u * v * v; }
};

PolaritonBasis build_polariton_basis(const ModelParams& params);

/// Material constants entering the nonlinear couplings.
struct MaterialInputs {
  double Ry_ex = 0.0;  // exciton binding energy (frequency units)
  double a_ex = 0.0;   // 2-D Bohr radius
  double S = 0.0;      // quantization area (same length unit squared)
  double g = 0.0;      // linear coupling
};

struct NonlinearCoefficients {
  double A = 0.0;
  double B = 0.0;
};

/// A = 3 Ry_ex a_ex^2 / S and B = g / (n_sat S) with n_sat = 7 / (16 pi a_ex^2).
NonlinearCoefficients material_coefficients(const MaterialInputs& m);

/// Stable 64-bit FNV-1a digest over the bit patterns of all parameters,
/// rendered as 16 lowercase hex digits.
std::string params_digest(const ModelParams& params);

}  // namespace polariton
