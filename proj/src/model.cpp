#include "polariton/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>

namespace polariton {

void ModelParams::validate() const {
  const double all[] = {omega_c, omega_ex, g, A, B, gamma1, gamma2};
  for (double x : all) {
    if (!std::isfinite(x)) throw InputError("model parameters must be finite");
  }
  if (!(g > 0.0)) throw InputError("coupling g must be positive");
  if (A < 0.0) throw InputError("A must be non-negative");
  if (B < 0.0) throw InputError("B must be non-negative");
  if (gamma1 < 0.0 || gamma2 < 0.0) throw InputError("decay rates must be non-negative");
}

bool weak_nonlinearity_exceeded(const ModelParams& params, double n_max) {
  return n_max * std::max(params.A, params.B) > 0.2 * params.g;
}

PolaritonBasis build_polariton_basis(const ModelParams& params) {
  params.validate();

  PolaritonBasis basis;
  const double g = params.g;
  basis.delta = params.detuning();
  basis.Delta = std::hypot(basis.delta, 2.0 * g);
  // 2 theta is the polar angle of (-delta, 2g); g > 0 keeps it inside (0, pi).
  basis.theta = 0.5 * std::atan2(2.0 * g, -basis.delta);
  basis.u = std::sin(basis.theta);
  basis.v = std::cos(basis.theta);

  const double mean = 0.5 * (params.omega_c + params.omega_ex);
  basis.omega1 = mean - 0.5 * basis.Delta;
  basis.omega2 = mean + 0.5 * basis.Delta;

  const double u = basis.u;
  const double v = basis.v;
  const double A = params.A;
  const double B = params.B;
  basis.A11 = u * u * u * (A * u + 2.0 * B * v);
  basis.A22 = v * v * v * (A * v - 2.0 * B * u);
  basis.A12 = 2.0 * u * v * (A * u * v - B * (u * u - v * v));
  return basis;
}

NonlinearCoefficients material_coefficients(const MaterialInputs& m) {
  const double all[] = {m.Ry_ex, m.a_ex, m.S, m.g};
  for (double x : all) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw InputError("material inputs must be finite and strictly positive");
    }
  }
  const double a2 = m.a_ex * m.a_ex;
  const double n_sat = 7.0 / (16.0 * std::numbers::pi * a2);
  return {3.0 * m.Ry_ex * a2 / m.S, m.g / (n_sat * m.S)};
}

std::string params_digest(const ModelParams& params) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  const double all[] = {params.omega_c, params.omega_ex, params.g,     params.A,
                        params.B,       params.gamma1,   params.gamma2};
  for (double x : all) {
    auto bits = std::bit_cast<std::uint64_t>(x);
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (bits >> (8 * byte)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace polariton
