#include "polariton/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "polariton/model.hpp"

namespace polariton {
namespace {

void check_pair(HalfInt j, HalfInt m) {
  if (j.twice() < 0) throw InputError("angular momentum j must be non-negative");
  if (std::abs(m.twice()) > j.twice()) throw InputError("|m| must not exceed j");
  if ((j.twice() - m.twice()) % 2 != 0) throw InputError("j and m must share parity");
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// Non-negative integer x^k with 0^0 = 1.
double ipow(double x, int k) { return k == 0 ? 1.0 : std::pow(x, k); }

}  // namespace

double wigner_d_top_row(HalfInt j, HalfInt m, double phi) {
  check_pair(j, m);
  const int jpm = (j.twice() + m.twice()) / 2;
  const int jmm = (j.twice() - m.twice()) / 2;
  const double log_binom = log_factorial(j.twice()) - log_factorial(jpm) - log_factorial(jmm);
  const double sign = (jmm % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(0.5 * log_binom) * ipow(std::cos(0.5 * phi), jpm) *
         ipow(std::sin(0.5 * phi), jmm);
}

double wigner_d_top_row_recursive(HalfInt j, HalfInt m, double phi) {
  check_pair(j, m);
  const double c = std::cos(0.5 * phi);
  const double t = std::tan(0.5 * phi);
  double d = ipow(c, j.twice());
  if (m == j) return d;
  if (c == 0.0) throw InputError("recursion undefined where cos(phi/2) = 0");
  // Walk m' = j-1, j-2, ..., m; each step uses d^j_{j,m'+1}.
  for (int mp2 = j.twice() - 2; mp2 >= m.twice(); mp2 -= 2) {
    const double jpm1 = 0.5 * (j.twice() + mp2) + 1.0;
    const double jmm = 0.5 * (j.twice() - mp2);
    d *= -t * std::sqrt(jpm1 / jmm);
  }
  return d;
}

double wigner_d(HalfInt j, HalfInt mp, HalfInt m, double beta) {
  check_pair(j, mp);
  check_pair(j, m);
  const int jpmp = (j.twice() + mp.twice()) / 2;
  const int jmmp = (j.twice() - mp.twice()) / 2;
  const int jpm = (j.twice() + m.twice()) / 2;
  const int jmm = (j.twice() - m.twice()) / 2;
  const int mp_minus_m = (mp.twice() - m.twice()) / 2;

  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  const double log_norm = 0.5 * (log_factorial(jpmp) + log_factorial(jmmp) +
                                 log_factorial(jpm) + log_factorial(jmm));

  const int s_min = std::max(0, -mp_minus_m);
  const int s_max = std::min(jpm, jmmp);
  double sum = 0.0;
  for (int k = s_min; k <= s_max; ++k) {
    const double log_den = log_factorial(jpm - k) + log_factorial(k) +
                           log_factorial(mp_minus_m + k) + log_factorial(jmmp - k);
    const double sign = ((mp_minus_m + k) % 2 == 0) ? 1.0 : -1.0;
    const int cos_power = jpm + jmmp - 2 * k;
    const int sin_power = mp_minus_m + 2 * k;
    sum += sign * std::exp(log_norm - log_den) * ipow(c, cos_power) * ipow(s, sin_power);
  }
  return sum;
}

Eigen::MatrixXd wigner_d_matrix(HalfInt j, double beta) {
  if (j.twice() < 0) throw InputError("angular momentum j must be non-negative");
  const int dim = j.twice() + 1;
  Eigen::MatrixXd d(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      d(r, c) = wigner_d(j, HalfInt::from_twice(2 * r - j.twice()),
                         HalfInt::from_twice(2 * c - j.twice()), beta);
    }
  }
  return d;
}

}  // namespace polariton
