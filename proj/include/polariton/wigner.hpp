#pragma once

// Wigner small-d matrices d^j_{m',m}(beta) = <j,m'| exp(-i beta J_y) |j,m>.
//
// With the Schwinger pairing used throughout (J_z = (b'b - a'a)/2,
// J_+ = b'a) the state |j,m> holds j+m excitons and j-m photons, so the
// d-matrix of order j = n/2 is exactly the two-mode rotation restricted to
// the block with n quanta.

#include <Eigen/Dense>

namespace polariton {

/// Half-integer quantum number stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt from_int(int value) { return HalfInt(2 * value); }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }

  friend constexpr bool operator==(HalfInt, HalfInt) = default;

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

/// Top row d^j_{j,m}(phi) from the closed form
///   (-1)^{j-m} C(2j, j+m)^{1/2} cos^{j+m}(phi/2) sin^{j-m}(phi/2).
/// Throws InputError for |m| > j or mismatched parity.
double wigner_d_top_row(HalfInt j, HalfInt m, double phi);

/// Same element obtained by descending from d^j_{j,j} = cos^{2j}(phi/2) with
///   d^j_{j,m} = -tan(phi/2) sqrt((j+m+1)/(j-m)) d^j_{j,m+1}.
/// Requires cos(phi/2) != 0 whenever m < j.
double wigner_d_top_row_recursive(HalfInt j, HalfInt m, double phi);

/// General element from Wigner's finite sum.
double wigner_d(HalfInt j, HalfInt mp, HalfInt m, double beta);

/// Full (2j+1) x (2j+1) matrix, row index j+m', column index j+m.
Eigen::MatrixXd wigner_d_matrix(HalfInt j, double beta);

}  // namespace polariton
