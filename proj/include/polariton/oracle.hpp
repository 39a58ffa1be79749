#pragma once

// Brute-force reference dynamics in the truncated two-mode Fock space.
//
// Both the full Hamiltonian and the secular polariton Hamiltonian conserve
// the total number of quanta n = a'a + b'b, so the state splits into
// independent blocks of dimension n+1. Inside a block the basis index k
// counts excitons (photons = n - k), matching |j, m> with j = n/2, m = k - j.
// Each block is propagated exactly through its eigendecomposition.

#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "polariton/model.hpp"
#include "polariton/trace.hpp"

namespace polariton {

enum class HamiltonianMode { secular, full };
enum class PropagationPath { matrix_spectral, polariton_rotation };

struct FockBlock {
  int n_total = 0;
  HamiltonianMode mode = HamiltonianMode::secular;
  Eigen::MatrixXd hamiltonian;  // real symmetric
  Eigen::MatrixXcd jy;          // J_y = (b'a - a'b) / 2i
  bool weak_nonlinearity_flagged = false;

  int dim() const { return n_total + 1; }
};

/// Restriction of a'a, b'b, b'a (k -> k+1) to the block with n quanta.
struct BlockOperators {
  Eigen::MatrixXd photons;
  Eigen::MatrixXd excitons;
  Eigen::MatrixXd raise_exciton;  // b'a
};
BlockOperators block_operators(int n_total);

/// Polariton-picture operators n1 = p1'p1, n2 = p2'p2 and p1'p2 in the block,
/// written out from p1 = -v a + u b, p2 = u a + v b.
struct PolaritonOperators {
  Eigen::MatrixXd n1;
  Eigen::MatrixXd n2;
  Eigen::MatrixXd p1dag_p2;
};
PolaritonOperators polariton_operators(const PolaritonBasis& basis, int n_total);

/// full:    w_c a'a + w_ex b'b + g(a'b + b'a) + A b'b'bb - B(b'b'ba + a'b'bb)
/// secular: w1 n1 + w2 n2 + A11 n1(n1-1) + A22 n2(n2-1) + 2 A12 n1 n2
FockBlock build_block(const ModelParams& params, const PolaritonBasis& basis, int n_total,
                      HamiltonianMode mode);

/// E(n1, n2) of the secular Hamiltonian.
double secular_spectrum(const PolaritonBasis& basis, int n1, int n2);

/// Orthonormal eigenvectors (columns) and energies of one block.
struct BlockSpectrum {
  Eigen::MatrixXd vectors;
  Eigen::VectorXd energies;
};

/// matrix_spectral: numerical eigendecomposition of the block Hamiltonian.
/// polariton_rotation (secular blocks only): columns of the Wigner matrix
/// d^{n/2}(2 theta), column j+m carrying E(n1 = j-m, n2 = j+m).
BlockSpectrum block_spectrum(const FockBlock& block, const PolaritonBasis& basis,
                             PropagationPath path);

/// exp(-i H t) applied to the block amplitudes (no decay).
Eigen::VectorXcd evolve_block(const FockBlock& block, const PolaritonBasis& basis,
                              const Eigen::VectorXcd& amplitudes, double t, PropagationPath path);

/// Block-sparse two-mode state.
struct StateVector {
  std::map<int, Eigen::VectorXcd> blocks;

  double norm() const;  // sqrt of the summed block probabilities
};

struct PreparedState {
  StateVector state;
  int n_max = 0;
  double retained_mass = 1.0;  // Poisson mass kept before renormalization
};

/// Smallest cutoff whose Poisson tail beyond it is below `tail`, never less
/// than nbar + 10 sqrt(nbar) + 10.
int coherent_truncation(double nbar, double tail = 1e-12);

/// Photons in vacuum; coherent amplitudes beta^N / sqrt(N!) renormalized
/// after truncation.
PreparedState prepare_initial_state(const InitialState& state, double tail = 1e-12);

/// Sum over blocks of n * (block probability).
double expectation_total_number(const StateVector& state);

/// Intensity assembled from the evolved (decay-free) state as
///   u^2 <n2> + v^2 <n1> - 2 u v e^{-(gamma1+gamma2) t/2} Re <p1'p2>.
/// mode = full requires gamma1 = gamma2 = 0.
IntensityTrace oracle_intensity(const ModelParams& params, const PolaritonBasis& basis,
                                const InitialState& state, const TimeGrid& grid,
                                HamiltonianMode mode,
                                PropagationPath path = PropagationPath::matrix_spectral);

}  // namespace polariton
