#include "polariton/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "polariton/wigner.hpp"

namespace polariton {
namespace {

using cplx = std::complex<double>;

// Columns per batched evaluation; keeps the d x T work arrays small.
constexpr std::size_t kTimeChunk = 1024;

}  // namespace

BlockOperators block_operators(int n_total) {
  if (n_total < 0) throw InputError("block needs n_total >= 0");
  const int dim = n_total + 1;
  BlockOperators ops;
  ops.photons = Eigen::MatrixXd::Zero(dim, dim);
  ops.excitons = Eigen::MatrixXd::Zero(dim, dim);
  ops.raise_exciton = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    ops.excitons(k, k) = k;
    ops.photons(k, k) = n_total - k;
    if (k + 1 < dim) ops.raise_exciton(k + 1, k) = std::sqrt(double(k + 1) * double(n_total - k));
  }
  return ops;
}

PolaritonOperators polariton_operators(const PolaritonBasis& basis, int n_total) {
  const auto ops = block_operators(n_total);
  const double u = basis.u;
  const double v = basis.v;
  const Eigen::MatrixXd hop = ops.raise_exciton + ops.raise_exciton.transpose();
  PolaritonOperators out;
  out.n1 = v * v * ops.photons + u * u * ops.excitons - u * v * hop;
  out.n2 = u * u * ops.photons + v * v * ops.excitons + u * v * hop;
  // (-v a' + u b')(u a + v b)
  out.p1dag_p2 = -u * v * ops.photons + u * v * ops.excitons - v * v * ops.raise_exciton.transpose() +
                 u * u * ops.raise_exciton;
  return out;
}

FockBlock build_block(const ModelParams& params, const PolaritonBasis& basis, int n_total,
                      HamiltonianMode mode) {
  if (n_total < 0) throw InputError("block needs n_total >= 0");
  params.validate();
  const int dim = n_total + 1;
  const auto ops = block_operators(n_total);

  FockBlock block;
  block.n_total = n_total;
  block.mode = mode;
  block.weak_nonlinearity_flagged = weak_nonlinearity_exceeded(params, n_total);
  block.jy = (ops.raise_exciton - ops.raise_exciton.transpose()).cast<cplx>() / cplx(0.0, 2.0);

  if (mode == HamiltonianMode::full) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
      h(k, k) = params.omega_c * (n_total - k) + params.omega_ex * k + params.A * k * (k - 1.0);
      if (k + 1 < dim) {
        // <k+1| g b'a - B b'b'ba |k> = (g - B k) sqrt((k+1)(n-k))
        const double hop = (params.g - params.B * k) * std::sqrt(double(k + 1) * double(n_total - k));
        h(k + 1, k) = hop;
        h(k, k + 1) = hop;
      }
    }
    block.hamiltonian = std::move(h);
    return block;
  }

  const auto pol = polariton_operators(basis, n_total);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::MatrixXd h = basis.omega1 * pol.n1 + basis.omega2 * pol.n2 +
                      basis.A11 * pol.n1 * (pol.n1 - id) + basis.A22 * pol.n2 * (pol.n2 - id) +
                      2.0 * basis.A12 * pol.n1 * pol.n2;
  block.hamiltonian = 0.5 * (h + h.transpose());
  return block;
}

double secular_spectrum(const PolaritonBasis& basis, int n1, int n2) {
  if (n1 < 0 || n2 < 0) throw InputError("polariton numbers must be non-negative");
  const double a = n1;
  const double b = n2;
  return basis.omega1 * a + basis.omega2 * b + basis.A11 * a * (a - 1.0) +
         basis.A22 * b * (b - 1.0) + 2.0 * basis.A12 * a * b;
}

BlockSpectrum block_spectrum(const FockBlock& block, const PolaritonBasis& basis,
                             PropagationPath path) {
  BlockSpectrum spec;
  if (path == PropagationPath::matrix_spectral) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block.hamiltonian);
    if (solver.info() != Eigen::Success) throw std::runtime_error("block eigendecomposition failed");
    spec.vectors = solver.eigenvectors();
    spec.energies = solver.eigenvalues();
    return spec;
  }
  if (block.mode != HamiltonianMode::secular) {
    throw InputError("polariton_rotation propagation applies to secular blocks only");
  }
  const int n = block.n_total;
  spec.vectors = wigner_d_matrix(HalfInt::from_twice(n), 2.0 * basis.theta);
  spec.energies.resize(n + 1);
  for (int col = 0; col <= n; ++col) {
    // column index j+m: n2 = j+m upper polaritons, n1 = j-m lower ones
    spec.energies(col) = secular_spectrum(basis, n - col, col);
  }
  return spec;
}

Eigen::VectorXcd evolve_block(const FockBlock& block, const PolaritonBasis& basis,
                              const Eigen::VectorXcd& amplitudes, double t, PropagationPath path) {
  if (amplitudes.size() != block.dim()) throw InputError("amplitude vector does not match block");
  if (t < 0.0) throw InputError("evolution time must be non-negative");
  const auto spec = block_spectrum(block, basis, path);
  const double shift = spec.energies.mean();
  Eigen::VectorXcd coeffs = spec.vectors.transpose().cast<cplx>() * amplitudes;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    coeffs(k) *= std::polar(1.0, -(spec.energies(k) - shift) * t);
  }
  // The subtracted mean is a block-global phase; restore it.
  return std::polar(1.0, -shift * t) * (spec.vectors.cast<cplx>() * coeffs);
}

double StateVector::norm() const {
  double total = 0.0;
  for (const auto& [n, amps] : blocks) total += amps.squaredNorm();
  return std::sqrt(total);
}

int coherent_truncation(double nbar, double tail) {
  if (!(nbar >= 0.0)) throw InputError("coherent state needs nbar >= 0");
  const int floor_cut = static_cast<int>(std::ceil(nbar + 10.0 * std::sqrt(nbar) + 10.0));
  if (nbar == 0.0) return floor_cut;

  const int hi = static_cast<int>(std::ceil(nbar + 40.0 * std::sqrt(nbar) + 60.0));
  std::vector<double> pmf(hi + 1);
  for (int k = 0; k <= hi; ++k) {
    pmf[k] = std::exp(-nbar + k * std::log(nbar) - std::lgamma(k + 1.0));
  }
  // suffix[k] = sum_{N >= k} pmf[N]
  std::vector<double> suffix(hi + 2, 0.0);
  for (int k = hi; k >= 0; --k) suffix[k] = suffix[k + 1] + pmf[k];
  int cut = hi;
  for (int k = 0; k <= hi; ++k) {
    if (suffix[k + 1] < tail) {
      cut = k;
      break;
    }
  }
  return std::max(cut, floor_cut);
}

PreparedState prepare_initial_state(const InitialState& state, double tail) {
  PreparedState out;
  if (const auto* s = std::get_if<NumberState>(&state)) {
    if (s->n < 0) throw InputError("number state needs N >= 0");
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(s->n + 1);
    amps(s->n) = 1.0;
    out.state.blocks.emplace(s->n, std::move(amps));
    out.n_max = s->n;
    return out;
  }

  const auto& c = std::get<CoherentState>(state);
  out.n_max = coherent_truncation(c.nbar, tail);
  double mass = 0.0;
  for (int n = 0; n <= out.n_max; ++n) {
    double magnitude = 0.0;
    if (c.nbar == 0.0) {
      magnitude = n == 0 ? 1.0 : 0.0;
    } else {
      magnitude = std::exp(0.5 * (-c.nbar + n * std::log(c.nbar) - std::lgamma(n + 1.0)));
    }
    mass += magnitude * magnitude;
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(n + 1);
    amps(n) = std::polar(magnitude, n * c.phi);
    out.state.blocks.emplace(n, std::move(amps));
  }
  out.retained_mass = mass;
  const double scale = 1.0 / std::sqrt(mass);
  for (auto& [n, amps] : out.state.blocks) amps *= scale;
  return out;
}

double expectation_total_number(const StateVector& state) {
  double total = 0.0;
  for (const auto& [n, amps] : state.blocks) total += n * amps.squaredNorm();
  return total;
}

IntensityTrace oracle_intensity(const ModelParams& params, const PolaritonBasis& basis,
                                const InitialState& state, const TimeGrid& grid,
                                HamiltonianMode mode, PropagationPath path) {
  params.validate();
  if (mode == HamiltonianMode::full && params.total_decay() != 0.0) {
    throw InputError("oracle_full supports only gamma1 = gamma2 = 0");
  }

  const auto prepared = prepare_initial_state(state);
  const std::size_t n_times = grid.size();
  const auto times = grid.times();

  std::vector<double> lower(n_times, 0.0);
  std::vector<double> upper(n_times, 0.0);
  std::vector<cplx> cross(n_times, 0.0);
  double imag_residue = 0.0;
  bool flagged = false;

  for (const auto& [n, amps] : prepared.state.blocks) {
    if (amps.squaredNorm() == 0.0) continue;
    const auto block = build_block(params, basis, n, mode);
    flagged = flagged || block.weak_nonlinearity_flagged;
    const auto spec = block_spectrum(block, basis, path);
    const auto pol = polariton_operators(basis, n);

    const Eigen::MatrixXd& vecs = spec.vectors;
    const Eigen::VectorXd energies = spec.energies.array() - spec.energies.mean();
    const Eigen::VectorXcd coeffs = vecs.transpose().cast<cplx>() * amps;
    const Eigen::MatrixXcd n1 = (vecs.transpose() * pol.n1 * vecs).cast<cplx>();
    const Eigen::MatrixXcd n2 = (vecs.transpose() * pol.n2 * vecs).cast<cplx>();
    const Eigen::MatrixXcd x = (vecs.transpose() * pol.p1dag_p2 * vecs).cast<cplx>();

    const Eigen::Index dim = coeffs.size();
    for (std::size_t start = 0; start < n_times; start += kTimeChunk) {
      const std::size_t count = std::min(kTimeChunk, n_times - start);
      Eigen::MatrixXcd w(dim, static_cast<Eigen::Index>(count));
      for (std::size_t c = 0; c < count; ++c) {
        const double t = times[start + c];
        for (Eigen::Index k = 0; k < dim; ++k) {
          w(k, static_cast<Eigen::Index>(c)) = coeffs(k) * std::polar(1.0, -energies(k) * t);
        }
      }
      const Eigen::MatrixXcd n1w = n1 * w;
      const Eigen::MatrixXcd n2w = n2 * w;
      const Eigen::MatrixXcd xw = x * w;
      for (std::size_t c = 0; c < count; ++c) {
        const auto col = static_cast<Eigen::Index>(c);
        const cplx e1 = w.col(col).dot(n1w.col(col));  // dot conjugates the left operand
        const cplx e2 = w.col(col).dot(n2w.col(col));
        lower[start + c] += e1.real();
        upper[start + c] += e2.real();
        cross[start + c] += w.col(col).dot(xw.col(col));
        imag_residue = std::max({imag_residue, std::abs(e1.imag()), std::abs(e2.imag())});
      }
    }
  }

  IntensityTrace trace;
  trace.times = times;
  trace.intensity.resize(n_times);
  trace.method = mode == HamiltonianMode::full ? Method::oracle_full : Method::oracle_secular;
  trace.state = state;
  trace.params_digest = params_digest(params);
  if (std::holds_alternative<CoherentState>(state)) {
    trace.meta.truncation_n_max = prepared.n_max;
    trace.meta.retained_mass = prepared.retained_mass;
  }
  trace.meta.weak_nonlinearity_flagged = flagged;
  trace.meta.max_imag_residue = imag_residue;

  const double u = basis.u;
  const double v = basis.v;
  const double half_decay = 0.5 * params.total_decay();
  for (std::size_t k = 0; k < n_times; ++k) {
    const double damping = std::exp(-half_decay * times[k]);
    trace.intensity[k] =
        u * u * upper[k] + v * v * lower[k] - 2.0 * u * v * damping * cross[k].real();
  }
  return trace;
}

}  // namespace polariton
