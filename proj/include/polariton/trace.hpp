#pragma once

// Shared value types: initial states, time grids and intensity traces.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polariton/model.hpp"

namespace polariton {

/// Excitons in the Fock state |N>, photons in vacuum.
struct NumberState {
  int n = 0;
};

/// Excitons in the coherent state |beta>, beta = sqrt(nbar) exp(i phi);
/// photons in vacuum.
struct CoherentState {
  double nbar = 0.0;
  double phi = 0.0;  // kept in [0, 2 pi)
};

using InitialState = std::variant<NumberState, CoherentState>;

NumberState make_number_state(int n);
CoherentState make_coherent_state(double nbar, double phi = 0.0);

/// Mean excitation number carried by the state (N or nbar).
double excitation(const InitialState& state);
std::string_view state_kind(const InitialState& state);

/// Uniform samples on [0, t_end], both ends included.
class TimeGrid {
 public:
  TimeGrid(double t_end, std::size_t n_samples);

  double t_end() const { return t_end_; }
  std::size_t size() const { return n_samples_; }
  double spacing() const { return t_end_ / static_cast<double>(n_samples_ - 1); }
  double at(std::size_t k) const;
  std::vector<double> times() const;

 private:
  double t_end_;
  std::size_t n_samples_;
};

enum class Method { closed_general, closed_resonant, oracle_secular, oracle_full };

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view s);

/// Which rendering of the closed-form intensities to evaluate.
///
/// `exact` keeps the fast polariton beat e^{-i Delta t} on the same side as
/// the nonlinear phases that follow from the Heisenberg solutions, and sums
/// the coherent-state Poisson series without further approximation; it is
/// exact under the secular Hamiltonian. `printed` is the commonly quoted
/// form: beat written as e^{+i Delta t} (resonant carrier 2g + B(N-1)) and
/// coherent prefactor e^{i(A11-A22)(nbar-1)t} with e^{-i chi t} in the
/// exponent. The two coincide whenever B = 0 and delta = 0.
enum class Formula { exact, printed };

std::string_view to_string(Formula f);
std::optional<Formula> parse_formula(std::string_view s);

struct TraceMetadata {
  std::optional<Formula> formula;          // closed-form methods only
  std::optional<int> truncation_n_max;     // oracle, coherent states
  std::optional<double> retained_mass;     // Poisson mass kept before renormalizing
  bool weak_nonlinearity_flagged = false;
  double max_imag_residue = 0.0;           // oracle assembly
};

struct IntensityTrace {
  std::vector<double> times;
  std::vector<double> intensity;
  Method method = Method::closed_general;
  InitialState state = NumberState{};
  std::string params_digest;
  TraceMetadata meta;
};

}  // namespace polariton
