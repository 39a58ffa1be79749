#include "polariton/trace.hpp"

#include <cmath>
#include <numbers>

namespace polariton {

NumberState make_number_state(int n) {
  if (n < 0) throw InputError("number state needs N >= 0");
  return NumberState{n};
}

CoherentState make_coherent_state(double nbar, double phi) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw InputError("coherent state needs nbar >= 0");
  if (!std::isfinite(phi)) throw InputError("coherent phase must be finite");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double reduced = std::fmod(phi, two_pi);
  if (reduced < 0.0) reduced += two_pi;
  if (reduced >= two_pi) reduced = 0.0;
  return CoherentState{nbar, reduced};
}

double excitation(const InitialState& state) {
  if (const auto* s = std::get_if<NumberState>(&state)) return s->n;
  return std::get<CoherentState>(state).nbar;
}

std::string_view state_kind(const InitialState& state) {
  return std::holds_alternative<NumberState>(state) ? "number" : "coherent";
}

TimeGrid::TimeGrid(double t_end, std::size_t n_samples) : t_end_(t_end), n_samples_(n_samples) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InputError("t_end must be positive");
  if (n_samples < 2) throw InputError("n_samples must be at least 2");
}

double TimeGrid::at(std::size_t k) const {
  if (k + 1 == n_samples_) return t_end_;
  return t_end_ * static_cast<double>(k) / static_cast<double>(n_samples_ - 1);
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(n_samples_);
  for (std::size_t k = 0; k < n_samples_; ++k) out[k] = at(k);
  return out;
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::closed_general: return "closed_general";
    case Method::closed_resonant: return "closed_resonant";
    case Method::oracle_secular: return "oracle_secular";
    case Method::oracle_full: return "oracle_full";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view s) {
  for (Method m : {Method::closed_general, Method::closed_resonant, Method::oracle_secular,
                   Method::oracle_full}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

std::string_view to_string(Formula f) { return f == Formula::exact ? "exact" : "printed"; }

std::optional<Formula> parse_formula(std::string_view s) {
  if (s == "exact") return Formula::exact;
  if (s == "printed") return Formula::printed;
  return std::nullopt;
}

}  // namespace polariton
