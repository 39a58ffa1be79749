#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "polariton/closedform.hpp"

using namespace polariton;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

ModelParams make(double delta, double A, double B, double gamma = 0.0, double g = 1000.0) {
  ModelParams p;
  p.omega_c = delta;
  p.omega_ex = 0.0;
  p.g = g;
  p.A = A;
  p.B = B;
  p.gamma1 = gamma;
  p.gamma2 = gamma;
  return p;
}

}  // namespace

TEST_CASE("vacuum and t = 0") {
  const auto p = make(200, 10, 3, 1);
  const auto b = build_polariton_basis(p);
  const TimeGrid grid(1.0, 101);
  for (double x : intensity_number(p, b, 0, grid).intensity) CHECK(x == 0.0);
  for (double x : intensity_coherent(p, b, {0.0, 0.0}, grid).intensity) CHECK(x == 0.0);
  for (int n : {1, 2, 7, 30}) {
    CHECK(std::abs(intensity_number_at(b, p, n, 0.0)) < 1e-12);
    CHECK(std::abs(intensity_number_at(b, p, n, 0.0, Formula::printed)) < 1e-12);
  }
  for (double nbar : {0.5, 2.0, 11.0}) CHECK(std::abs(intensity_coherent_at(b, p, nbar, 0.0)) < 1e-12);
}

TEST_CASE("linear Rabi limits") {
  const auto p = make(0, 0, 0);
  const auto b = build_polariton_basis(p);
  for (double t : {0.0, 1e-4, pi / 2000, 3.3e-3, 0.77}) {
    CHECK(intensity_number_at(b, p, 2, t) == Approx(1 - std::cos(2000 * t)).epsilon(1e-12));
    CHECK(intensity_number_resonant_at(p, 1, t) == Approx(std::pow(std::sin(1000 * t), 2)).epsilon(1e-12));
  }
  CHECK(intensity_number_at(b, p, 2, pi / 2000) == Approx(2.0).epsilon(1e-13));

  // detuned: I = n sin^2(2 theta) sin^2(Delta t / 2) for both families
  const auto q = make(300, 0, 0);
  const auto c = build_polariton_basis(q);
  for (double t : {0.0, 1e-3, 0.0123, 0.5}) {
    const double rabi = c.mixing() * std::pow(std::sin(c.Delta * t / 2), 2);
    CHECK(std::abs(intensity_number_at(c, q, 4, t) - 4 * rabi) < 1e-12 * 4);
    CHECK(std::abs(intensity_coherent_at(c, q, 3.5, t) - 3.5 * rabi) < 1e-12 * 4);
  }
}

TEST_CASE("frozen secular-oracle values") {
  // reference values from an independent dense two-mode propagation
  const auto p = make(0.3, 0.02, 0.006, 0.0, 1.0);
  const auto b = build_polariton_basis(p);
  CHECK(intensity_number_at(b, p, 3, 7.0) == Approx(1.333637212571775).epsilon(1e-11));
  CHECK(intensity_coherent_at(b, p, 2.0, 7.0) == Approx(0.8895328499576112).epsilon(1e-11));

  const auto damped = make(0.3, 0.02, 0.006, 0.05, 1.0);
  CHECK(intensity_number_at(b, damped, 3, 7.0) == Approx(1.3730186659856092).epsilon(1e-11));

  const auto q = make(-0.4, 0.03, 0.01, 0.0, 1.0);
  CHECK(intensity_number_at(build_polariton_basis(q), q, 5, 11.5) ==
        Approx(3.3790033655828093).epsilon(1e-11));

  const auto r = make(0.0, 0.02, 0.006, 0.0, 1.0);
  CHECK(intensity_coherent_resonant_at(r, 2.0, 40.0) == Approx(1.42235199591858).epsilon(1e-11));
}

TEST_CASE("printed and exact renderings coincide only without B and detuning") {
  const auto p = make(0, 10, 0, 1);
  const auto b = build_polariton_basis(p);
  for (double t : {0.01, 0.3, 1.7}) {
    CHECK(intensity_number_at(b, p, 7, t, Formula::printed) ==
          Approx(intensity_number_at(b, p, 7, t)).epsilon(1e-10));
    CHECK(intensity_coherent_at(b, p, 4.0, t, Formula::printed) ==
          Approx(intensity_coherent_at(b, p, 4.0, t)).epsilon(1e-10));
  }
  const auto q = make(0, 10, 3);
  const auto c = build_polariton_basis(q);
  double gap = 0;
  for (int k = 1; k < 200; ++k) {
    const double t = 1e-3 * k;
    gap = std::max(gap, std::abs(intensity_number_at(c, q, 10, t, Formula::printed) -
                                 intensity_number_at(c, q, 10, t)));
  }
  CHECK(gap > 1.0);
}

TEST_CASE("resonant carriers") {
  const auto p = make(0, 10, 3);
  const int n = 10;
  const double t = 0.0377;
  const double env = std::pow(std::cos(10 * t / 2), n - 1);
  CHECK(intensity_number_resonant_at(p, n, t) ==
        Approx(5 * (1 - std::cos((2000 - 27) * t) * env)).epsilon(1e-12));
  CHECK(intensity_number_resonant_at(p, n, t, Formula::printed) ==
        Approx(5 * (1 - std::cos((2000 + 27) * t) * env)).epsilon(1e-12));
  CHECK_THROWS_AS(intensity_number_resonant_at(make(1, 10, 3), n, t), InputError);
  CHECK_THROWS_AS(intensity_coherent_resonant_at(make(1, 10, 3), 2.0, t), InputError);
}

TEST_CASE("general evaluators reduce to the resonant ones") {
  const double A = 10;
  const TimeGrid grid(5 * 2 * pi / A, 4001);
  for (Formula f : {Formula::exact, Formula::printed}) {
    for (double B : {0.0, 3.0}) {
      for (double gamma : {0.0, 1.0}) {
        const auto p = make(0, A, B, gamma);
        const auto b = build_polariton_basis(p);
        for (int n : {1, 2, 5, 11, 20}) {
          const auto gen = intensity_number(p, b, n, grid, f);
          const auto res = intensity_number_resonant(p, n, grid, f);
          double err = 0;
          for (std::size_t k = 0; k < grid.size(); ++k)
            err = std::max(err, std::abs(gen.intensity[k] - res.intensity[k]));
          CHECK(err <= 1e-10 * n);
        }
        for (double nbar : {0.5, 2.0, 11.0, 15.0}) {
          const auto gen = intensity_coherent(p, b, {nbar, 0.0}, grid, f);
          const auto res = intensity_coherent_resonant(p, {nbar, 0.0}, grid, f);
          double err = 0;
          for (std::size_t k = 0; k < grid.size(); ++k)
            err = std::max(err, std::abs(gen.intensity[k] - res.intensity[k]));
          CHECK(err <= 1e-10 * nbar);
        }
      }
    }
  }
}

TEST_CASE("resonant envelope landmarks") {
  const auto p = make(0, 10, 0);
  const auto b = build_polariton_basis(p);
  const double A = 10;
  CHECK(envelope_number(11, b, 2 * pi / A) == Approx(1.0).epsilon(1e-12));
  CHECK(envelope_number(11, b, pi / A) < 1e-12);
  for (Formula f : {Formula::exact, Formula::printed}) {
    CHECK(envelope_coherent(3.0, b, 2 * pi / A, f) == Approx(std::exp(-6.0)).epsilon(1e-12));
    CHECK(envelope_coherent(3.0, b, 4 * pi / A, f) == Approx(1.0).epsilon(1e-12));
  }
  for (double t : {0.0, 0.1, 0.77, 2.3}) {
    CHECK(std::abs(envelope_number(6, b, t) - std::pow(std::abs(std::cos(A * t / 2)), 5)) < 1e-12);
    CHECK(std::abs(envelope_coherent(2.5, b, t) - std::exp(-5 * std::pow(std::sin(A * t / 4), 2))) <
          1e-12);
  }
  const auto lin = build_polariton_basis(make(400, 0, 0));
  for (double t : {0.0, 0.3, 9.0}) {
    CHECK(envelope_number(9, lin, t) == Approx(1.0).epsilon(1e-14));
    CHECK(envelope_coherent(9.0, lin, t) == Approx(1.0).epsilon(1e-14));
    CHECK(envelope_coherent(9.0, lin, t, Formula::printed) == Approx(1.0).epsilon(1e-14));
  }
  CHECK(envelope_number(0, b, 0.1) == 0.0);
}

TEST_CASE("cross coherence") {
  const auto p = make(250, 10, 3, 2);
  const auto b = build_polariton_basis(p);
  for (int n : {1, 3, 8}) {
    const auto x0 = cross_coherence_number(p, b, n, 0.0);
    CHECK(x0.real() == Approx(b.u * b.v * n).epsilon(1e-13));
    CHECK(std::abs(x0.imag()) < 1e-13);
    for (double t : {0.01, 0.2, 0.9}) {
      const auto x = cross_coherence_number(p, b, n, t);
      CHECK(std::abs(x) <= b.u * b.v * n * std::exp(-2 * t) + 1e-12);
      // diagonal part of the intensity is constant: u^2 <n2> + v^2 <n1> = (N/2) sin^2 2theta
      const double assembled = 0.5 * n * b.mixing() - 2 * b.u * b.v * x.real();
      CHECK(std::abs(assembled - intensity_number_at(b, p, n, t)) < 1e-10 * n);
    }
  }
  const auto lin = make(0, 0, 0);
  const auto lb = build_polariton_basis(lin);
  for (double t : {0.001, 0.0042}) {
    const auto x = cross_coherence_number(lin, lb, 1, t);
    CHECK(std::abs(x - std::polar(0.5, -2000 * t)) < 1e-13);
  }
  CHECK_THROWS_AS(cross_coherence_number(p, b, 0, 0.1), InputError);
}

TEST_CASE("phase never enters the coherent intensity") {
  const auto p = make(200, 10, 3, 1);
  const auto b = build_polariton_basis(p);
  const TimeGrid grid(1.0, 501);
  const auto a = intensity_coherent(p, b, make_coherent_state(4.0, 0.3), grid);
  const auto c = intensity_coherent(p, b, make_coherent_state(4.0, 0.3 + 1.234), grid);
  CHECK(a.intensity == c.intensity);
}

TEST_CASE("bounded by the mixed excitation") {
  for (double delta : {0.0, 200.0, 600.0}) {
    for (double gamma : {0.0, 1.0}) {
      const auto p = make(delta, 10, 3, gamma);
      const auto b = build_polariton_basis(p);
      const TimeGrid grid(2.0, 3001);
      for (int n : {1, 4, 12}) {
        for (double x : intensity_number(p, b, n, grid).intensity) {
          CHECK(x >= -1e-9);
          CHECK(x <= n * b.mixing() + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("decay lowers successive revival peaks") {
  const auto p = make(0, 10, 0, 1);
  const auto b = build_polariton_basis(p);
  double last = 1.0;
  for (int r = 1; r <= 4; ++r) {
    const double t = r * 2 * pi / 10;
    const double factor = envelope_number(11, b, t) * std::exp(-p.total_decay() * t / 2);
    CHECK(factor < last);
    last = factor;
  }
}

TEST_CASE("closed_form_intensity dispatch") {
  const auto p = make(0, 10, 3, 1);
  const TimeGrid grid(0.5, 101);
  const auto a = closed_form_intensity(p, NumberState{4}, grid, Method::closed_resonant);
  CHECK(a.method == Method::closed_resonant);
  CHECK(a.meta.formula == Formula::exact);
  CHECK(a.times.size() == 101);
  CHECK(a.params_digest == params_digest(p));
  CHECK_THROWS_AS(closed_form_intensity(p, NumberState{4}, grid, Method::oracle_full), InputError);
  CHECK_THROWS_AS(closed_form_intensity(make(5, 10, 3), NumberState{4}, grid, Method::closed_resonant),
                  InputError);
  const auto env = closed_form_envelope(p, CoherentState{2.0, 0.0}, grid);
  CHECK(env.size() == 101);
  CHECK(env.front() == Approx(1.0));
}
