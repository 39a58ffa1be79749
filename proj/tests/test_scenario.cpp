#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "polariton/scenario.hpp"

using namespace polariton;
using doctest::Approx;

TEST_CASE("twelve presets") {
  const auto& all = presets();
  REQUIRE(all.size() == 12);
  std::set<std::string> names;
  for (const auto& p : all) {
    names.insert(p.name);
    CHECK(p.config.params.g == 1000.0);
    CHECK(p.config.params.A == 10.0);
    CHECK(p.config.n_samples == 20000);
    CHECK_NOTHROW(validate(p.config));
  }
  CHECK(names.size() == 12);

  const auto* d = find_preset("fig1d");
  REQUIRE(d != nullptr);
  CHECK(std::get<NumberState>(d->config.state).n == 11);
  CHECK(d->config.params.gamma1 == 1.0);
  CHECK(d->config.params.B == 0.0);
  CHECK(d->config.params.detuning() == 0.0);

  const auto* b = find_preset("fig2b");
  REQUIRE(b != nullptr);
  CHECK(std::get<NumberState>(b->config.state).n == 10);
  CHECK(b->config.params.detuning() == Approx(200.0));
  CHECK(b->config.params.B == Approx(3.0));

  const auto* c = find_preset("fig2c");
  REQUIRE(c != nullptr);
  CHECK(c->config.params.B == Approx(3.0));

  const auto* a = find_preset("fig3a");
  REQUIRE(a != nullptr);
  CHECK(std::get<CoherentState>(a->config.state).nbar == 2.0);
  CHECK(a->config.params.total_decay() == 0.0);

  CHECK(find_preset("fig4a") == nullptr);
}

TEST_CASE("config parsing") {
  const auto c = parse_config(R"(# comment
[physics]
omega_c = 120
omega_ex = 20
g = 1000
A = 10
B = 3
gamma1 = 0.5
gamma2 = 1.5
; another comment
[state]
state = coherent
nbar = 2.5
phi = 7.0
[grid]
t_end = 0.75
n_samples = 301
method = closed_general, oracle_secular
tolerance = 1e-9
formula = printed
outputs = intensity,envelope,report
)");
  CHECK(c.params.detuning() == 100.0);
  CHECK(c.params.gamma2 == 1.5);
  const auto& s = std::get<CoherentState>(c.state);
  CHECK(s.nbar == 2.5);
  CHECK(s.phi == Approx(7.0 - 2 * std::numbers::pi));
  CHECK(c.t_end == 0.75);
  CHECK(c.n_samples == 301);
  REQUIRE(c.methods.size() == 2);
  CHECK(c.methods[1] == Method::oracle_secular);
  CHECK(*c.tolerance == 1e-9);
  CHECK(c.formula == Formula::printed);
  CHECK(c.emit_envelope);
  CHECK(c.emit_report);
}

TEST_CASE("preset key overrides physics but keeps the grid") {
  const auto c = parse_config("g = 5\nA = 99\npreset = fig1c\nn_samples = 400\nt_end = 1.5\n");
  CHECK(c.params.g == 1000.0);
  CHECK(c.params.A == 10.0);
  CHECK(std::get<NumberState>(c.state).n == 11);
  CHECK(c.n_samples == 400);
  CHECK(c.t_end == 1.5);
  CHECK(c.preset == "fig1c");
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("colour = blue\n"), InputError);
  CHECK_THROWS_AS(parse_config("g = fast\n"), InputError);
  CHECK_THROWS_AS(parse_config("g 1000\n"), InputError);
  CHECK_THROWS_AS(parse_config("[physics\n"), InputError);
  CHECK_THROWS_AS(parse_config("state = squeezed\n"), InputError);
  CHECK_THROWS_AS(parse_config("n = -2\n"), InputError);
  CHECK_THROWS_AS(parse_config("n = 2.5\n"), InputError);
  CHECK_THROWS_AS(parse_config("state = coherent\nnbar = -1\n"), InputError);
  CHECK_THROWS_AS(parse_config("method = runge_kutta\n"), InputError);
  CHECK_THROWS_AS(parse_config("preset = fig7\n"), InputError);
  CHECK_THROWS_AS(parse_config("n_samples = 1\n"), InputError);
  CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), InputError);

  auto c = parse_config("omega_c = 5\nmethod = closed_resonant\n");
  CHECK_THROWS_AS(validate(c), InputError);
  c = parse_config("gamma1 = 1\nmethod = oracle_full\n");
  CHECK_THROWS_AS(validate(c), InputError);
  c = parse_config("t_end = -1\n");
  CHECK_THROWS_AS(validate(c), InputError);
  c = parse_config("g = 0\n");
  CHECK_THROWS_AS(validate(c), InputError);
}

TEST_CASE("number formatting is shortest round-trip") {
  CHECK(format_double(0.0) == "0e+00");
  CHECK(format_double(1000.0) == "1e+03");
  CHECK(format_double(0.1) == "1e-01");
  CHECK(format_double(-2.5e-7) == "-2.5e-07");
  for (double x : {0.1 + 0.2, 1.0 / 3.0, 6.283185307179586, 1e-300}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("CSV layout and round trip") {
  auto config = *find_preset("fig3a");
  auto c = config.config;
  c.n_samples = 5;
  c.t_end = 0.004;
  const auto trace = run_method(c, Method::closed_resonant);
  std::ostringstream out;
  write_trace_csv(out, c, trace);
  const std::string text = out.str();
  CHECK(text.rfind("# method=closed_resonant state=coherent n=2e+00 g=1e+03 A=1e+01 B=0e+00 "
                   "delta=0e+00 gamma1=0e+00 gamma2=0e+00\nt,intensity\n0e+00,0e+00\n1e-03,",
                   0) == 0);
  CHECK(text.back() == '\n');

  std::istringstream in(text);
  const auto back = read_trace_csv(in);
  CHECK(back.method == Method::closed_resonant);
  CHECK(back.times == trace.times);
  CHECK(back.intensity == trace.intensity);

  c.formula = Formula::printed;
  const auto env = std::vector<double>(5, 1.0);
  std::ostringstream with_env;
  write_trace_csv(with_env, c, run_method(c, Method::closed_resonant), &env);
  CHECK(with_env.str().find(" formula=printed\nt,intensity,envelope\n") != std::string::npos);

  std::istringstream bad("t,intensity\n0,0\n");
  CHECK_THROWS_AS(read_trace_csv(bad), InputError);
}

TEST_CASE("number-state header prints an integer count") {
  auto c = find_preset("fig1a")->config;
  CHECK(csv_header(c, "closed_resonant", true) ==
        "# method=closed_resonant state=number n=2 g=1e+03 A=1e+01 B=0e+00 delta=0e+00 "
        "gamma1=0e+00 gamma2=0e+00");
}

TEST_CASE("comparison CSV ends with the summary line") {
  auto c = parse_config("g = 1000\nA = 10\nB = 3\nomega_c = 300\nn = 3\nt_end = 0.01\nn_samples = 50\n");
  const auto a = run_method(c, Method::closed_general);
  const auto b = run_method(c, Method::oracle_secular);
  const auto s = compare_traces(a, b);
  std::ostringstream out;
  write_comparison_csv(out, "# header", a, b, "closed_general", "oracle_secular", s);
  const auto text = out.str();
  CHECK(text.rfind("# header\nt,closed_general,oracle_secular,diff\n", 0) == 0);
  const auto last = text.substr(text.rfind('\n', text.size() - 2) + 1);
  CHECK(last == summary_line(s) + "\n");
  CHECK(s.max_abs < 3e-9);
}

TEST_CASE("report formatting") {
  RevivalReport r;
  r.status = "ok";
  r.center_level = 5.5;
  r.revival_times = {0.5, 1.0};
  r.revival_amplitudes = {1.0, 0.5};
  const auto text = format_report(r, 0.25);
  CHECK(text.find("revival_times=5e-01;1e+00\n") != std::string::npos);
  CHECK(text.find("revival_periods=5e-01\n") != std::string::npos);
  CHECK(text.find("collapse_time=none\n") != std::string::npos);
  CHECK(text.find("collapse_time_estimate=2.5e-01\n") != std::string::npos);
}
