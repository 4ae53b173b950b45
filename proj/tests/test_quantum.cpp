#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "excitrap/graph.hpp"
#include "excitrap/quantum.hpp"
#include "excitrap/spectral.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace excitrap;

TEST_CASE("time grids validate and generate endpoints exactly") {
  TimeGrid g = TimeGrid::logspace(0.1, 1000.0, 5);
  auto ts = g.times();
  REQUIRE(ts.size() == 5);
  CHECK(ts.front() == doctest::Approx(0.1));
  CHECK(ts.back() == doctest::Approx(1000.0));
  CHECK(ts[1] / ts[0] == doctest::Approx(ts[2] / ts[1]));

  TimeGrid lin = TimeGrid::linspace(0.0, 1.0, 3);
  CHECK(lin.times()[1] == doctest::Approx(0.5));

  CHECK_THROWS_AS(TimeGrid::logspace(0.0, 1.0, 10).validate(), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid::logspace(1.0, 0.5, 10).validate(), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid::logspace(0.1, 1.0, 1).validate(), std::invalid_argument);

  TimeGrid d = TimeGrid::default_for(1e-3);
  CHECK(d.t_min == doctest::Approx(0.1));
  CHECK(d.t_max == doctest::Approx(5000.0));
  CHECK(d.n_points == 200);
}

TEST_CASE("single trapped node decays at twice the trap strength") {
  const double gamma = 0.8;
  HamiltonianSpec spec = build_chain(1, gamma);
  Spectrum s = decompose(spec);
  REQUIRE(s.size() == 1);
  CHECK(s.gamma(0) == doctest::Approx(gamma));
  for (double t : {0.5, 1.0, 3.0}) {
    std::complex<double> a = transition_amplitude(s, 1, 1, t);
    CHECK(std::abs(a) == doctest::Approx(std::exp(-gamma * t)).epsilon(1e-12));
  }
  SurvivalCurve oracle =
      propagate_oracle(quantum_hamiltonian(spec), 1, TimeGrid::linspace(0.0, 2.0, 9));
  for (size_t i = 0; i < oracle.times.size(); ++i)
    CHECK(oracle.values[i] ==
          doctest::Approx(std::exp(-2.0 * gamma * oracle.times[i])).epsilon(1e-8));
}

TEST_CASE("mean survival starts at one within the completeness residual") {
  for (int n : {5, 12, 30}) {
    HamiltonianSpec spec = build_chain(n, 1.0);
    Spectrum s = decompose(spec);
    SurvivalCurve c = mean_survival(s, spec.traps, TimeGrid::linspace(0.0, 1.0, 2));
    CHECK(std::abs(c.values[0] - 1.0) <= 2.0 * s.completeness_residual + 1e-12);
  }
}

TEST_CASE("spectral mean survival equals the direct amplitude sum") {
  const int n = 9;
  HamiltonianSpec spec = build_chain(n, 1.3);
  Spectrum s = decompose(spec);
  TimeGrid grid = TimeGrid::logspace(0.5, 50.0, 7);
  SurvivalCurve c = mean_survival(s, spec.traps, grid);
  for (size_t i = 0; i < c.times.size(); ++i) {
    double direct = 0.0;
    for (int j = 1; j <= n; ++j) {
      if (spec.traps.contains(j)) continue;
      for (int k = 1; k <= n; ++k) {
        if (spec.traps.contains(k)) continue;
        direct += std::norm(transition_amplitude(s, k, j, c.times[i]));
      }
    }
    direct /= n - spec.traps.size();
    CHECK(std::abs(c.values[i] - direct) < 1e-9);
  }
}

TEST_CASE("node survival equals its amplitude column sum and rejects traps") {
  const int n = 7;
  HamiltonianSpec spec = build_chain(n, 1.0);
  Spectrum s = decompose(spec);
  double t = 3.0;
  for (int j = 2; j < n; ++j) {
    double direct = 0.0;
    for (int k = 1; k <= n; ++k) {
      if (spec.traps.contains(k)) continue;
      direct += std::norm(transition_amplitude(s, k, j, t));
    }
    CHECK(node_survival(s, j, spec.traps, t) == doctest::Approx(direct).epsilon(1e-9));
  }
  CHECK_THROWS_AS(node_survival(s, 1, spec.traps, t), std::invalid_argument);
}

TEST_CASE("total norm never increases under trapping") {
  const int n = 25;
  HamiltonianSpec spec = build_chain(n, 2.0);
  Spectrum s = decompose(spec);
  TimeGrid grid = TimeGrid::logspace(0.1, 200.0, 40);
  // Survival summed over every node (no exclusions) from a mid-chain start.
  auto ts = grid.times();
  double prev = 1.0 + 1e-12;
  for (double t : ts) {
    double total = 0.0;
    for (int k = 1; k <= n; ++k) total += std::norm(transition_amplitude(s, k, n / 2, t));
    CHECK(total <= prev + 1e-10);
    prev = total;
  }
}

TEST_CASE("long-time form bounds the exact curve from above asymptotically") {
  const int n = 20;
  HamiltonianSpec spec = build_chain(n, 1.0);
  Spectrum s = sort_by_decay(decompose(spec));
  double g2 = s.gamma(1);
  TimeGrid grid = TimeGrid::logspace(0.1, 10.0 / g2, 50);
  SurvivalCurve exact = mean_survival(s, spec.traps, grid);
  SurvivalCurve asym = mean_survival_longtime(s, spec.traps, grid);
  SurvivalCurve at_zero = mean_survival_longtime(s, spec.traps, TimeGrid::linspace(0.0, 1.0, 2));
  CHECK(at_zero.values.front() == doctest::Approx(double(n) / (n - 2)));
  for (double v : asym.values) CHECK(v >= 0.0);
  CHECK(exact.values.back() / asym.values.back() == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("oracle integration matches the spectral pipeline") {
  const int n = 10;
  HamiltonianSpec spec = build_chain(n, 1.0);
  Spectrum s = decompose(spec);
  TimeGrid grid = TimeGrid::logspace(0.1, 50.0, 25);
  SurvivalCurve oracle = propagate_oracle(quantum_hamiltonian(spec), 4, grid);
  CHECK(oracle.model == CurveModel::oracle);
  for (size_t i = 0; i < oracle.times.size(); ++i)
    CHECK(std::abs(oracle.values[i] - node_survival(s, 4, spec.traps, oracle.times[i])) <
          1e-8);
}

TEST_CASE("oracle conserves the norm without trapping") {
  HamiltonianSpec spec = build_chain(8, 0.0);
  SurvivalCurve c =
      propagate_oracle(quantum_hamiltonian(spec), 3, TimeGrid::linspace(0.0, 100.0, 11));
  for (double v : c.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("oracle refuses grids that need absurd step counts") {
  HamiltonianSpec spec = build_chain(5, 1.0);
  CHECK_THROWS_AS(
      propagate_oracle(quantum_hamiltonian(spec), 2, TimeGrid::logspace(0.1, 1e9, 5)),
      std::invalid_argument);
}

TEST_CASE("survival values below representable range clamp to zero with a flag") {
  HamiltonianSpec spec = build_chain(4, 1.0);
  Spectrum s = sort_by_decay(decompose(spec));
  double gmin = gamma_min(s);
  // The slowest mode decays as e^(-2*gmin*t); pick t so that lands in the
  // subnormal band below the 1e-300 floor but above exact zero.
  double t_tiny = 713.0 / (2.0 * gmin);
  SurvivalCurve c =
      mean_survival(s, spec.traps, TimeGrid::linspace(t_tiny, 1.001 * t_tiny, 2));
  CHECK(c.underflow_clamped);
  for (double v : c.values) CHECK(v == 0.0);
  // Far deeper, everything has flushed to exact zero upstream: still zero.
  double t_deep = 800.0 / gmin;
  SurvivalCurve deep = mean_survival(s, spec.traps, TimeGrid::logspace(t_deep, 2 * t_deep, 3));
  for (double v : deep.values) CHECK(v == 0.0);
}

TEST_CASE("mean survival needs at least one untrapped node") {
  HamiltonianSpec spec = with_traps(build_chain(2, 1.0), TrapSet({1, 2}));
  Spectrum s = decompose(spec);
  CHECK_THROWS_AS(mean_survival(s, spec.traps, TimeGrid::linspace(0.0, 1.0, 2)),
                  std::invalid_argument);
}

TEST_CASE("spec-level curve carries resolved metadata") {
  HamiltonianSpec spec = build_chain(16, 0.5, DiagonalMode::vertex_degree);
  SurvivalCurve c = mean_survival(spec, TimeGrid::logspace(0.1, 10.0, 5));
  CHECK(c.meta.n == 16);
  CHECK(c.meta.gamma == doctest::Approx(0.5));
  CHECK(c.meta.traps.nodes == std::vector<int>{1, 16});
  CHECK(c.meta.diagonal == DiagonalMode::vertex_degree);
  REQUIRE(c.meta.gamma_min.has_value());
  CHECK(c.meta.conserving_at_zero_gamma);
  CHECK(c.model == CurveModel::quantum_exact);

  SurvivalCurve u = mean_survival(build_chain(16, 0.5, DiagonalMode::uniform_two),
                                  TimeGrid::logspace(0.1, 10.0, 5));
  CHECK_FALSE(u.meta.conserving_at_zero_gamma);
}

TEST_CASE("power-law reference curve follows its parameters exactly") {
  SurvivalCurve c = powerlaw_model(2.0, 1.8, TimeGrid::logspace(1.0, 100.0, 9));
  for (size_t i = 0; i < c.times.size(); ++i)
    CHECK(c.values[i] ==
          doctest::Approx(2.0 * std::pow(c.times[i], -1.0 / 1.8)).epsilon(1e-12));
  CHECK_THROWS_AS(powerlaw_model(-1.0, 1.8, TimeGrid::logspace(1.0, 10.0, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(powerlaw_model(1.0, 0.0, TimeGrid::logspace(1.0, 10.0, 3)),
                  std::invalid_argument);
}
