#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "excitrap/graph.hpp"

#include <complex>

using namespace excitrap;
using std::complex;

TEST_CASE("trap set normalizes, validates, and answers membership") {
  TrapSet t({5, 1, 5, 3});
  CHECK(t.nodes == std::vector<int>{1, 3, 5});
  CHECK(t.size() == 3);
  CHECK(t.contains(3));
  CHECK_FALSE(t.contains(2));
  CHECK_NOTHROW(t.validate(5));
  CHECK_THROWS_AS(t.validate(4), std::invalid_argument);

  CHECK(TrapSet::ends(5).nodes == std::vector<int>{1, 5});
  CHECK(TrapSet::ends(1).nodes == std::vector<int>{1});
  CHECK(TrapSet::none().empty());
}

TEST_CASE("chain Hamiltonian with uniform diagonal") {
  HamiltonianSpec spec = build_chain(3, 2.0, DiagonalMode::uniform_two);
  Eigen::MatrixXcd h = quantum_hamiltonian(spec);
  CHECK(h(0, 0) == complex<double>(2.0, -2.0));
  CHECK(h(1, 1) == complex<double>(2.0, 0.0));
  CHECK(h(2, 2) == complex<double>(2.0, -2.0));
  CHECK(h(0, 1) == complex<double>(-1.0, 0.0));
  CHECK(h(1, 0) == complex<double>(-1.0, 0.0));
  CHECK(h(1, 2) == complex<double>(-1.0, 0.0));
  CHECK(h(0, 2) == complex<double>(0.0, 0.0));
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("chain Hamiltonian with vertex-degree diagonal") {
  HamiltonianSpec spec = build_chain(3, 2.0, DiagonalMode::vertex_degree);
  Eigen::MatrixXcd h = quantum_hamiltonian(spec);
  CHECK(h(0, 0) == complex<double>(1.0, -2.0));
  CHECK(h(1, 1) == complex<double>(2.0, 0.0));
  CHECK(h(2, 2) == complex<double>(1.0, -2.0));
}

TEST_CASE("vertex-degree rows sum to zero before trapping") {
  HamiltonianSpec spec = build_chain(7, 0.0, DiagonalMode::vertex_degree);
  Eigen::VectorXd row_sums = spec.h0.rowwise().sum();
  CHECK(row_sums.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("adjacency path graph reproduces the chain builder") {
  const int n = 6;
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) adj(i, i + 1) = adj(i + 1, i) = 1.0;
  HamiltonianSpec from_adj = build_from_adjacency(adj, TrapSet::ends(n), 1.5);
  HamiltonianSpec from_chain = build_chain(n, 1.5, DiagonalMode::vertex_degree);
  CHECK((from_adj.h0 - from_chain.h0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(from_adj.traps.nodes == from_chain.traps.nodes);
}

TEST_CASE("adjacency validation rejects malformed matrices") {
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(3, 3);
  bad(0, 1) = 1.0;  // asymmetric
  CHECK_THROWS_AS(build_from_adjacency(bad, TrapSet::ends(3), 1.0), std::invalid_argument);
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(3, 3);
  diag(1, 1) = 1.0;  // self-loop
  CHECK_THROWS_AS(build_from_adjacency(diag, TrapSet::ends(3), 1.0), std::invalid_argument);
  Eigen::MatrixXd weighted = Eigen::MatrixXd::Zero(3, 3);
  weighted(0, 1) = weighted(1, 0) = 0.5;  // not 0/1
  CHECK_THROWS_AS(build_from_adjacency(weighted, TrapSet::ends(3), 1.0),
                  std::invalid_argument);
}

TEST_CASE("classical transfer matrix for the trapped chain") {
  HamiltonianSpec uniform = build_chain(3, 1.0, DiagonalMode::uniform_two);
  Eigen::MatrixXd t = classical_transfer_matrix(uniform);
  Eigen::MatrixXd expected(3, 3);
  expected << -3.0, 1.0, 0.0, 1.0, -2.0, 1.0, 0.0, 1.0, -3.0;
  CHECK((t - expected).cwiseAbs().maxCoeff() == 0.0);
  CHECK((t - t.transpose()).cwiseAbs().maxCoeff() == 0.0);

  // Vertex-degree variant: end diagonals carry degree 1 plus the trap.
  HamiltonianSpec vertex = build_chain(3, 1.0, DiagonalMode::vertex_degree);
  Eigen::MatrixXd tv = classical_transfer_matrix(vertex);
  Eigen::MatrixXd ev(3, 3);
  ev << -2.0, 1.0, 0.0, 1.0, -2.0, 1.0, 0.0, 1.0, -2.0;
  CHECK((tv - ev).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("long-range couplings fall off as a power of the distance") {
  HamiltonianSpec spec = build_long_range_chain(5, 3.0, 1.0);
  CHECK(spec.h0(0, 1) == doctest::Approx(-1.0));
  CHECK(spec.h0(0, 2) == doctest::Approx(-1.0 / 8.0));
  CHECK(spec.h0(0, 4) == doctest::Approx(-1.0 / 64.0));
  // Generator convention: diagonal balances the row exactly.
  CHECK(spec.h0.rowwise().sum().cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(build_long_range_chain(5, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_long_range_chain(5, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("builders reject invalid sizes and strengths") {
  CHECK_THROWS_AS(build_chain(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_chain(5, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(with_traps(build_chain(5, 1.0), TrapSet({6})), std::invalid_argument);
}

TEST_CASE("trapping enters only the imaginary diagonal") {
  HamiltonianSpec spec = build_chain(8, 0.7, DiagonalMode::vertex_degree);
  Eigen::MatrixXcd h = quantum_hamiltonian(spec);
  Eigen::MatrixXd imag = h.imag();
  for (int j = 0; j < 8; ++j)
    for (int k = 0; k < 8; ++k) {
      bool trapped_diag = j == k && (j == 0 || j == 7);
      CHECK(imag(j, k) == (trapped_diag ? -0.7 : 0.0));
    }
  CHECK((h.real() - spec.h0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("string conversions round-trip") {
  CHECK(diagonal_mode_from_string(to_string(DiagonalMode::uniform_two)) ==
        DiagonalMode::uniform_two);
  CHECK(coupling_kind_from_string(to_string(CouplingKind::power_law)) ==
        CouplingKind::power_law);
  CHECK_THROWS_AS(diagonal_mode_from_string("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(coupling_kind_from_string("bogus"), std::invalid_argument);
}
