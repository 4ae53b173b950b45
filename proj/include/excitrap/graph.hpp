#pragma once

// Construction of tight-binding Hamiltonians and classical transfer matrices
// for finite graphs with absorbing trap nodes at given sites.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace excitrap {

enum class DiagonalMode { vertex_degree, uniform_two };
enum class CouplingKind { nearest, power_law };

inline std::string to_string(DiagonalMode m) {
  return m == DiagonalMode::vertex_degree ? "vertex_degree" : "uniform_two";
}

inline std::string to_string(CouplingKind k) {
  return k == CouplingKind::nearest ? "nearest" : "power_law";
}

inline DiagonalMode diagonal_mode_from_string(const std::string& s) {
  if (s == "vertex_degree") return DiagonalMode::vertex_degree;
  if (s == "uniform_two") return DiagonalMode::uniform_two;
  throw std::invalid_argument("unknown diagonal mode: " + s);
}

inline CouplingKind coupling_kind_from_string(const std::string& s) {
  if (s == "nearest") return CouplingKind::nearest;
  if (s == "power_law") return CouplingKind::power_law;
  throw std::invalid_argument("unknown coupling kind: " + s);
}

// Set of trap node indices, 1-based, kept sorted and unique. May be empty.
struct TrapSet {
  std::vector<int> nodes;

  TrapSet() = default;
  explicit TrapSet(std::vector<int> idx) : nodes(std::move(idx)) {
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  }

  static TrapSet ends(int n) {
    return n == 1 ? TrapSet({1}) : TrapSet({1, n});
  }
  static TrapSet none() { return TrapSet(); }

  int size() const { return static_cast<int>(nodes.size()); }
  bool empty() const { return nodes.empty(); }
  bool contains(int j) const {
    return std::binary_search(nodes.begin(), nodes.end(), j);
  }
  void validate(int n) const {
    for (int m : nodes)
      if (m < 1 || m > n)
        throw std::invalid_argument("trap node " + std::to_string(m) +
                                    " outside 1.." + std::to_string(n));
  }
  bool operator==(const TrapSet&) const = default;
};

// A graph system: trap-free Hamiltonian plus trap placement and strength.
struct HamiltonianSpec {
  int n = 0;
  double gamma = 0.0;  // trap strength, >= 0
  TrapSet traps;
  DiagonalMode diagonal = DiagonalMode::vertex_degree;
  CouplingKind coupling = CouplingKind::nearest;
  double exponent = 0.0;  // coupling decay power, used when coupling == power_law
  Eigen::MatrixXd h0;     // trap-free Hamiltonian, real symmetric
};

namespace detail {

inline void check_basic(int n, double gamma) {
  if (n < 1) throw std::invalid_argument("system size must be at least 1");
  if (gamma < 0.0) throw std::invalid_argument("trap strength must be nonnegative");
}

inline void apply_diagonal(Eigen::MatrixXd& h0, DiagonalMode mode) {
  const int n = static_cast<int>(h0.rows());
  for (int i = 0; i < n; ++i) {
    if (mode == DiagonalMode::uniform_two) {
      h0(i, i) = 2.0;
    } else {
      // Negative off-diagonal row sum: conserving generator diagonal.
      double s = h0.row(i).sum() - h0(i, i);
      h0(i, i) = -s;
    }
  }
}

}  // namespace detail

// Open chain of n nodes with unit nearest-neighbor couplings (off-diagonal -1)
// and traps at both ends. The default end-node diagonal uses the vertex degree;
// the uniform value 2 on every site is selectable.
inline HamiltonianSpec build_chain(int n, double gamma,
                                   DiagonalMode mode = DiagonalMode::vertex_degree) {
  detail::check_basic(n, gamma);
  HamiltonianSpec s;
  s.n = n;
  s.gamma = gamma;
  s.traps = TrapSet::ends(n);
  s.diagonal = mode;
  s.coupling = CouplingKind::nearest;
  s.h0 = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    s.h0(i, i + 1) = -1.0;
    s.h0(i + 1, i) = -1.0;
  }
  detail::apply_diagonal(s.h0, mode);
  return s;
}

// Open chain with couplings -1/d^exponent between nodes at distance d and a
// negative-row-sum diagonal (conserving at gamma = 0). Requires exponent > 1,
// otherwise row sums grow without bound with n.
inline HamiltonianSpec build_long_range_chain(int n, double exponent, double gamma) {
  detail::check_basic(n, gamma);
  if (exponent <= 1.0)
    throw std::invalid_argument("coupling exponent must exceed 1 (row sums diverge otherwise)");
  HamiltonianSpec s;
  s.n = n;
  s.gamma = gamma;
  s.traps = TrapSet::ends(n);
  s.diagonal = DiagonalMode::vertex_degree;
  s.coupling = CouplingKind::power_law;
  s.exponent = exponent;
  s.h0 = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) s.h0(i, j) = -1.0 / std::pow(std::abs(i - j), exponent);
  detail::apply_diagonal(s.h0, DiagonalMode::vertex_degree);
  return s;
}

// General simple graph from a symmetric 0/1 adjacency matrix; couplings are -1
// on edges and the diagonal carries the vertex degree.
inline HamiltonianSpec build_from_adjacency(const Eigen::MatrixXd& adjacency,
                                            TrapSet traps, double gamma) {
  const int n = static_cast<int>(adjacency.rows());
  if (adjacency.cols() != n) throw std::invalid_argument("adjacency matrix must be square");
  detail::check_basic(n, gamma);
  for (int i = 0; i < n; ++i) {
    if (adjacency(i, i) != 0.0)
      throw std::invalid_argument("adjacency diagonal must be zero");
    for (int j = 0; j < n; ++j) {
      if (adjacency(i, j) != adjacency(j, i))
        throw std::invalid_argument("adjacency matrix must be symmetric");
      if (adjacency(i, j) != 0.0 && adjacency(i, j) != 1.0)
        throw std::invalid_argument("adjacency entries must be 0 or 1");
    }
  }
  traps.validate(n);
  HamiltonianSpec s;
  s.n = n;
  s.gamma = gamma;
  s.traps = std::move(traps);
  s.diagonal = DiagonalMode::vertex_degree;
  s.coupling = CouplingKind::nearest;
  s.h0 = -adjacency;
  for (int i = 0; i < n; ++i) s.h0(i, i) = adjacency.row(i).sum();
  return s;
}

// Copy of the system with a different trap placement (possibly empty).
inline HamiltonianSpec with_traps(HamiltonianSpec s, TrapSet traps) {
  traps.validate(s.n);
  s.traps = std::move(traps);
  return s;
}

// H = H0 - i*gamma*P with P the projector onto trap nodes. Complex symmetric
// by construction (equal to its transpose), non-Hermitian for gamma > 0.
inline Eigen::MatrixXcd quantum_hamiltonian(const HamiltonianSpec& s) {
  s.traps.validate(s.n);
  Eigen::MatrixXcd h = s.h0.cast<std::complex<double>>();
  for (int m : s.traps.nodes) h(m - 1, m - 1) -= std::complex<double>(0.0, s.gamma);
  return h;
}

// T = -H0 - gamma*P: generator of the master equation with absorption.
inline Eigen::MatrixXd classical_transfer_matrix(const HamiltonianSpec& s) {
  s.traps.validate(s.n);
  Eigen::MatrixXd t = -s.h0;
  for (int m : s.traps.nodes) t(m - 1, m - 1) -= s.gamma;
  return t;
}

}  // namespace excitrap
