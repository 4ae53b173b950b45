#pragma once

// Incoherent counterpart: master-equation evolution dp/dt = T p with
// absorption, evaluated through the orthonormal eigenbasis of the real
// symmetric transfer matrix.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "excitrap/graph.hpp"
#include "excitrap/quantum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace excitrap {

struct ClassicalEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns
};

inline ClassicalEigen decompose_classical(const Eigen::MatrixXd& t) {
  const int n = static_cast<int>(t.rows());
  if (t.cols() != n || n < 1) throw std::invalid_argument("matrix must be square and nonempty");
  double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
  if ((t - t.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("transfer matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("symmetric eigendecomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

// p_kj(t) = <k| e^{T t} |j>, the probability to be at node k after starting
// at node j. Nodes are 1-based.
inline double classical_transition(const Eigen::MatrixXd& t_matrix, int k, int j,
                                   double t) {
  const int n = static_cast<int>(t_matrix.rows());
  if (k < 1 || k > n || j < 1 || j > n)
    throw std::out_of_range("node index outside 1.." + std::to_string(n));
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  ClassicalEigen e = decompose_classical(t_matrix);
  double p = 0.0;
  for (int l = 0; l < n; ++l)
    p += std::exp(e.values(l) * t) * e.vectors(k - 1, l) * e.vectors(j - 1, l);
  return p;
}

// Mean survival over all non-trap start nodes:
// P(t) = sum_l e^{lambda_l t} s_l^2 / (N - M) with s_l the off-trap component
// sum of eigenvector l. Nonnegative by construction.
inline SurvivalCurve classical_mean_survival(const Eigen::MatrixXd& t_matrix,
                                             const TrapSet& traps, const TimeGrid& grid) {
  const int n = static_cast<int>(t_matrix.rows());
  traps.validate(n);
  if (traps.size() >= n)
    throw std::invalid_argument("trap set covers all nodes; no start nodes remain");
  ClassicalEigen e = decompose_classical(t_matrix);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      if (!traps.contains(k + 1)) s(l) += e.vectors(k, l);

  SurvivalCurve c;
  c.model = CurveModel::classical_exact;
  c.times = grid.times();
  c.values.resize(c.times.size());
  const double denom = n - traps.size();
  for (size_t i = 0; i < c.times.size(); ++i) {
    double v = 0.0;
    for (int l = 0; l < n; ++l) v += std::exp(e.values(l) * c.times[i]) * s(l) * s(l);
    c.values[i] = detail::clamp_tiny(v / denom, c.underflow_clamped);
  }
  c.meta.n = n;
  c.meta.traps = traps;
  return c;
}

inline SurvivalCurve classical_mean_survival(const HamiltonianSpec& spec,
                                             const TimeGrid& grid) {
  SurvivalCurve c = classical_mean_survival(classical_transfer_matrix(spec), spec.traps, grid);
  c.meta.gamma = spec.gamma;
  c.meta.diagonal = spec.diagonal;
  c.meta.conserving_at_zero_gamma = spec.diagonal == DiagonalMode::vertex_degree;
  return c;
}

// Independent oracle: fixed-step 4th-order integration of dp/dt = T p from a
// single start node, reporting the off-trap probability. The trap set is
// explicit because T's diagonal conflates vertex degree and trap strength.
inline SurvivalCurve master_equation_oracle(const Eigen::MatrixXd& t_matrix,
                                            const TrapSet& traps, int start,
                                            const TimeGrid& grid) {
  const int n = static_cast<int>(t_matrix.rows());
  traps.validate(n);
  if (start < 1 || start > n)
    throw std::out_of_range("start node outside 1.." + std::to_string(n));
  double norm_inf = t_matrix.cwiseAbs().rowwise().sum().maxCoeff();
  double h_step = 0.01 / std::max(norm_inf, 1e-300);

  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  p(start - 1) = 1.0;

  SurvivalCurve c;
  c.model = CurveModel::oracle;
  c.times = grid.times();
  auto states = integrate_rk4(t_matrix, p, c.times, h_step);
  c.values.resize(c.times.size());
  const bool full_norm = traps.contains(start);
  for (size_t i = 0; i < states.size(); ++i) {
    double v = 0.0;
    for (int k = 0; k < n; ++k)
      if (full_norm || !traps.contains(k + 1)) v += states[i](k);
    c.values[i] = detail::clamp_tiny(v, c.underflow_clamped);
  }
  c.meta.n = n;
  c.meta.traps = traps;
  return c;
}

}  // namespace excitrap
