#pragma once

// Coherent dynamics: transition amplitudes, per-node and mean survival
// probabilities evaluated from the spectrum, plus an independent fixed-step
// time-integration oracle.

#include <Eigen/Dense>

#include "excitrap/graph.hpp"
#include "excitrap/spectral.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace excitrap {

struct TimeGrid {
  enum class Kind { linear, logarithmic };
  Kind kind = Kind::logarithmic;
  double t_min = 0.1;
  double t_max = 1.0;
  int n_points = 200;

  void validate() const {
    if (!(t_min < t_max)) throw std::invalid_argument("time grid needs t_min < t_max");
    if (n_points < 2) throw std::invalid_argument("time grid needs at least 2 points");
    if (kind == Kind::logarithmic && t_min <= 0.0)
      throw std::invalid_argument("logarithmic time grid needs t_min > 0");
    if (t_min < 0.0) throw std::invalid_argument("time grid needs t_min >= 0");
  }

  std::vector<double> times() const {
    validate();
    std::vector<double> ts(n_points);
    if (kind == Kind::linear) {
      double dt = (t_max - t_min) / (n_points - 1);
      for (int i = 0; i < n_points; ++i) ts[i] = t_min + dt * i;
    } else {
      double r = std::log(t_max / t_min) / (n_points - 1);
      for (int i = 0; i < n_points; ++i) ts[i] = t_min * std::exp(r * i);
    }
    ts.back() = t_max;
    return ts;
  }

  static TimeGrid logspace(double t_min, double t_max, int n = 200) {
    return {Kind::logarithmic, t_min, t_max, n};
  }
  static TimeGrid linspace(double t_min, double t_max, int n) {
    return {Kind::linear, t_min, t_max, n};
  }
  // Spans all decay regimes: from well before the ballistic crossover to
  // deep inside the exponential tail.
  static TimeGrid default_for(double gamma_min_value, int n = 200) {
    if (!(gamma_min_value > 0.0))
      throw std::invalid_argument("default grid needs a positive smallest decay rate");
    return logspace(0.1, 10.0 / (2.0 * gamma_min_value), n);
  }
};

enum class CurveModel {
  quantum_exact,
  quantum_longtime,
  quantum_powerlaw_model,
  classical_exact,
  oracle
};

inline std::string to_string(CurveModel m) {
  switch (m) {
    case CurveModel::quantum_exact: return "quantum_exact";
    case CurveModel::quantum_longtime: return "quantum_longtime";
    case CurveModel::quantum_powerlaw_model: return "quantum_powerlaw_model";
    case CurveModel::classical_exact: return "classical_exact";
    case CurveModel::oracle: return "oracle";
  }
  throw std::logic_error("unreachable");
}

struct CurveMeta {
  int n = 0;
  double gamma = 0.0;
  TrapSet traps;
  DiagonalMode diagonal = DiagonalMode::vertex_degree;
  std::optional<double> gamma_min;  // smallest decay rate when a spectrum was at hand
  bool conserving_at_zero_gamma = true;  // false for uniform_two boundary terms
};

struct SurvivalCurve {
  std::vector<double> times;
  std::vector<double> values;
  CurveModel model = CurveModel::quantum_exact;
  CurveMeta meta;
  bool underflow_clamped = false;

  int size() const { return static_cast<int>(times.size()); }

  // Exact and oracle curves are probabilities; model curves (power law,
  // long-time approximation) may exceed 1 by construction.
  void validate() const {
    if (times.size() != values.size())
      throw std::invalid_argument("curve times/values length mismatch");
    for (size_t i = 1; i < times.size(); ++i)
      if (!(times[i] > times[i - 1]))
        throw std::invalid_argument("curve times must be strictly increasing");
    const bool bounded = model == CurveModel::quantum_exact ||
                         model == CurveModel::classical_exact ||
                         model == CurveModel::oracle;
    if (bounded) {
      for (double v : values)
        if (v < -1e-10 || v > 1.0 + 1e-10)
          throw std::invalid_argument("survival value outside [0,1]: " + std::to_string(v));
    }
  }
};

namespace detail {

constexpr double underflow_floor = 1e-300;

inline double clamp_tiny(double v, bool& clamped) {
  if (v != 0.0 && std::abs(v) < underflow_floor) {
    clamped = true;
    return 0.0;
  }
  return v;
}

}  // namespace detail

// Spectral overlap tables for survival evaluation over a fixed trap set.
// k_right = R^dag Qbar R and k_left = L^dag Qbar L, where Qbar projects off
// the trap nodes; each is assembled as the full-basis Gram matrix minus the
// trap-projected part, so evaluation needs no per-node sums at runtime and
// costs O(N^2) per time point.
struct SurvivalTables {
  Eigen::VectorXd epsilon;
  Eigen::VectorXd gamma;
  Eigen::MatrixXcd left;      // bra coefficients, column l
  Eigen::MatrixXcd k_right;
  Eigen::MatrixXcd k_hadamard;  // k_right .* k_left, drives the mean survival
  int n = 0;
  int m = 0;

  Eigen::VectorXcd phases(double t) const {
    Eigen::VectorXcd f(epsilon.size());
    for (int l = 0; l < epsilon.size(); ++l)
      f(l) = std::exp(std::complex<double>(-gamma(l) * t, -epsilon(l) * t));
    return f;
  }
};

inline SurvivalTables make_survival_tables(const Spectrum& s, const TrapSet& traps) {
  const int n = s.size();
  traps.validate(n);
  SurvivalTables t;
  t.n = n;
  t.m = traps.size();
  t.epsilon = s.epsilon;
  t.gamma = s.gamma;
  t.left = s.left;

  auto trap_block = [&](const Eigen::MatrixXcd& v) {
    Eigen::MatrixXcd b(t.m, n);
    for (int r = 0; r < t.m; ++r) b.row(r) = v.row(traps.nodes[r] - 1);
    return b;
  };
  // Full-basis term minus trap-projected double sum.
  Eigen::MatrixXcd br = trap_block(s.right);
  t.k_right = s.right.adjoint() * s.right - br.adjoint() * br;
  Eigen::MatrixXcd bl = trap_block(s.left);
  Eigen::MatrixXcd k_left = s.left.adjoint() * s.left - bl.adjoint() * bl;
  t.k_hadamard = t.k_right.cwiseProduct(k_left);
  return t;
}

// alpha_kj(t) = sum_l e^{-i E_l t} <k|Phi_l><Phi~_l|j>, exact for a complete
// biorthonormal eigensystem. Nodes are 1-based.
inline std::complex<double> transition_amplitude(const Spectrum& s, int k, int j, double t) {
  const int n = s.size();
  if (k < 1 || k > n || j < 1 || j > n)
    throw std::out_of_range("node index outside 1.." + std::to_string(n));
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  std::complex<double> a = 0.0;
  for (int l = 0; l < n; ++l) {
    std::complex<double> phase =
        std::exp(std::complex<double>(-s.gamma(l) * t, -s.epsilon(l) * t));
    a += phase * s.right(k - 1, l) * s.left(j - 1, l);
  }
  return a;
}

// Probability that a walker started at node j (not a trap) has not yet been
// absorbed and sits outside the trap set at time t, evaluated via the
// two-term spectral form rather than by summing squared amplitudes over nodes.
inline double node_survival(const SurvivalTables& tables, int j, double t) {
  if (j < 1 || j > tables.n)
    throw std::out_of_range("node index outside 1.." + std::to_string(tables.n));
  Eigen::VectorXcd z = tables.phases(t).cwiseProduct(tables.left.row(j - 1).transpose());
  return (z.adjoint() * tables.k_right * z)(0, 0).real();
}

inline double node_survival(const Spectrum& s, int j, const TrapSet& traps, double t) {
  if (traps.contains(j))
    throw std::invalid_argument("survival start node " + std::to_string(j) + " is a trap");
  return node_survival(make_survival_tables(s, traps), j, t);
}

// Mean survival over all non-trap start nodes on a time grid, using the
// precomputed overlap tables: Pi(t) = f(t)^dag (K_r .* K_l) f(t) / (N - M).
inline SurvivalCurve mean_survival(const Spectrum& s, const TrapSet& traps,
                                   const TimeGrid& grid) {
  const int n = s.size();
  traps.validate(n);
  if (traps.size() >= n)
    throw std::invalid_argument("trap set covers all nodes; no start nodes remain");
  SurvivalTables tables = make_survival_tables(s, traps);
  SurvivalCurve c;
  c.model = CurveModel::quantum_exact;
  c.times = grid.times();
  c.values.resize(c.times.size());
  const double denom = n - traps.size();
  for (size_t i = 0; i < c.times.size(); ++i) {
    Eigen::VectorXcd f = tables.phases(c.times[i]);
    double v = (f.adjoint() * tables.k_hadamard * f)(0, 0).real() / denom;
    c.values[i] = detail::clamp_tiny(v, c.underflow_clamped);
  }
  c.meta.n = n;
  c.meta.traps = traps;
  if (s.gamma.minCoeff() > 0.0) c.meta.gamma_min = s.gamma.minCoeff();
  return c;
}

// Convenience overload: decomposes the system and fills the curve metadata.
inline SurvivalCurve mean_survival(const HamiltonianSpec& spec, const TimeGrid& grid) {
  Spectrum s = sort_by_decay(decompose(spec));
  SurvivalCurve c = mean_survival(s, spec.traps, grid);
  c.meta.gamma = spec.gamma;
  c.meta.diagonal = spec.diagonal;
  c.meta.conserving_at_zero_gamma = spec.diagonal == DiagonalMode::vertex_degree;
  return c;
}

// Long-time approximation Pi(t) ~ sum_l e^{-2 gamma_l t} / (N - M): drops the
// oscillating and trap-overlap corrections. Starts at N/(N-M) > 1 at t = 0.
inline SurvivalCurve mean_survival_longtime(const Spectrum& s, const TrapSet& traps,
                                            const TimeGrid& grid) {
  const int n = s.size();
  traps.validate(n);
  if (traps.size() >= n)
    throw std::invalid_argument("trap set covers all nodes; no start nodes remain");
  SurvivalCurve c;
  c.model = CurveModel::quantum_longtime;
  c.times = grid.times();
  c.values.resize(c.times.size());
  const double denom = n - traps.size();
  for (size_t i = 0; i < c.times.size(); ++i) {
    double v = 0.0;
    for (int l = 0; l < n; ++l) v += std::exp(-2.0 * s.gamma(l) * c.times[i]);
    c.values[i] = detail::clamp_tiny(v / denom, c.underflow_clamped);
  }
  c.meta.n = n;
  c.meta.traps = traps;
  if (s.gamma.minCoeff() > 0.0) c.meta.gamma_min = s.gamma.minCoeff();
  return c;
}

inline SurvivalCurve mean_survival_longtime(const HamiltonianSpec& spec,
                                            const TimeGrid& grid) {
  Spectrum s = sort_by_decay(decompose(spec));
  SurvivalCurve c = mean_survival_longtime(s, spec.traps, grid);
  c.meta.gamma = spec.gamma;
  c.meta.diagonal = spec.diagonal;
  c.meta.conserving_at_zero_gamma = spec.diagonal == DiagonalMode::vertex_degree;
  return c;
}

// Reference power-law curve a * t^(-1/mu), for overlays and fits.
inline SurvivalCurve powerlaw_model(double a, double mu, const TimeGrid& grid) {
  if (!(a > 0.0) || !(mu > 0.0))
    throw std::invalid_argument("power-law model needs a > 0 and mu > 0");
  if (grid.t_min <= 0.0)
    throw std::invalid_argument("power-law model needs t_min > 0");
  SurvivalCurve c;
  c.model = CurveModel::quantum_powerlaw_model;
  c.times = grid.times();
  c.values.resize(c.times.size());
  for (size_t i = 0; i < c.times.size(); ++i)
    c.values[i] = a * std::pow(c.times[i], -1.0 / mu);
  return c;
}

// Fixed-step classical RK4 integration of dy/dt = gen * y, reporting the state
// at each requested time. Works for real or complex generators.
template <typename Mat, typename Vec>
inline std::vector<Vec> integrate_rk4(const Mat& gen, Vec y,
                                      const std::vector<double>& ts, double h_max) {
  if (!(h_max > 0.0)) throw std::invalid_argument("integration step must be positive");
  if (!ts.empty() && ts.back() / h_max > 2e9)
    throw std::invalid_argument("integration step underflow: over 2e9 steps requested");
  std::vector<Vec> out;
  out.reserve(ts.size());
  double t = 0.0;
  for (double target : ts) {
    if (target < t) throw std::invalid_argument("report times must be nondecreasing");
    while (t < target) {
      double h = std::min(h_max, target - t);
      Vec k1 = gen * y;
      Vec k2 = gen * (y + (h / 2) * k1);
      Vec k3 = gen * (y + (h / 2) * k2);
      Vec k4 = gen * (y + h * k3);
      y += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
      t += h;
    }
    out.push_back(y);
  }
  return out;
}

// Independent oracle: integrates i d psi/dt = H psi from a single start node
// with step <= 0.01 / ||H||_inf and reports the off-trap probability
// sum_{k not in M} |psi_k|^2. Trap nodes are recovered from the negative
// imaginary diagonal entries of H. Started on a trap node itself, the curve
// reports the full remaining norm |psi|^2 instead (the off-trap projection of
// a trap start is not a survival).
inline SurvivalCurve propagate_oracle(const Eigen::MatrixXcd& h, int start,
                                      const TimeGrid& grid) {
  const int n = static_cast<int>(h.rows());
  if (start < 1 || start > n)
    throw std::out_of_range("start node outside 1.." + std::to_string(n));
  const double scale = std::max(1e-300, h.cwiseAbs().maxCoeff());
  std::vector<int> trap_nodes;
  for (int i = 0; i < n; ++i)
    if (h(i, i).imag() < -1e-14 * scale) trap_nodes.push_back(i + 1);
  TrapSet traps(trap_nodes);

  double norm_inf = h.cwiseAbs().rowwise().sum().maxCoeff();
  double h_step = 0.01 / std::max(norm_inf, 1e-300);

  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n);
  psi(start - 1) = 1.0;
  Eigen::MatrixXcd gen = std::complex<double>(0.0, -1.0) * h;

  SurvivalCurve c;
  c.model = CurveModel::oracle;
  c.times = grid.times();
  auto states = integrate_rk4(gen, psi, c.times, h_step);
  c.values.resize(c.times.size());
  const bool full_norm = traps.contains(start);
  for (size_t i = 0; i < states.size(); ++i) {
    double v = 0.0;
    for (int k = 0; k < n; ++k)
      if (full_norm || !traps.contains(k + 1)) v += std::norm(states[i](k));
    c.values[i] = detail::clamp_tiny(v, c.underflow_clamped);
  }
  c.meta.n = n;
  c.meta.traps = traps;
  if (!traps.empty()) c.meta.gamma = -h(traps.nodes[0] - 1, traps.nodes[0] - 1).imag();
  return c;
}

}  // namespace excitrap
