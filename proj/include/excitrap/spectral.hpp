#pragma once

// Dense eigendecomposition of complex-symmetric matrices with biorthonormal
// left/right eigenvector pairs, decay-ordered sorting, and quality diagnostics.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "excitrap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace excitrap {

enum class SortOrder { unsorted, by_gamma_ascending, by_epsilon_ascending };

// Eigensystem of a complex-symmetric matrix. Eigenvalues are stored as
// E_l = epsilon(l) - i*gamma(l) with gamma the decay part. Column l of
// `right` is the ket |Phi_l>; the bra <Phi~_l| is the unconjugated transpose
// of column l of `left` (for complex-symmetric input, left == right after
// bilinear normalization v^T v = 1).
struct Spectrum {
  Eigen::VectorXd epsilon;
  Eigen::VectorXd gamma;
  Eigen::MatrixXcd right;
  Eigen::MatrixXcd left;
  double biorthonormality_residual = 0.0;
  double completeness_residual = 0.0;
  SortOrder sort_order = SortOrder::unsorted;
  Eigen::MatrixXcd matrix;  // the matrix that was decomposed

  int size() const { return static_cast<int>(epsilon.size()); }
  std::complex<double> eigenvalue(int l) const {
    return {epsilon(l), -gamma(l)};
  }
};

struct SpectrumReport {
  double biorthonormality = 0.0;
  double completeness = 0.0;
  double reconstruction = 0.0;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

[[noreturn]] inline void throw_exceptional(const std::vector<int>& idx,
                                           const Eigen::VectorXcd& values) {
  std::ostringstream os;
  os << "exceptional point: non-diagonalizable eigenvalue cluster at indices";
  for (int i : idx) os << " " << (i + 1);
  os << " (eigenvalues";
  for (int i : idx) os << " " << values(i).real() << (values(i).imag() < 0 ? "-" : "+")
                       << std::abs(values(i).imag()) << "i";
  os << ")";
  throw std::runtime_error(os.str());
}

// Group indices whose eigenvalues lie within `tol` of each other (transitively).
inline std::vector<std::vector<int>> value_clusters(const Eigen::VectorXcd& values,
                                                    double tol) {
  const int n = static_cast<int>(values.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (values(a).real() != values(b).real()) return values(a).real() < values(b).real();
    return values(a).imag() < values(b).imag();
  });
  // Sweep in real part; merge neighbors within tol in the complex plane.
  std::vector<std::vector<int>> clusters;
  for (int k = 0; k < n; ++k) {
    bool merged = false;
    if (!clusters.empty()) {
      for (int prev : clusters.back()) {
        if (std::abs(values(order[k]) - values(prev)) <= tol) {
          merged = true;
          break;
        }
      }
    }
    if (merged)
      clusters.back().push_back(order[k]);
    else
      clusters.push_back({order[k]});
  }
  return clusters;
}

}  // namespace detail

// Full eigendecomposition of a complex-symmetric matrix H. Right eigenvectors
// are bilinearly normalized (v^T v = 1) so that the transposed vectors form the
// biorthonormal left family; eigenvalue clusters closer than 1e-8*max|H| get a
// pairwise bilinear re-orthogonalization. A defective (non-diagonalizable)
// input is reported as an exceptional-point error naming the colliding
// eigenvalue indices. If the transpose shortcut fails its own verification,
// left vectors are recomputed from an independent solve of H^T.
inline Spectrum decompose(const Eigen::MatrixXcd& h) {
  const int n = static_cast<int>(h.rows());
  if (h.cols() != n || n < 1) throw std::invalid_argument("matrix must be square and nonempty");
  const double scale = std::max(1.0, detail::max_abs(h));
  if (detail::max_abs(h - h.transpose()) > 1e-12 * scale)
    throw std::invalid_argument("matrix must be complex symmetric (equal to its transpose)");

  Spectrum s;
  s.matrix = h;

  Eigen::VectorXcd values;
  Eigen::MatrixXcd vec;
  if (n == 1) {
    values = h.diagonal();
    vec = Eigen::MatrixXcd::Ones(1, 1);
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h, true);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("eigendecomposition failed to converge");
    values = es.eigenvalues();
    vec = es.eigenvectors();
  }

  // Bilinear normalization v^T v = 1; a self-orthogonal vector marks an
  // exceptional point.
  const double self_orth_tol = 1e-8;
  const double cluster_tol = 1e-8 * scale;
  auto clusters = detail::value_clusters(values, cluster_tol);

  for (const auto& cluster : clusters) {
    // Within a near-degenerate cluster, bilinear Gram-Schmidt against the
    // already-normalized members keeps the family biorthonormal.
    std::vector<int> done;
    for (int idx : cluster) {
      Eigen::VectorXcd v = vec.col(idx);
      for (int prev : done) {
        std::complex<double> proj = (vec.col(prev).transpose() * v)(0, 0);
        v -= proj * vec.col(prev);
      }
      std::complex<double> d = (v.transpose() * v)(0, 0);
      if (std::abs(d) < self_orth_tol) detail::throw_exceptional(cluster, values);
      vec.col(idx) = v / std::sqrt(d);
      done.push_back(idx);
    }
  }

  s.right = vec;
  s.left = vec;  // transpose shortcut for complex-symmetric input
  s.epsilon = values.real();
  s.gamma = -values.imag();
  s.sort_order = SortOrder::unsorted;

  auto residuals = [&](const Eigen::MatrixXcd& left, const Eigen::MatrixXcd& right) {
    double biorth = detail::max_abs(left.transpose() * right -
                                    Eigen::MatrixXcd::Identity(n, n));
    double complete = detail::max_abs(right * left.transpose() -
                                      Eigen::MatrixXcd::Identity(n, n));
    return std::pair<double, double>(biorth, complete);
  };
  std::tie(s.biorthonormality_residual, s.completeness_residual) = residuals(s.left, s.right);

  // Fallback: independent left-eigenvector solve if the shortcut degraded.
  if (s.biorthonormality_residual > 1e-8 && n > 1) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es_t(h.transpose(), true);
    if (es_t.info() == Eigen::Success) {
      Eigen::MatrixXcd lvec = es_t.eigenvectors();
      Eigen::VectorXcd lval = es_t.eigenvalues();
      Eigen::MatrixXcd matched(n, n);
      std::vector<bool> used(n, false);
      for (int l = 0; l < n; ++l) {
        int best = -1;
        double best_d = 0.0;
        for (int k = 0; k < n; ++k) {
          if (used[k]) continue;
          double d = std::abs(lval(k) - values(l));
          if (best < 0 || d < best_d) {
            best = k;
            best_d = d;
          }
        }
        used[best] = true;
        Eigen::VectorXcd w = lvec.col(best);
        std::complex<double> d = (w.transpose() * s.right.col(l))(0, 0);
        if (std::abs(d) < self_orth_tol) detail::throw_exceptional({l}, values);
        matched.col(l) = w / d;
      }
      auto [biorth2, complete2] = residuals(matched, s.right);
      if (biorth2 < s.biorthonormality_residual) {
        s.left = matched;
        s.biorthonormality_residual = biorth2;
        s.completeness_residual = complete2;
      }
    }
  }

  if (s.completeness_residual > 1e-6) {
    // Identify the closest eigenvalue pair for the report.
    int a = 0, b = 1;
    double dmin = -1.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double d = std::abs(values(i) - values(j));
        if (dmin < 0 || d < dmin) {
          dmin = d;
          a = i;
          b = j;
        }
      }
    detail::throw_exceptional({a, b}, values);
  }
  return s;
}

inline Spectrum decompose(const HamiltonianSpec& spec) {
  return decompose(quantum_hamiltonian(spec));
}

// Reorder eigenpairs by gamma ascending; ties broken by epsilon ascending,
// then original index. Idempotent.
inline Spectrum sort_by_decay(const Spectrum& s) {
  const int n = s.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (s.gamma(a) != s.gamma(b)) return s.gamma(a) < s.gamma(b);
    return s.epsilon(a) < s.epsilon(b);
  });
  Spectrum out = s;
  for (int l = 0; l < n; ++l) {
    out.epsilon(l) = s.epsilon(order[l]);
    out.gamma(l) = s.gamma(order[l]);
    out.right.col(l) = s.right.col(order[l]);
    out.left.col(l) = s.left.col(order[l]);
  }
  out.sort_order = SortOrder::by_gamma_ascending;
  return out;
}

// Reorder eigenpairs by epsilon ascending; ties broken by gamma ascending,
// then original index. Idempotent.
inline Spectrum sort_by_energy(const Spectrum& s) {
  const int n = s.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (s.epsilon(a) != s.epsilon(b)) return s.epsilon(a) < s.epsilon(b);
    return s.gamma(a) < s.gamma(b);
  });
  Spectrum out = s;
  for (int l = 0; l < n; ++l) {
    out.epsilon(l) = s.epsilon(order[l]);
    out.gamma(l) = s.gamma(order[l]);
    out.right.col(l) = s.right.col(order[l]);
    out.left.col(l) = s.left.col(order[l]);
  }
  out.sort_order = SortOrder::by_epsilon_ascending;
  return out;
}

// Smallest decay rate. Errors on a sign-convention violation (gamma < -1e-12).
inline double gamma_min(const Spectrum& s) {
  if (s.size() == 0) throw std::invalid_argument("empty spectrum");
  double mn = s.gamma.minCoeff();
  if (mn < -1e-12)
    throw std::runtime_error("sign-convention violation: negative decay rate " +
                             std::to_string(mn));
  return mn;
}

// Recompute biorthonormality, completeness, and reconstruction residuals from
// the stored matrix and compare against `tolerance`.
inline SpectrumReport verify(const Spectrum& s, double tolerance) {
  const int n = s.size();
  SpectrumReport r;
  Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
  r.biorthonormality = detail::max_abs(s.left.transpose() * s.right - eye);
  r.completeness = detail::max_abs(s.right * s.left.transpose() - eye);
  Eigen::VectorXcd values(n);
  for (int l = 0; l < n; ++l) values(l) = s.eigenvalue(l);
  Eigen::MatrixXcd recon = s.right * values.asDiagonal() * s.left.transpose();
  double hscale = std::max(1e-300, detail::max_abs(s.matrix));
  r.reconstruction = detail::max_abs(recon - s.matrix) / hscale;
  r.pass = r.biorthonormality <= tolerance && r.completeness <= tolerance &&
           r.reconstruction <= tolerance;
  std::ostringstream os;
  if (!r.pass) {
    os << "residual over tolerance " << tolerance << ":";
    if (r.biorthonormality > tolerance) os << " biorthonormality=" << r.biorthonormality;
    if (r.completeness > tolerance) os << " completeness=" << r.completeness;
    if (r.reconstruction > tolerance) os << " reconstruction=" << r.reconstruction;
  } else {
    os << "all residuals within " << tolerance;
  }
  r.detail = os.str();
  return r;
}

}  // namespace excitrap
