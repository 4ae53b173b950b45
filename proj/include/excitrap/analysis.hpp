#pragma once

// Fits and scaling analyses over spectra and survival curves: decay-rate
// power law, intermediate-time power law, exponential tail, short-time
// crossover detection, size collapse, and trap-strength sweeps.

#include <Eigen/Dense>

#include "excitrap/classical.hpp"
#include "excitrap/graph.hpp"
#include "excitrap/quantum.hpp"
#include "excitrap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace excitrap {

struct FitResult {
  double exponent = 0.0;
  double prefactor = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
};

namespace detail {

// Unweighted least-squares line y = slope*x + intercept.
struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

inline Line fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  if (n < 3) throw std::invalid_argument("fit needs at least 3 points");
  double sx = 0, sy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit abscissae are all identical");
  Line l;
  l.slope = sxy / sxx;
  l.intercept = my - l.slope * mx;
  double ss_res = 0, ss_tot = 0;
  for (size_t i = 0; i < n; ++i) {
    double e = y[i] - (l.slope * x[i] + l.intercept);
    ss_res += e * e;
    ss_tot += (y[i] - my) * (y[i] - my);
  }
  l.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
  return l;
}

inline std::pair<std::vector<double>, std::vector<double>> window_points(
    const SurvivalCurve& c, double t_lo, double t_hi, bool require_positive) {
  if (!(t_lo < t_hi)) throw std::invalid_argument("fit window needs t_lo < t_hi");
  std::vector<double> ts, vs;
  for (int i = 0; i < c.size(); ++i) {
    if (c.times[i] < t_lo || c.times[i] > t_hi) continue;
    if (require_positive && !(c.values[i] > 0.0))
      throw std::invalid_argument("nonpositive curve value inside fit window");
    ts.push_back(c.times[i]);
    vs.push_back(c.values[i]);
  }
  if (ts.size() < 3) throw std::invalid_argument("fewer than 3 curve points in fit window");
  return {ts, vs};
}

}  // namespace detail

// Default rank window for the decay-rate power-law fit, proportional to the
// system size: [max(2, N/5), 7N/10].
inline std::pair<int, int> default_spectral_window(int n) {
  int lo = std::max(2, n / 5);
  int hi = (7 * n) / 10;
  if (hi <= lo) throw std::invalid_argument("system too small for a spectral fit window");
  return {lo, hi};
}

// Intermediate-time window [2N, min(10N, 0.1/(2 gamma_min))]: past the
// short-time crossover with margin, before the exponential tail matters.
inline std::pair<double, double> intermediate_window(int n, double gamma_min_value) {
  double lo = 2.0 * n;
  double hi = std::min(10.0 * n, 0.1 / (2.0 * gamma_min_value));
  if (!(lo < hi)) throw std::invalid_argument("empty intermediate window");
  return {lo, hi};
}

// Least-squares line on (log rank, log gamma) over ranks l_lo..l_hi of a
// decay-sorted spectrum; exponent is the power, prefactor the amplitude.
inline FitResult fit_spectral_exponent(const Spectrum& s, int l_lo, int l_hi) {
  if (s.sort_order != SortOrder::by_gamma_ascending)
    throw std::invalid_argument("spectrum must be sorted by decay (ascending)");
  if (l_lo < 1 || l_hi > s.size() || l_lo >= l_hi)
    throw std::invalid_argument("invalid rank window");
  std::vector<double> x, y;
  for (int l = l_lo; l <= l_hi; ++l) {
    double g = s.gamma(l - 1);
    if (!(g > 0.0)) throw std::invalid_argument("nonpositive decay rate inside fit window");
    x.push_back(std::log(static_cast<double>(l)));
    y.push_back(std::log(g));
  }
  detail::Line line = detail::fit_line(x, y);
  FitResult f;
  f.exponent = line.slope;
  f.prefactor = std::exp(line.intercept);
  f.window_lo = l_lo;
  f.window_hi = l_hi;
  f.r_squared = line.r_squared;
  f.n_points = static_cast<int>(x.size());
  return f;
}

// Least-squares line on (log t, log value): exponent is the signed log-log
// slope of the curve on the window.
inline FitResult fit_decay_exponent(const SurvivalCurve& c, double t_lo, double t_hi) {
  auto [ts, vs] = detail::window_points(c, t_lo, t_hi, true);
  std::vector<double> x(ts.size()), y(ts.size());
  for (size_t i = 0; i < ts.size(); ++i) {
    x[i] = std::log(ts[i]);
    y[i] = std::log(vs[i]);
  }
  detail::Line line = detail::fit_line(x, y);
  return {line.slope, std::exp(line.intercept), t_lo, t_hi, line.r_squared,
          static_cast<int>(ts.size())};
}

// Least-squares line on (t, log value): exponent is the positive decay rate
// of the exponential tail.
inline FitResult fit_exponential_tail(const SurvivalCurve& c, double t_lo, double t_hi) {
  auto [ts, vs] = detail::window_points(c, t_lo, t_hi, true);
  std::vector<double> y(ts.size());
  for (size_t i = 0; i < ts.size(); ++i) y[i] = std::log(vs[i]);
  detail::Line line = detail::fit_line(ts, y);
  return {-line.slope, std::exp(line.intercept), t_lo, t_hi, line.r_squared,
          static_cast<int>(ts.size())};
}

// Time where the running log-log slope (5-point central differences on a
// uniform log grid) first settles within 10% of the plateau slope, the median
// slope over the intermediate window. Scans from small t upward and requires
// the slope to stay in band for 3 consecutive samples. A curve that starts
// inside the band (pure power law: no short-time regime) is an error.
inline double detect_crossover(const SurvivalCurve& c) {
  const int n_pts = c.size();
  if (n_pts < 12) throw std::runtime_error("no crossover: curve has too few points");
  if (c.meta.n < 1)
    throw std::invalid_argument("crossover detection needs system size in curve metadata");

  std::vector<double> lt(n_pts), lv(n_pts);
  for (int i = 0; i < n_pts; ++i) {
    if (!(c.times[i] > 0.0) || !(c.values[i] > 0.0))
      throw std::runtime_error("no crossover: curve not positive on a log grid");
    lt[i] = std::log(c.times[i]);
    lv[i] = std::log(c.values[i]);
  }
  const double dx = lt[1] - lt[0];
  for (int i = 1; i + 1 < n_pts; ++i)
    if (std::abs((lt[i + 1] - lt[i]) - dx) > 1e-9 * std::max(1.0, std::abs(dx)))
      throw std::invalid_argument("crossover detection requires a uniform logarithmic grid");

  std::vector<double> slope(n_pts, std::numeric_limits<double>::quiet_NaN());
  for (int i = 2; i + 2 < n_pts; ++i)
    slope[i] = (-lv[i + 2] + 8 * lv[i + 1] - 8 * lv[i - 1] + lv[i - 2]) / (12 * dx);

  double win_lo = 2.0 * c.meta.n;
  double win_hi = 10.0 * c.meta.n;
  if (c.meta.gamma_min && *c.meta.gamma_min > 0.0)
    win_hi = std::min(win_hi, 0.1 / (2.0 * *c.meta.gamma_min));
  std::vector<double> plateau_samples;
  for (int i = 2; i + 2 < n_pts; ++i)
    if (c.times[i] >= win_lo && c.times[i] <= win_hi) plateau_samples.push_back(slope[i]);
  if (plateau_samples.size() < 5)
    throw std::runtime_error("no crossover: intermediate window not covered by the grid");
  std::sort(plateau_samples.begin(), plateau_samples.end());
  const double plateau = plateau_samples[plateau_samples.size() / 2];
  const double band = 0.10 * std::abs(plateau);

  auto in_band = [&](int i) { return std::abs(slope[i] - plateau) <= band; };
  const int first = 2;
  for (int i = first; i + 4 < n_pts; ++i) {
    if (in_band(i) && in_band(i + 1) && in_band(i + 2)) {
      if (i == first)
        throw std::runtime_error("no crossover: curve starts inside the plateau band");
      return c.times[i];
    }
  }
  throw std::runtime_error("no crossover: slope never settles onto the plateau");
}

struct CollapseReport {
  std::vector<std::pair<int, SurvivalCurve>> curves;  // (N, rescaled curve)
  double mu_used = 0.0;
  double dispersion = 0.0;
  double window_lo = 0.0;  // common rescaled-time window
  double window_hi = 0.0;
};

// Rescale each curve's time axis by N^-(3-mu) and measure the spread
// (max-min)/mean across curves over the common intermediate window,
// interpolating each curve log-log onto shared sample points.
inline CollapseReport collapse_curves(const std::vector<SurvivalCurve>& curves, double mu) {
  if (curves.empty()) throw std::invalid_argument("collapse needs at least one curve");
  CollapseReport rep;
  rep.mu_used = mu;

  std::vector<std::pair<double, double>> windows;
  for (const auto& c : curves) {
    if (c.meta.n < 1) throw std::invalid_argument("collapse needs system size in metadata");
    if (c.model != curves.front().model)
      throw std::invalid_argument("collapse curves must share the model");
    if (std::abs(c.meta.gamma - curves.front().meta.gamma) > 1e-12)
      throw std::invalid_argument("collapse curves must share the trap strength");
    for (const auto& other : rep.curves)
      if (other.first == c.meta.n)
        throw std::invalid_argument("collapse curves must have distinct sizes");
    double gmin = c.meta.gamma_min.value_or(0.0);
    auto win = gmin > 0.0 ? intermediate_window(c.meta.n, gmin)
                          : std::pair<double, double>(2.0 * c.meta.n, 10.0 * c.meta.n);
    const double scale = std::pow(c.meta.n, 3.0 - mu);
    windows.emplace_back(win.first / scale, win.second / scale);

    SurvivalCurve r = c;
    for (auto& t : r.times) t /= scale;
    rep.curves.emplace_back(c.meta.n, std::move(r));
  }

  double lo = windows.front().first, hi = windows.front().second;
  for (const auto& w : windows) {
    lo = std::max(lo, w.first);
    hi = std::min(hi, w.second);
  }
  if (rep.curves.size() == 1) {
    rep.window_lo = lo;
    rep.window_hi = hi;
    rep.dispersion = 0.0;
    return rep;
  }
  if (!(lo < hi)) throw std::runtime_error("rescaled intermediate windows do not overlap");
  rep.window_lo = lo;
  rep.window_hi = hi;

  // Log-log interpolation of each curve at shared rescaled times.
  auto interp = [](const SurvivalCurve& c, double tau) {
    const auto& ts = c.times;
    auto it = std::lower_bound(ts.begin(), ts.end(), tau);
    size_t j = std::min(std::max<size_t>(it - ts.begin(), 1), ts.size() - 1);
    double x0 = std::log(ts[j - 1]), x1 = std::log(ts[j]);
    double y0 = std::log(c.values[j - 1]), y1 = std::log(c.values[j]);
    double x = std::log(tau);
    return std::exp(y0 + (y1 - y0) * (x - x0) / (x1 - x0));
  };

  const int samples = 50;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    double tau = lo * std::exp(std::log(hi / lo) * i / (samples - 1));
    double vmin = std::numeric_limits<double>::infinity(), vmax = 0.0, sum = 0.0;
    for (const auto& [n, c] : rep.curves) {
      double v = interp(c, tau);
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
      sum += v;
    }
    double mean = sum / rep.curves.size();
    if (mean > 0.0) worst = std::max(worst, (vmax - vmin) / mean);
  }
  rep.dispersion = worst;
  return rep;
}

struct SweepPoint {
  double gamma = 0.0;
  std::optional<double> time_to_threshold;  // absent when never reached
};

// For each trap strength, the first time the mean survival of the end-trapped
// chain falls below the threshold, interpolated between grid points on
// (log t, log value) axes.
inline std::vector<SweepPoint> gamma_sweep(int n, const std::vector<double>& gammas,
                                           double threshold,
                                           DiagonalMode mode = DiagonalMode::vertex_degree) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw std::invalid_argument("threshold must lie strictly between 0 and 1");
  std::vector<SweepPoint> out;
  for (double g : gammas) {
    if (!(g > 0.0)) throw std::invalid_argument("sweep trap strengths must be positive");
    HamiltonianSpec spec = build_chain(n, g, mode);
    Spectrum s = sort_by_decay(decompose(spec));
    SurvivalCurve c = mean_survival(s, spec.traps, TimeGrid::default_for(gamma_min(s)));
    SweepPoint p;
    p.gamma = g;
    for (int i = 0; i < c.size(); ++i) {
      if (c.values[i] < threshold) {
        if (i == 0) {
          p.time_to_threshold = c.times[0];
        } else {
          double x0 = std::log(c.times[i - 1]), x1 = std::log(c.times[i]);
          double y0 = std::log(c.values[i - 1]), y1 = std::log(c.values[i]);
          double y = std::log(threshold);
          p.time_to_threshold = std::exp(x0 + (x1 - x0) * (y - y0) / (y1 - y0));
        }
        break;
      }
    }
    out.push_back(p);
  }
  return out;
}

// Dimensionless time to physical microseconds for a coupling quoted in MHz
// (interpreted as an ordinary frequency: t_phys = t / (2 pi f)).
inline double physical_time(double t_dimensionless, double coupling_megahertz) {
  if (!(coupling_megahertz > 0.0))
    throw std::invalid_argument("coupling frequency must be positive");
  return t_dimensionless / (2.0 * std::numbers::pi * coupling_megahertz);
}

}  // namespace excitrap
