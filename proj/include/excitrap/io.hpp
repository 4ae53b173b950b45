#pragma once

// Deterministic serialization: CSV writers for spectra, curves, and sweeps;
// JSON round-trips for Hamiltonian descriptions and analysis reports. All
// file writes are atomic (write to a sibling temp file, then rename).

#include "excitrap/analysis.hpp"
#include "excitrap/graph.hpp"
#include "excitrap/quantum.hpp"
#include "excitrap/spectral.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace excitrap {

using ordered_json = nlohmann::ordered_json;

// Shortest round-trip decimal form, capped at 17 significant digits.
inline std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Write content to path atomically: temp file in the same directory, flush,
// then rename over the target.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path dir = path.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

// --- CSV ---------------------------------------------------------------

// Rows "l,epsilon,gamma", one per mode, 1-based rank in the stored order.
inline std::string spectrum_csv(const Spectrum& s) {
  std::string out = "l,epsilon,gamma\n";
  for (int l = 0; l < s.size(); ++l) {
    out += std::to_string(l + 1);
    out += ',';
    out += fmt17(s.epsilon(l));
    out += ',';
    out += fmt17(s.gamma(l));
    out += '\n';
  }
  return out;
}

// Rows "t,value,model".
inline std::string curve_csv(const SurvivalCurve& c) {
  std::string out = "t,value,model\n";
  const std::string model = to_string(c.model);
  for (int i = 0; i < c.size(); ++i) {
    out += fmt17(c.times[i]);
    out += ',';
    out += fmt17(c.values[i]);
    out += ',';
    out += model;
    out += '\n';
  }
  return out;
}

// Several curves interleaved into one table, in the order given.
inline std::string curves_csv(const std::vector<SurvivalCurve>& curves) {
  std::string out = "t,value,model\n";
  for (const auto& c : curves) {
    const std::string model = to_string(c.model);
    for (int i = 0; i < c.size(); ++i) {
      out += fmt17(c.times[i]);
      out += ',';
      out += fmt17(c.values[i]);
      out += ',';
      out += model;
      out += '\n';
    }
  }
  return out;
}

// Rows "gamma,t_threshold"; an unreached threshold serializes as "inf".
inline std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::string out = "gamma,t_threshold\n";
  for (const auto& p : points) {
    out += fmt17(p.gamma);
    out += ',';
    out += p.time_to_threshold ? fmt17(*p.time_to_threshold) : std::string("inf");
    out += '\n';
  }
  return out;
}

// --- JSON --------------------------------------------------------------

inline ordered_json spec_to_json(const HamiltonianSpec& spec) {
  ordered_json j;
  j["n"] = spec.n;
  j["gamma"] = spec.gamma;
  j["traps"] = spec.traps.nodes;
  j["diagonal"] = to_string(spec.diagonal);
  ordered_json coupling;
  coupling["kind"] = to_string(spec.coupling);
  if (spec.coupling == CouplingKind::power_law) coupling["exponent"] = spec.exponent;
  j["coupling"] = coupling;
  return j;
}

inline HamiltonianSpec spec_from_json(const ordered_json& j) {
  if (!j.contains("n")) throw std::invalid_argument("missing field: n");
  int n = j.at("n").get<int>();
  double gamma = j.value("gamma", 1.0);
  TrapSet traps = j.contains("traps") ? TrapSet(j.at("traps").get<std::vector<int>>())
                                      : TrapSet::ends(n);
  DiagonalMode diag = j.contains("diagonal")
                          ? diagonal_mode_from_string(j.at("diagonal").get<std::string>())
                          : DiagonalMode::vertex_degree;
  CouplingKind kind = CouplingKind::nearest;
  double exponent = 0.0;
  if (j.contains("coupling")) {
    const auto& c = j.at("coupling");
    kind = coupling_kind_from_string(c.at("kind").get<std::string>());
    if (kind == CouplingKind::power_law) {
      if (!c.contains("exponent"))
        throw std::invalid_argument("power_law coupling needs an exponent");
      exponent = c.at("exponent").get<double>();
    }
  }
  HamiltonianSpec spec = kind == CouplingKind::power_law
                             ? build_long_range_chain(n, exponent, gamma)
                             : build_chain(n, gamma, diag);
  return with_traps(std::move(spec), std::move(traps));
}

inline ordered_json fit_to_json(const FitResult& f) {
  ordered_json j;
  j["exponent"] = f.exponent;
  j["prefactor"] = f.prefactor;
  j["window_lo"] = f.window_lo;
  j["window_hi"] = f.window_hi;
  j["r_squared"] = f.r_squared;
  j["n_points"] = f.n_points;
  return j;
}

inline ordered_json curve_meta_to_json(const SurvivalCurve& c) {
  ordered_json j;
  j["model"] = to_string(c.model);
  j["n"] = c.meta.n;
  j["gamma"] = c.meta.gamma;
  j["traps"] = c.meta.traps.nodes;
  j["diagonal"] = to_string(c.meta.diagonal);
  if (c.meta.gamma_min) j["gamma_min"] = *c.meta.gamma_min;
  j["points"] = c.size();
  return j;
}

inline ordered_json collapse_to_json(const CollapseReport& rep) {
  ordered_json j;
  j["mu"] = rep.mu_used;
  j["dispersion"] = rep.dispersion;
  j["window_lo"] = rep.window_lo;
  j["window_hi"] = rep.window_hi;
  ordered_json sizes = ordered_json::array();
  for (const auto& [n, c] : rep.curves) sizes.push_back(n);
  j["sizes"] = sizes;
  return j;
}

inline ordered_json sweep_to_json(const std::vector<SweepPoint>& points, double threshold) {
  ordered_json j;
  j["threshold"] = threshold;
  ordered_json rows = ordered_json::array();
  for (const auto& p : points) {
    ordered_json row;
    row["gamma"] = p.gamma;
    if (p.time_to_threshold)
      row["t_threshold"] = *p.time_to_threshold;
    else
      row["t_threshold"] = nullptr;
    rows.push_back(row);
  }
  j["points"] = rows;
  return j;
}

}  // namespace excitrap
