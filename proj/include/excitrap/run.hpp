#pragma once

// Run layer shared by the command-line tool and the tests: a validated
// configuration, its JSON round-trip (the manifest format), and the
// subcommand dispatcher that writes CSV/JSON/SVG artifacts.

#include "excitrap/graph.hpp"
#include "excitrap/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace excitrap {

enum class Subcommand { spectrum, survival, classical_walk, sweep, collapse, reproduce };

std::string to_string(Subcommand s);
Subcommand subcommand_from_string(const std::string& s);

struct RunConfig {
  Subcommand subcommand = Subcommand::spectrum;

  // System description.
  int n = 100;
  double gamma = 1.0;
  std::optional<std::vector<int>> traps;  // unset -> both chain ends
  DiagonalMode diagonal = DiagonalMode::vertex_degree;
  CouplingKind coupling = CouplingKind::nearest;
  double exponent = 3.0;

  // Time grid; unset bounds resolve from the slowest decay rate.
  std::optional<double> t_min;
  std::optional<double> t_max;
  int points = 200;

  // Analysis parameters; unset windows resolve from the system size.
  std::optional<int> fit_lo;
  std::optional<int> fit_hi;
  double threshold = 0.5;
  std::optional<double> mu;              // unset -> fitted from the spectrum
  std::vector<double> gammas = {0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0};
  std::vector<int> sizes = {40, 60, 80, 100};

  // Output location and formats.
  std::string out = ".";
  bool write_csv = true;
  bool write_json = true;
  bool write_svg = true;

  void validate() const;
};

// Trap flag syntax: comma-separated 1-based nodes, with "N" standing for the
// last node ("1,N" is both ends); "none" disables trapping.
std::vector<int> parse_traps(const std::string& text, int n);

ordered_json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const ordered_json& j, RunConfig base = {});

// Execute one subcommand, writing its artifacts (and a manifest echoing the
// resolved configuration) under cfg.out. Throws std::invalid_argument for bad
// configurations and std::runtime_error for computation failures.
void run(const RunConfig& cfg);

}  // namespace excitrap
