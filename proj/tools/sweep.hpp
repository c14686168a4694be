#pragma once

// Sweep tables behind the command-line tool: grid parsing, the five
// commands, and the CSV/JSON writers. Kept out of main.cpp so the tests can
// drive it without spawning processes.

#include <cvgauss/types.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace cvgauss::cli {

struct Column {
  std::string name;
  std::string unit;
  /// Values may be +inf; JSON then carries null plus <name>_infinite.
  bool may_be_infinite = false;
};

/// An empty cell means "not available" (CSV: empty field, JSON: null).
using Cell = std::optional<double>;

struct Table {
  std::string command;
  LogBase base = LogBase::Natural;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
};

/// "a,b,c", "start:stop:n" (n evenly spaced points, both ends included) or a
/// mix of both separated by commas. "inf" is accepted where `allow_inf`.
/// The result must be non-empty and strictly monotone; DomainError otherwise.
std::vector<double> parse_grid(const std::string& text, bool allow_inf = false);

/// Comma-separated list of finite numbers with no ordering requirement.
std::vector<double> parse_list(const std::string& text);

struct SweepOptions {
  std::string zeta;
  std::string eta;
  std::string t2;
  std::string r2;
  std::string nth;
  std::string length;
  double absorption_length = 1.0;
  LogBase base = LogBase::Natural;
  std::string gamma;
  std::string mean;
  double phase1 = 0.0;
  double phase2 = 0.0;
  int samples = 0;
  std::uint64_t seed = 1;
};

/// Maximally transmittable entanglement along a Lambert-Beer fiber, per arm
/// length l and squeezing zeta (inf allowed at zero temperature).
Table entanglement_sweep(const SweepOptions& options);

/// Teleportation fidelity of a pure squeezed signal over (eta, zeta).
Table fidelity_sweep(const SweepOptions& options);

/// Thermal separability threshold and separability length.
Table separability_report(const SweepOptions& options);

/// Full protocol for one input state over a zeta grid.
Table teleport_sweep(const SweepOptions& options);

/// Physicality, symplectic spectrum and mode-count specific diagnostics of a
/// user-supplied covariance matrix. `physical` reports the verdict.
Table check_state(const SweepOptions& options, bool& physical);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

}  // namespace cvgauss::cli
