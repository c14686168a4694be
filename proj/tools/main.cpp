// cvgauss: batch sweeps over the Gaussian-state library.
//
// Exit codes: 0 success, 2 invalid specification (bad flag, grid or
// parameter range), 3 numerical-validity failure (unphysical matrix,
// failed cross-check).

#include "sweep.hpp"

#include <CLI11.hpp>

#include <cvgauss/types.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr int kSpecError = 2;
constexpr int kNumericalError = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace cvgauss;

  CLI::App app{"Gaussian-state sweeps: entanglement through absorbing fibers and teleportation fidelity"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read defaults from a key=value file; command-line flags take precedence");
  app.allow_config_extras(false);

  cli::SweepOptions o;
  std::string base = "e";
  std::string format = "csv";
  std::string out_path;

  const char* grid = "Grid: list a,b,c and/or ranges start:stop:n";
  // Config files split comma lists into separate values; rejoin them.
  const auto list = [&](const std::string& flag, std::string& target, const std::string& help) {
    app.add_option(flag, target, help)->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
  };
  list("--zeta", o.zeta, std::string("Two-mode squeezing. ") + grid + "; 'inf' where meaningful");
  list("--eta", o.eta, std::string("Signal squeezing. ") + grid);
  list("--t2", o.t2, std::string("Fiber transmittance |T|^2. ") + grid);
  list("--r2", o.r2, std::string("Fiber reflectance |R|^2. ") + grid);
  list("--nth", o.nth, std::string("Thermal photons of the fiber bath. ") + grid);
  list("--length", o.length, std::string("Fiber length per arm. ") + grid);
  app.add_option("--absorption-length", o.absorption_length, "Absorption length l_A (same unit as --length)");
  app.add_option("--log-base", base, "Logarithm base for entanglement")->check(CLI::IsMember({"e", "2"}));
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "Write to PATH instead of standard output");
  app.add_option("--seed", o.seed, "Seed for outcome sampling");
  list("--gamma", o.gamma, "Covariance entries: x,y,z for teleport, row-major 2x2 or 4x4 for check-state");
  list("--mean", o.mean, "Input mean kx,kp for sampled teleportation");
  app.add_option("--phase1", o.phase1, "Sender fiber phase");
  app.add_option("--phase2", o.phase2, "Receiver fiber phase");
  app.add_option("--samples", o.samples, "Outcome samples for the Monte-Carlo fidelity with the ideal gain")
      ->check(CLI::NonNegativeNumber);

  auto* entanglement = app.add_subcommand("entanglement-sweep", "Transmittable log-negativity versus fiber length");
  auto* fidelity = app.add_subcommand("fidelity-sweep", "Teleportation fidelity of a squeezed signal");
  auto* separability = app.add_subcommand("separability", "Thermal separability threshold and length");
  auto* teleport = app.add_subcommand("teleport", "Full protocol for one input over a zeta grid");
  auto* check = app.add_subcommand("check-state", "Diagnostics of a covariance matrix");
  for (auto* sub : {entanglement, fidelity, separability, teleport, check}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kSpecError;
  }
  o.base = base == "2" ? LogBase::Two : LogBase::Natural;

  std::ostringstream buffer;
  bool physical = true;
  try {
    cli::Table table;
    if (*entanglement) table = cli::entanglement_sweep(o);
    if (*fidelity) table = cli::fidelity_sweep(o);
    if (*separability) table = cli::separability_report(o);
    if (*teleport) table = cli::teleport_sweep(o);
    if (*check) table = cli::check_state(o, physical);
    if (format == "json") {
      cli::write_json(table, buffer);
    } else {
      cli::write_csv(table, buffer);
    }
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSpecError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSpecError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  }

  if (out_path.empty()) {
    std::cout << buffer.str();
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open " << out_path << " for writing\n";
      return kSpecError;
    }
    file << buffer.str();
  }
  if (!physical) {
    std::cerr << "numerical failure: covariance matrix violates the uncertainty relation\n";
    return kNumericalError;
  }
  return 0;
}
