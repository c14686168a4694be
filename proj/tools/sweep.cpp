#include "sweep.hpp"

#include <cvgauss/channels.hpp>
#include <cvgauss/entanglement.hpp>
#include <cvgauss/states.hpp>
#include <cvgauss/symplectic.hpp>
#include <cvgauss/teleportation.hpp>

#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace cvgauss::cli {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_number(const std::string& token, bool allow_inf) {
  if (token == "inf" || token == "+inf" || token == "infinity") {
    if (!allow_inf) throw DomainError("'inf' is not accepted here");
    return kInf;
  }
  if (token.empty()) throw DomainError("empty number in list");
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || errno == ERANGE || !std::isfinite(value)) {
    throw DomainError("cannot parse '" + token + "' as a finite number");
  }
  return value;
}

double parse_scalar(const std::string& text, double fallback, const char* flag) {
  if (text.empty()) return fallback;
  const std::vector<double> values = parse_list(text);
  if (values.size() != 1) throw DomainError(std::string(flag) + " takes a single value for this command");
  return values.front();
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", v);
  return buffer;
}

const char* entanglement_unit(LogBase base) { return base == LogBase::Two ? "bit" : "nat"; }

void check_absorption_length(double l_a) {
  if (!(l_a > 0.0) || !std::isfinite(l_a)) throw DomainError("--absorption-length must be a positive number");
}

FiberParams arm(double t2, double r2, double phase, double n_th) {
  if (!(t2 >= 0.0 && t2 <= 1.0)) throw DomainError("--t2 must lie in [0, 1]");
  if (!(r2 >= 0.0 && r2 <= 1.0)) throw DomainError("--r2 must lie in [0, 1]");
  FiberParams f{std::sqrt(t2), phase, std::sqrt(r2), n_th};
  f.validate();
  return f;
}

Cell flag(bool value) { return value ? 1.0 : 0.0; }

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& token : split(text, ',')) out.push_back(parse_number(token, false));
  if (out.empty()) throw DomainError("empty list");
  return out;
}

std::vector<double> parse_grid(const std::string& text, bool allow_inf) {
  std::vector<double> out;
  for (const std::string& token : split(text, ',')) {
    if (token.find(':') == std::string::npos) {
      out.push_back(parse_number(token, allow_inf));
      continue;
    }
    const std::vector<std::string> range = split(token, ':');
    if (range.size() != 3) throw DomainError("range '" + token + "' must have the form start:stop:n");
    const double start = parse_number(range[0], false);
    const double stop = parse_number(range[1], false);
    const double count = parse_number(range[2], false);
    if (count < 1.0 || count != std::floor(count) || count > 1e6) {
      throw DomainError("range '" + token + "' needs a positive integer point count");
    }
    const int n = static_cast<int>(count);
    if (n == 1 && start != stop) throw DomainError("range '" + token + "' with one point needs start == stop");
    for (int i = 0; i < n; ++i) {
      out.push_back(i == n - 1 ? stop : start + (stop - start) * static_cast<double>(i) / (n - 1));
    }
  }
  if (out.empty()) throw DomainError("grid '" + text + "' is empty");
  if (out.size() > 1) {
    const bool increasing = out[1] > out[0];
    for (std::size_t i = 1; i < out.size(); ++i) {
      if (increasing ? !(out[i] > out[i - 1]) : !(out[i] < out[i - 1])) {
        throw DomainError("grid '" + text + "' is not strictly monotone");
      }
    }
  }
  return out;
}

Table entanglement_sweep(const SweepOptions& o) {
  check_absorption_length(o.absorption_length);
  const std::vector<double> zetas = parse_grid(o.zeta.empty() ? "inf" : o.zeta, true);
  const std::vector<double> nths = parse_grid(o.nth.empty() ? "0" : o.nth);
  const std::vector<double> lengths = parse_grid(o.length.empty() ? "0:3:31" : o.length);

  Table t{"entanglement-sweep", o.base, {{"absorption_length", format_number(o.absorption_length)}}, {}, {}};
  t.columns = {{"zeta", "1", true},
               {"nth", "photons"},
               {"length", "length"},
               {"length_ratio", "l/l_A"},
               {"t2", "1"},
               {"log_negativity", entanglement_unit(o.base), true}};
  for (double zeta : zetas) {
    if (zeta < 0.0) throw DomainError("--zeta must be >= 0");
    for (double n_th : nths) {
      if (n_th < 0.0) throw DomainError("--nth must be >= 0");
      if (n_th > 0.0 && std::isinf(zeta)) throw DomainError("thermal noise (--nth > 0) needs a finite --zeta");
      for (double length : lengths) {
        if (length < 0.0) throw DomainError("--length must be >= 0");
        const FiberParams f = fiber_from_length(length, o.absorption_length, n_th);
        double e = 0.0;
        if (n_th == 0.0) {
          e = std::isinf(zeta) ? max_transmittable(length, o.absorption_length, o.base)
                               : transmitted_log_negativity(zeta, f.t_mag, o.base);
        } else {
          e = log_negativity(degraded_tmsv(zeta, f, f), o.base).log_negativity;
        }
        t.rows.push_back({zeta, n_th, length, length / o.absorption_length, f.t_mag * f.t_mag, e});
      }
    }
  }
  return t;
}

Table fidelity_sweep(const SweepOptions& o) {
  const std::vector<double> etas = parse_grid(o.eta.empty() ? "0:2:5" : o.eta);
  const std::vector<double> zetas = parse_grid(o.zeta.empty() ? "0:2:11" : o.zeta, true);
  const std::vector<double> t2s = parse_grid(o.t2.empty() ? "1" : o.t2);
  const std::vector<double> nths = parse_grid(o.nth.empty() ? "0" : o.nth);
  const double r2 = parse_scalar(o.r2, 0.0, "--r2");

  Table t{"fidelity-sweep",
          o.base,
          {{"r2", format_number(r2)}, {"phase1", format_number(o.phase1)}, {"phase2", format_number(o.phase2)}},
          {},
          {}};
  t.columns = {{"eta", "1"}, {"t2", "1"}, {"nth", "photons"}, {"zeta", "1", true}, {"fidelity", "1"}};
  for (double eta : etas) {
    const CovarianceMatrix in = squeezed_signal(eta).covariance();
    for (double t2 : t2s) {
      for (double n_th : nths) {
        const FiberParams f1 = arm(t2, r2, o.phase1, n_th);
        const FiberParams f2 = arm(t2, r2, o.phase2, n_th);
        const bool ideal = t2 == 1.0 && n_th == 0.0 && o.phase1 + o.phase2 == 0.0;
        for (double zeta : zetas) {
          if (zeta < 0.0) throw DomainError("--zeta must be >= 0");
          double f = 0.0;
          if (ideal) {
            f = pure_squeezed_fidelity(eta, zeta);
          } else {
            if (std::isinf(zeta)) throw DomainError("lossy or noisy fibers need a finite --zeta");
            f = teleport({in, zeta, f1, f2}).fidelity_zero_mean;
          }
          t.rows.push_back({eta, t2, n_th, zeta, f});
        }
      }
    }
  }
  return t;
}

Table separability_report(const SweepOptions& o) {
  check_absorption_length(o.absorption_length);
  const std::vector<double> zetas = parse_grid(o.zeta.empty() ? "0.5" : o.zeta, true);
  const std::vector<double> t2s = parse_grid(o.t2.empty() ? "0.5" : o.t2);
  const std::vector<double> r2s = parse_grid(o.r2.empty() ? "0" : o.r2);
  const std::vector<double> nths = parse_grid(o.nth.empty() ? "0" : o.nth);

  Table t{"separability", o.base, {{"absorption_length", format_number(o.absorption_length)}}, {}, {}};
  t.columns = {{"zeta", "1", true},
               {"t2", "1"},
               {"r2", "1"},
               {"nth_crit", "photons", true},
               {"nth", "photons"},
               {"separable", "bool"},
               {"separability_length", "length", true},
               {"separability_length_ratio", "l/l_A", true}};
  for (double zeta : zetas) {
    for (double t2 : t2s) {
      for (double r2 : r2s) {
        const FiberParams f = arm(t2, r2, 0.0, 0.0);
        const double crit = fiber_separability_threshold(zeta, f.t_mag, f.r_mag);
        for (double n_th : nths) {
          const double l_s = separability_length(zeta, n_th, o.absorption_length);
          t.rows.push_back({zeta, t2, r2, crit, n_th, flag(n_th >= crit), l_s, l_s / o.absorption_length});
        }
      }
    }
  }
  return t;
}

Table teleport_sweep(const SweepOptions& o) {
  if (!o.gamma.empty() && !o.eta.empty()) throw DomainError("give either --gamma or --eta, not both");
  CovarianceMatrix in = CovarianceMatrix::identity(1);
  std::string input = "vacuum";
  if (!o.eta.empty()) {
    const double eta = parse_scalar(o.eta, 0.0, "--eta");
    in = squeezed_signal(eta).covariance();
    input = "squeezed_signal(" + format_number(eta) + ")";
  } else if (!o.gamma.empty()) {
    const std::vector<double> g = parse_list(o.gamma);
    if (g.size() != 3) throw DimensionError("--gamma for teleport takes x,y,z of [[x, z], [z, y]]");
    Matrix m(2, 2);
    m << g[0], g[2], g[2], g[1];
    in = CovarianceMatrix(m);
    input = "gamma(" + format_number(g[0]) + "," + format_number(g[1]) + "," + format_number(g[2]) + ")";
  }
  const std::vector<double> zetas = parse_grid(o.zeta.empty() ? "0:2:5" : o.zeta);
  const double t2 = parse_scalar(o.t2, 1.0, "--t2");
  const double r2 = parse_scalar(o.r2, 0.0, "--r2");
  const double n_th = parse_scalar(o.nth, 0.0, "--nth");
  const FiberParams f1 = arm(t2, r2, o.phase1, n_th);
  const FiberParams f2 = arm(t2, r2, o.phase2, n_th);
  if (o.samples < 0) throw DomainError("--samples must be >= 0");
  Vector kappa = Vector::Zero(2);
  if (!o.mean.empty()) {
    const std::vector<double> k = parse_list(o.mean);
    if (k.size() != 2) throw DimensionError("--mean takes two numbers");
    kappa << k[0], k[1];
  }

  Table t{"teleport", o.base, {}, {}, {}};
  t.parameters = {{"input", input},         {"t2", format_number(t2)},         {"r2", format_number(r2)},
                  {"nth", format_number(n_th)}, {"phase1", format_number(o.phase1)}, {"phase2", format_number(o.phase2)}};
  t.columns = {{"zeta", "1"},   {"fidelity", "1"}, {"rec_xx", "vacuum units"}, {"rec_xy", "vacuum units"},
               {"rec_yy", "vacuum units"}, {"gain_11", "1"}, {"gain_12", "1"}, {"gain_21", "1"},
               {"gain_22", "1"}};
  const bool sampling = o.samples > 0;
  if (sampling) {
    t.parameters.emplace_back("samples", std::to_string(o.samples));
    t.parameters.emplace_back("seed", std::to_string(o.seed));
    t.parameters.emplace_back("mean", format_number(kappa(0)) + "," + format_number(kappa(1)));
    t.columns.push_back({"mc_fidelity_ideal_gain", "1"});
    t.columns.push_back({"mc_standard_error", "1"});
  }
  for (double zeta : zetas) {
    if (zeta < 0.0) throw DomainError("--zeta must be >= 0");
    const TeleportSetup setup{in, zeta, f1, f2};
    const TeleportResult r = teleport(setup);
    std::vector<Cell> row{zeta,         r.fidelity_zero_mean, r.gamma_rec(0, 0), r.gamma_rec(0, 1), r.gamma_rec(1, 1),
                          r.gain(0, 0), r.gain(0, 1),         r.gain(1, 0),      r.gain(1, 1)};
    if (sampling) {
      // Each grid point reuses the seed, so rows do not depend on grid order.
      const MonteCarloFidelity mc =
          displaced_fidelity_mc(setup, kappa, ideal_displacement_gain(f1, f2), o.samples, o.seed);
      row.push_back(mc.mean);
      row.push_back(mc.standard_error);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table check_state(const SweepOptions& o, bool& physical) {
  if (o.gamma.empty()) throw DomainError("check-state needs --gamma (row-major 2x2 or 4x4 entries)");
  const std::vector<double> g = parse_list(o.gamma);
  int dim = 0;
  if (g.size() == 4) dim = 2;
  if (g.size() == 16) dim = 4;
  if (dim == 0) throw DimensionError("--gamma must list 4 (one mode) or 16 (two modes) entries");
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = g[i * dim + j];
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw DomainError("--gamma is not symmetric");

  const CovarianceMatrix gamma(m);
  const CovarianceReport report = validate_covariance(m);
  physical = report.physical;
  const int modes = gamma.modes();

  Table t{"check-state", o.base, {}, {}, {}};
  t.columns = {{"modes", "1"}, {"physical", "bool"}, {"min_uncertainty_eigenvalue", "vacuum units"}};
  for (int k = 1; k <= modes; ++k) t.columns.push_back({"symplectic_eigenvalue_" + std::to_string(k), "vacuum units"});
  std::vector<Cell> row{static_cast<double>(modes), flag(physical), report.min_eigenvalue};
  const Vector nu = symplectic_eigenvalues(gamma);
  for (int k = 0; k < modes; ++k) row.push_back(nu(k));

  if (modes == 1) {
    t.columns.push_back({"classical", "bool"});
    t.columns.push_back({"min_gamma_eigenvalue", "vacuum units"});
    if (physical) {
      const ClassicalityVerdict c = classicality_test(gamma);
      row.push_back(flag(c.classical));
      row.push_back(c.min_gamma_eigenvalue);
    } else {
      row.insert(row.end(), 2, std::nullopt);
    }
  } else {
    t.columns.push_back({"separable", "bool"});
    t.columns.push_back({"log_negativity", entanglement_unit(o.base)});
    if (physical) {
      row.push_back(flag(is_separable(gamma).separable));
      row.push_back(log_negativity(gamma, o.base).log_negativity);
    } else {
      row.insert(row.end(), 2, std::nullopt);
    }
  }
  t.rows.push_back(std::move(row));
  return t;
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c].name << '[' << table.columns[c].unit << ']';
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      if (!row[c]) continue;
      if (std::isnan(*row[c])) throw ConsistencyError("NaN in column " + table.columns[c].name);
      out << format_number(*row[c]);
    }
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  using Json = nlohmann::ordered_json;
  Json doc;
  doc["command"] = table.command;
  doc["log_base"] = to_string(table.base);
  Json params = Json::object();
  for (const auto& [key, value] : table.parameters) params[key] = value;
  doc["parameters"] = params;
  Json columns = Json::array();
  for (const Column& c : table.columns) columns.push_back({{"name", c.name}, {"unit", c.unit}});
  doc["columns"] = columns;
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json r = Json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      const Column& col = table.columns[c];
      const bool infinite = row[c] && std::isinf(*row[c]);
      if (row[c] && std::isnan(*row[c])) throw ConsistencyError("NaN in column " + col.name);
      if (!row[c] || infinite) {
        r[col.name] = nullptr;
      } else {
        // Same 12 significant digits as the CSV output.
        r[col.name] = std::strtod(format_number(*row[c]).c_str(), nullptr);
      }
      if (col.may_be_infinite) r[col.name + "_infinite"] = infinite;
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = rows;
  out << doc.dump(2) << '\n';
}

}  // namespace cvgauss::cli
