#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "envelope/analytic.hpp"
#include "envelope/observables.hpp"
#include "envelope/oracle.hpp"
#include "envelope/solver.hpp"
#include "envelope/system.hpp"
#include "envelope/tables.hpp"

namespace envelope {

/// Declarative run description, parsed from a sectioned key = value file.
struct RunConfig {
  // [system]
  std::string potential = "";      // linear|coulomb|gaussian|powerlaw|expwell
  double a = 0.0, b = 0.0, gamma = 2.0;
  std::string kinetic = "nonrelativistic";
  double F = 0.5, alpha = 2.0;
  int N = 3, D = 3, K = 3;
  // [state]
  std::vector<int> n{0, 0}, l{0, 0};
  int L = 0, sigma = +1;
  // [method]
  std::string phi_mode = "fixed";  // fixed|dos|calibrate
  double phi_value = 2.0;
  double target = 0.0;
  bool has_target = false;
  // [oracle]
  bool oracle_enabled = false;
  int qstar_max = 18, qstar_opt = 10, quad_order = 80, eigen_index = 0;
  // [output]
  std::string format = "table";    // table|csv
  int precision = 4;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<int> parse_int_list(const std::string& v, int line) {
  std::vector<int> out;
  std::istringstream in(v);
  int x;
  while (in >> x) {
    if (x < 0) throw ParseError(line, "negative quantum number");
    out.push_back(x);
  }
  if (out.empty() || !in.eof()) throw ParseError(line, "expected a list of integers");
  return out;
}

inline double parse_number(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw ParseError(line, "trailing characters after number");
    return x;
  } catch (const ParseError&) {
    throw;
  } catch (...) {
    throw ParseError(line, "expected a number, got '" + v + "'");
  }
}

inline bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError(line, "expected a boolean, got '" + v + "'");
}

}  // namespace detail

/// Parses the sectioned configuration format: [section] headers, key = value
/// lines, '#' comments.  Unknown sections or keys are rejected with the
/// offending line number.
inline RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(lineno, "unterminated section header");
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section != "system" && section != "state" && section != "method" &&
          section != "oracle" && section != "output")
        throw ParseError(lineno, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    if (section.empty()) throw ParseError(lineno, "key outside any section");
    if (val.empty()) throw ParseError(lineno, "empty value for '" + key + "'");

    if (section == "system") {
      if (key == "potential") cfg.potential = val;
      else if (key == "a") cfg.a = detail::parse_number(val, lineno);
      else if (key == "b") cfg.b = detail::parse_number(val, lineno);
      else if (key == "gamma") cfg.gamma = detail::parse_number(val, lineno);
      else if (key == "kinetic") cfg.kinetic = val;
      else if (key == "F") cfg.F = detail::parse_number(val, lineno);
      else if (key == "alpha") cfg.alpha = detail::parse_number(val, lineno);
      else if (key == "N") cfg.N = static_cast<int>(detail::parse_number(val, lineno));
      else if (key == "D") cfg.D = static_cast<int>(detail::parse_number(val, lineno));
      else if (key == "K") cfg.K = static_cast<int>(detail::parse_number(val, lineno));
      else throw ParseError(lineno, "unknown key '" + key + "' in [system]");
    } else if (section == "state") {
      if (key == "n") cfg.n = detail::parse_int_list(val, lineno);
      else if (key == "l") cfg.l = detail::parse_int_list(val, lineno);
      else if (key == "L") cfg.L = static_cast<int>(detail::parse_number(val, lineno));
      else if (key == "sigma") cfg.sigma = static_cast<int>(detail::parse_number(val, lineno));
      else throw ParseError(lineno, "unknown key '" + key + "' in [state]");
    } else if (section == "method") {
      if (key == "phi") {
        if (val == "dos" || val == "calibrate") cfg.phi_mode = val;
        else {
          cfg.phi_mode = "fixed";
          cfg.phi_value = detail::parse_number(val, lineno);
        }
      } else if (key == "target") {
        cfg.target = detail::parse_number(val, lineno);
        cfg.has_target = true;
      } else throw ParseError(lineno, "unknown key '" + key + "' in [method]");
    } else if (section == "oracle") {
      if (key == "enabled") cfg.oracle_enabled = detail::parse_bool(val, lineno);
      else if (key == "qstar_max") cfg.qstar_max = static_cast<int>(detail::parse_number(val, lineno));
      else if (key == "qstar_opt") cfg.qstar_opt = static_cast<int>(detail::parse_number(val, lineno));
      else if (key == "quad_order") cfg.quad_order = static_cast<int>(detail::parse_number(val, lineno));
      else if (key == "eigen_index") cfg.eigen_index = static_cast<int>(detail::parse_number(val, lineno));
      else throw ParseError(lineno, "unknown key '" + key + "' in [oracle]");
    } else {  // output
      if (key == "format") {
        if (val != "table" && val != "csv") throw ParseError(lineno, "format must be table or csv");
        cfg.format = val;
      } else if (key == "precision") {
        cfg.precision = static_cast<int>(detail::parse_number(val, lineno));
      } else throw ParseError(lineno, "unknown key '" + key + "' in [output]");
    }
  }
  if (cfg.potential.empty()) throw ParseError(lineno, "[system] potential is required");
  if (cfg.n.size() != cfg.l.size())
    throw ParseError(lineno, "[state] n and l lists must have equal length");
  return cfg;
}

inline SystemSpec make_run_system(const RunConfig& cfg) {
  KineticLaw kin = nonrelativistic_kinetic();
  if (cfg.kinetic == "powerlaw") kin = PowerLawKinetic{cfg.F, cfg.alpha};
  else if (cfg.kinetic != "nonrelativistic")
    throw DomainError("config: unknown kinetic law '" + cfg.kinetic + "'");

  PotentialLaw pot = PowerLawPotential{1.0, 1.0};
  if (cfg.potential == "linear") pot = PowerLawPotential{0.5, 1.0};
  else if (cfg.potential == "coulomb") pot = PowerLawPotential{3.0, -1.0};
  else if (cfg.potential == "gaussian")
    pot = ExponentialWell{cfg.a > 0 ? cfg.a : 200.0, cfg.b > 0 ? cfg.b : 1.0, 2.0};
  else if (cfg.potential == "powerlaw") pot = PowerLawPotential{cfg.a, cfg.b};
  else if (cfg.potential == "expwell") pot = ExponentialWell{cfg.a, cfg.b, cfg.gamma};
  else throw DomainError("config: unknown potential '" + cfg.potential + "'");

  return SystemSpec(cfg.N, cfg.D, kin, {{cfg.K, pot}});
}

inline StateSpec make_run_state(const RunConfig& cfg) {
  std::vector<std::pair<int, int>> nl;
  for (std::size_t i = 0; i < cfg.n.size(); ++i) nl.emplace_back(cfg.n[i], cfg.l[i]);
  return StateSpec(nl, cfg.sigma, cfg.L);
}

inline PhiMode make_phi_mode(const RunConfig& cfg) {
  if (cfg.phi_mode == "dos") return {PhiMode::Kind::Dos, 0.0};
  if (cfg.phi_mode == "calibrate") {
    if (!cfg.has_target)
      throw DomainError("config: phi = calibrate requires [method] target");
    return {PhiMode::Kind::Calibrate, cfg.target};
  }
  return {PhiMode::Kind::Fixed, cfg.phi_value};
}

/// One line of a benchmark table: energy and size columns at one phi, with
/// relative errors against the frozen accurate references when available.
/// Wavefunction moments are absent where the modified count is ill-defined.
struct TableRow {
  std::string phi_label;
  double phi = 2.0;
  double E = 0.0;
  double rho0 = 0.0;
  std::optional<double> r_mean, r2_mean, rinv_mean;
  std::optional<double> err_E, err_r, err_rho0, err_r2, err_rho0_sq, err_rinv,
      err_rho0_inv;
};

struct TableReport {
  std::string id;
  std::string state_label;
  std::vector<TableRow> rows;
  double E_acc = 0.0;
  double nu = 0.0;
  double band_weight = 0.0;
  int band = 0;
};

namespace detail {

inline double pct(double x, double ref) { return 100.0 * std::abs(x - ref) / std::abs(ref); }

inline std::string phi_label(const PhiMode& mode, double phi) {
  char buf[48];
  if (mode.kind == PhiMode::Kind::Fixed) {
    std::snprintf(buf, sizeof(buf), "%.4g", phi);
    return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.4g (%s)", phi,
                mode.kind == PhiMode::Kind::Dos ? "DOS" : "GS");
  return buf;
}

inline TableRow build_row(const SystemSpec& system, const StateSpec& state,
                          const PhiMode& mode,
                          const benchmarks::Reference* ref = nullptr,
                          const char* label_suffix = nullptr) {
  const SolvedState solved = solve_state(system, state, mode);
  TableRow row;
  row.phi = solved.phi;
  row.phi_label = phi_label(mode, solved.phi);
  if (label_suffix != nullptr) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4g (%s)", solved.phi, label_suffix);
    row.phi_label = buf;
  }
  row.E = solved.solution.E;
  row.rho0 = solved.solution.rho0;
  try {
    const SymmetrizedState wf = et_eigenstate(system, state, solved);
    row.rinv_mean = observable_rk(wf, -1.0);
    row.r_mean = observable_rk(wf, 1.0);
    row.r2_mean = observable_rk(wf, 2.0);
  } catch (const MixedQ0Error&) {
    // the published tables leave these cells blank
  }
  if (ref != nullptr) {
    row.err_E = pct(row.E, ref->E_acc);
    if (row.r_mean) row.err_r = pct(*row.r_mean, ref->moments[1]);
    row.err_rho0 = pct(row.rho0, ref->moments[1]);
    if (row.r2_mean) row.err_r2 = pct(*row.r2_mean, ref->moments[2]);
    row.err_rho0_sq = pct(row.rho0 * row.rho0, ref->moments[2]);
    if (row.rinv_mean) row.err_rinv = pct(*row.rinv_mean, ref->moments[0]);
    row.err_rho0_inv = pct(1.0 / row.rho0, ref->moments[0]);
  }
  return row;
}

}  // namespace detail

/// Rebuilds one published benchmark table: rows at the plain count, the
/// orbital prediction, and the ground-state fit, plus the caption data.
inline TableReport reproduce_table(const benchmarks::TableSpec& spec) {
  const SystemSpec system = benchmarks::make_system(spec.well);
  const StateSpec state = benchmarks::table_state(spec);

  TableReport report;
  report.id = spec.id;
  report.state_label = spec.state_label;
  report.band = spec.band;
  report.E_acc = spec.ref.E_acc;
  report.nu = spec.ref.nu;
  report.band_weight = spec.ref.band_weight;

  report.rows.push_back(
      detail::build_row(system, state, {PhiMode::Kind::Fixed, 2.0}, &spec.ref));
  report.rows.push_back(
      detail::build_row(system, state, {PhiMode::Kind::Dos, 0.0}, &spec.ref));
  // The fitted count is calibrated once per system on its ground level and
  // then applied to every state of that system.
  const StateSpec ground({{0, 0}, {0, 0}}, +1, 0);
  const double phi_gs =
      calibrate_phi(system, ground, benchmarks::calibration_energy(spec.well));
  report.rows.push_back(detail::build_row(
      system, state, {PhiMode::Kind::Fixed, phi_gs}, &spec.ref, "GS"));
  return report;
}

inline TableReport reproduce_table(std::string_view id) {
  const auto* spec = benchmarks::find_table(id);
  if (spec == nullptr)
    throw DomainError("unknown table id '" + std::string(id) + "'");
  return reproduce_table(*spec);
}

namespace detail {

inline std::string cell(double value, std::optional<double> err, int precision) {
  char buf[64];
  if (err)
    std::snprintf(buf, sizeof(buf), "%.*g[%.3g]", precision, value,
                  *err < 5e-7 ? 0.0 : *err);
  else
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
  return buf;
}

inline std::string opt_cell(const std::optional<double>& value,
                            std::optional<double> err, int precision) {
  if (!value) return "";
  return cell(*value, err, precision);
}

inline void pad(std::string& line, std::size_t width) {
  if (line.size() < width) line.append(width - line.size(), ' ');
}

}  // namespace detail

/// Plain-text rendering in the layout of the published tables.
inline std::string to_text(const TableReport& report, int precision = 4) {
  std::ostringstream out;
  out << "Table " << report.id << " -- state " << report.state_label << "\n";
  const char* headers[] = {"phi",    "E",      "<r>",    "rho0",
                           "<r^2>",  "rho0^2", "<r^-1>", "rho0^-1"};
  std::vector<std::vector<std::string>> grid;
  grid.emplace_back(headers, headers + 8);
  for (const auto& row : report.rows) {
    std::vector<std::string> cells;
    cells.push_back(row.phi_label);
    cells.push_back(detail::cell(row.E, row.err_E, precision));
    cells.push_back(detail::opt_cell(row.r_mean, row.err_r, precision));
    cells.push_back(detail::cell(row.rho0, row.err_rho0, precision));
    cells.push_back(detail::opt_cell(row.r2_mean, row.err_r2, precision));
    cells.push_back(detail::cell(row.rho0 * row.rho0, row.err_rho0_sq, precision));
    cells.push_back(detail::opt_cell(row.rinv_mean, row.err_rinv, precision));
    cells.push_back(detail::cell(1.0 / row.rho0, row.err_rho0_inv, precision));
    grid.push_back(std::move(cells));
  }
  std::array<std::size_t, 8> widths{};
  for (const auto& r : grid)
    for (std::size_t c = 0; c < r.size(); ++c) widths[c] = std::max(widths[c], r[c].size());
  for (const auto& r : grid) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      std::string cellstr = r[c];
      detail::pad(cellstr, widths[c] + 2);
      line += cellstr;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << "\n";
  }
  char caption[160];
  std::snprintf(caption, sizeof(caption),
                "E_acc = %.*g, nu = %.3g, sum d^2(%d) = %.3g", precision,
                report.E_acc, report.nu, report.band, report.band_weight);
  out << caption << "\n";
  return out.str();
}

/// Machine-readable rendering: one record per row, 12 significant digits,
/// empty fields where the table has blank cells.
inline std::string to_csv(const TableReport& report) {
  std::ostringstream out;
  out << "table,state,phi_label,phi,E,err_E,r_mean,err_r_mean,rho0,err_rho0,"
         "r2_mean,err_r2_mean,rho0_sq,err_rho0_sq,rinv_mean,err_rinv_mean,"
         "rho0_inv,err_rho0_inv,E_acc,nu,band,band_weight\n";
  const auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
  };
  const auto opt = [&num](const std::optional<double>& v) {
    return v ? num(*v) : std::string();
  };
  for (const auto& row : report.rows) {
    out << report.id << ",\"" << report.state_label << "\",\"" << row.phi_label
        << "\"," << num(row.phi) << ',' << num(row.E) << ',' << opt(row.err_E) << ','
        << opt(row.r_mean) << ',' << opt(row.err_r) << ',' << num(row.rho0) << ','
        << opt(row.err_rho0) << ',' << opt(row.r2_mean) << ',' << opt(row.err_r2)
        << ',' << num(row.rho0 * row.rho0) << ',' << opt(row.err_rho0_sq) << ','
        << opt(row.rinv_mean) << ',' << opt(row.err_rinv) << ','
        << num(1.0 / row.rho0) << ',' << opt(row.err_rho0_inv) << ','
        << num(report.E_acc) << ',' << num(report.nu) << ',' << report.band << ','
        << num(report.band_weight) << "\n";
  }
  return out.str();
}

/// Result of a single `solve` run.
struct SolveReport {
  SolvedState solved;
  TableRow row;
  bool has_oracle = false;
  double oracle_E = 0.0, oracle_z = 0.0, oracle_nu = 0.0, oracle_band_weight = 0.0;
  int band = 0;
};

/// Full pipeline for one configuration: resolve phi, solve the system,
/// attach wavefunction moments where defined, optionally run the
/// variational solver for the same block.
inline SolveReport run(const RunConfig& cfg) {
  const SystemSpec system = make_run_system(cfg);
  const StateSpec state = make_run_state(cfg);
  const PhiMode mode = make_phi_mode(cfg);

  SolveReport report;
  try {
    report.solved = solve_state(system, state, mode);
  } catch (const NoBoundStateError& e) {
    // For exponential wells the closed form knows how far past the
    // existence edge the requested level sits; pass that along.
    if (const auto* well = std::get_if<ExponentialWell>(&system.terms[0].potential);
        well != nullptr && std::holds_alternative<PowerLawKinetic>(system.kinetic)) {
      const auto& kin = std::get<PowerLawKinetic>(system.kinetic);
      const double q = effective_Q(state, system.D, 2.0);
      const auto closed = exponential_solution(kin.F, kin.alpha, well->a, well->b,
                                               well->gamma, system.N,
                                               system.terms[0].K, q);
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "%s (at the plain count, delta = %.6g against the -1/e edge)",
                    e.what(), closed.delta);
      throw NoBoundStateError(buf);
    }
    throw;
  }
  report.row.phi = report.solved.phi;
  report.row.phi_label = detail::phi_label(mode, report.solved.phi);
  report.row.E = report.solved.solution.E;
  report.row.rho0 = report.solved.solution.rho0;
  if (system.N == 3 && system.D == 3) {
    const SymmetrizedState wf = et_eigenstate(system, state, report.solved);
    report.row.rinv_mean = observable_rk(wf, -1.0);
    report.row.r_mean = observable_rk(wf, 1.0);
    report.row.r2_mean = observable_rk(wf, 2.0);
  }

  if (cfg.oracle_enabled) {
    const QuantumNumbers qn = quantum_numbers(state, system.D);
    const double lam1 =
        scale_parameters(system.N, qn.Q, solve_et(system, qn.Q).rho0)[0];
    OracleConfig ocfg;
    ocfg.L = state.L;
    ocfg.parity = qn.parity;
    ocfg.sigma = state.sigma;
    ocfg.qstar_max = cfg.qstar_max;
    ocfg.qstar_opt = cfg.qstar_opt;
    ocfg.quad_order = cfg.quad_order;
    ocfg.eigen_index = cfg.eigen_index;
    ocfg.z_hint = lam1;
    ocfg.lambda1_reference = lam1;
    const OracleSolution sol = solve_oracle(system, ocfg);
    report.has_oracle = true;
    report.oracle_E = sol.E;
    report.oracle_z = sol.z;
    report.oracle_nu = sol.nu;
    report.band = qn.Qstar;
    const auto it = sol.band_weights.find(qn.Qstar);
    report.oracle_band_weight = it == sol.band_weights.end() ? 0.0 : it->second;
    report.row.err_E = detail::pct(report.row.E, sol.E);
  }
  return report;
}

inline std::string to_text(const SolveReport& report, int precision = 4) {
  std::ostringstream out;
  const auto& row = report.row;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "phi = %s\nE = %s\nrho0 = %.*g\n",
                row.phi_label.c_str(),
                detail::cell(row.E, row.err_E, precision).c_str(), precision,
                row.rho0);
  out << buf;
  if (row.r_mean) {
    std::snprintf(buf, sizeof(buf),
                  "<r> = %.*g   <r^2> = %.*g   <r^-1> = %.*g\n", precision,
                  *row.r_mean, precision, *row.r2_mean, precision, *row.rinv_mean);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "rho0-approx: r ~ %.*g   r^2 ~ %.*g   r^-1 ~ %.*g\n", precision,
                row.rho0, precision, row.rho0 * row.rho0, precision, 1.0 / row.rho0);
  out << buf;
  if (report.has_oracle) {
    std::snprintf(buf, sizeof(buf),
                  "oracle: E_acc = %.*g   z = %.*g   nu = %.3g   sum d^2(%d) = %.3g\n",
                  precision, report.oracle_E, precision, report.oracle_z,
                  report.oracle_nu, report.band, report.oracle_band_weight);
    out << buf;
  }
  return out.str();
}

inline std::string to_csv(const SolveReport& report) {
  std::ostringstream out;
  out << "phi_label,phi,E,rho0,r_mean,r2_mean,rinv_mean,oracle_E,oracle_z,"
         "oracle_nu,band,band_weight\n";
  const auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
  };
  const auto opt = [&num](const std::optional<double>& v) {
    return v ? num(*v) : std::string();
  };
  const auto& row = report.row;
  out << '"' << row.phi_label << "\"," << num(row.phi) << ',' << num(row.E) << ','
      << num(row.rho0) << ',' << opt(row.r_mean) << ',' << opt(row.r2_mean) << ','
      << opt(row.rinv_mean) << ',';
  if (report.has_oracle)
    out << num(report.oracle_E) << ',' << num(report.oracle_z) << ','
        << num(report.oracle_nu) << ',' << report.band << ','
        << num(report.oracle_band_weight);
  else
    out << ",,,,";
  out << "\n";
  return out.str();
}

}  // namespace envelope
