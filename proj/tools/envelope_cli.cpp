// Command-line front end: solves single configurations, rebuilds the
// benchmark tables, and drives the variational solver.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "envelope/report.hpp"

namespace {

constexpr int kExitParse = 1;
constexpr int kExitNoBoundState = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitMixedContent = 4;
constexpr int kExitDomain = 5;

envelope::RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw envelope::ParseError(0, "cannot open config file '" + path + "'");
  return envelope::parse_config(in);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw envelope::ParseError(0, "cannot write to '" + out_path + "'");
  out << text;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Auxiliary-field bound-state solver for N identical particles "
               "with hyperradius-type K-body forces"};
  app.require_subcommand(1);

  std::string config_path, out_path, format;
  int qstar_max = -1, quad_order = -1;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config)
      cmd->add_option("--config", config_path, "configuration file")->required();
    cmd->add_option("--format", format, "output format: table or csv");
    cmd->add_option("--out", out_path, "write the report to a file");
    cmd->add_option("--qstar-max", qstar_max, "override the band truncation");
    cmd->add_option("--quad-order", quad_order, "override the quadrature order");
  };

  auto* solve = app.add_subcommand("solve", "solve one configured state");
  add_common(solve, true);

  auto* table = app.add_subcommand("table", "rebuild a benchmark table");
  std::string table_id;
  table->add_option("id", table_id,
                    "table id (lin1..lin5, coul1..coul3, gauss1..gauss3) or 'all'")
      ->required();
  add_common(table, false);

  auto* phidos = app.add_subcommand("phi-dos", "orbital prediction of phi");
  add_common(phidos, true);

  auto* calib = app.add_subcommand("calibrate-phi", "fit phi to a known energy");
  add_common(calib, true);

  auto* oracle = app.add_subcommand("oracle", "run the variational solver");
  add_common(oracle, true);

  CLI11_PARSE(app, argc, argv);

  using namespace envelope;

  if (table->parsed()) {
    std::ostringstream text;
    const bool csv = format == "csv";
    if (table_id == "all") {
      bool first = true;
      for (const auto& spec : benchmarks::benchmark_tables()) {
        const TableReport rep = reproduce_table(spec);
        if (csv) {
          std::istringstream lines(to_csv(rep));
          std::string line;
          std::getline(lines, line);
          if (first) text << line << "\n";
          while (std::getline(lines, line)) text << line << "\n";
        } else {
          if (!first) text << "\n";
          text << to_text(rep);
        }
        first = false;
      }
    } else {
      const TableReport rep = reproduce_table(table_id);
      text << (csv ? to_csv(rep) : to_text(rep));
    }
    emit(text.str(), out_path);
    return 0;
  }

  RunConfig cfg = load_config(config_path);
  if (!format.empty()) {
    if (format != "table" && format != "csv")
      throw ParseError(0, "format must be table or csv");
    cfg.format = format;
  }
  if (qstar_max > 0) cfg.qstar_max = qstar_max;
  if (quad_order > 0) cfg.quad_order = quad_order;

  if (solve->parsed()) {
    const SolveReport rep = run(cfg);
    emit(cfg.format == "csv" ? to_csv(rep) : to_text(rep, cfg.precision), out_path);
    return 0;
  }
  if (phidos->parsed()) {
    const double phi = dos_phi(make_run_system(cfg), make_run_state(cfg));
    char buf[64];
    std::snprintf(buf, sizeof(buf), "phi_dos = %.12g\n", phi);
    emit(buf, out_path);
    return 0;
  }
  if (calib->parsed()) {
    if (!cfg.has_target) throw DomainError("calibrate-phi requires [method] target");
    const double phi =
        calibrate_phi(make_run_system(cfg), make_run_state(cfg), cfg.target);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "phi_gs = %.12g\n", phi);
    emit(buf, out_path);
    return 0;
  }
  // oracle
  cfg.oracle_enabled = true;
  const SolveReport rep = run(cfg);
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "E_acc = %.12g\nz = %.12g\nnu = %.6g\nsum d^2(%d) = %.6g\n",
                rep.oracle_E, rep.oracle_z, rep.oracle_nu, rep.band,
                rep.oracle_band_weight);
  emit(buf, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const envelope::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitParse;
  } catch (const envelope::NoBoundStateError& e) {
    std::cerr << "no bound state: " << e.what() << "\n";
    return kExitNoBoundState;
  } catch (const envelope::NonConvergenceError& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const envelope::MixedQ0Error& e) {
    std::cerr << "mixed orbital content: " << e.what() << "\n";
    return kExitMixedContent;
  } catch (const envelope::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}
