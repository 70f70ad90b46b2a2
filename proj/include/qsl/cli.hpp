// Command-line entry points.  The qslab tool exposes four subcommands:
//
//   bound      compute speed-limit bounds for one configuration (CSV rows)
//   reproduce  write per-curve CSV files for a named figure
//   sweep      evaluate every applicable bound over a parameter grid
//   verify     run the rate-inequality checker along a trajectory
//
// Exit codes: 0 success, 1 usage or configuration error, 2 bound violation
// (a computed bound exceeded t_final + 1e-6, or a rate inequality failed).
//
// CSV output uses '\n' newlines, '.' as the decimal separator, and fixed
// (never scientific) notation with 12 significant digits; magnitudes below
// 1e-12 print as 0.

#ifndef QSL_CLI_HPP
#define QSL_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "qsl/speedlimits.hpp"

namespace qsl {

struct RunConfig {
  std::string process = "dephasing";  // nonlocal | dephasing | depolarizing | amplitude
  double gamma = 1.0;                 // open-process rate (both qubits)
  double theta = 1.0;                 // nonlocal coupling
  double mu_z = 0.0;                  // nonlocal sz(x)sz coupling
  double p = 0.5;                     // |psi_p> parameter
  double t_final = 0.1;
  std::size_t steps = 0;              // 0 derives 2000 steps per unit time
  std::string bound = "all";          // nsl|csl|icsl|bqsl|bqsl-sep|misl|esl|oqsl|all
  std::string picture = "heisenberg";
  std::string out;                    // output path; empty writes to stdout
  double hbar = 1.0;
};

struct SweepRequest {
  std::vector<std::string> processes;
  std::vector<double> gammas;   // open processes
  std::vector<double> thetas;   // nonlocal process
  double mu_z = 0.0;
  std::vector<double> ps;
  std::vector<double> t_finals;
  std::size_t steps = 0;        // 0 derives per grid point
  std::string out;
};

// Throws OutOfRange with a usage-style message on the first violated
// constraint (t_final > 0, steps even and >= 2 when given, p in [0, 1], ...).
void validate_config(const RunConfig& cfg);

// Process object for the configured process and rates.
Process process_from_config(const RunConfig& cfg);

// Fixed-notation formatting with 12 significant digits; |v| < 1e-12 -> "0".
std::string format_number(double v);

// Figure identifiers accepted by cmd_reproduce.
const std::vector<std::string>& known_figures();

int cmd_bound(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
int cmd_reproduce(const std::string& figure, const std::string& out_dir, std::ostream& diag);
int cmd_sweep(const SweepRequest& req, std::ostream& out, std::ostream& diag);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

// Full argv interface used by the qslab binary.
int run_cli(int argc, const char* const* argv);

}  // namespace qsl

#endif  // QSL_CLI_HPP
