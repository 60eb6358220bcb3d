#pragma once

#include <string>

namespace cheby::cli {

/// Resolved arguments of the solve subcommand.
struct RunSpec {
  std::string problem;  // builtin name; empty when reading from a file
  std::string input;    // node CSV path; empty for builtins
  int dim = 0;
  std::string method = "ipm";  // ipm | lawson | lp
  int q = 1;
  int max_iter = 0;  // 0 selects the method default
  double tol_d = 1e-10;
  double tol_kkt = 1e-10;
  double tol_stop = 1e-10;
  std::string filter_tol = "0";  // accepts "c" or "c/m"
  double tau = 0.99;
  double mu0 = 1e-5;
  std::string z0 = "ones";  // ones | mu-over-w
  std::string out;
  std::string history;
  std::string weights;
  std::string curve;
  std::string grid;
};

/// Filtering thresholds may be written relative to the node count, e.g.
/// "1e-6/m"; resolves to an absolute value for a problem of size m.
double resolve_filter_tol(const std::string& text, int m);

int cmd_solve(const RunSpec& spec);
int cmd_table(int which, const std::string& out_path,
              const std::string& methods);
int cmd_eval(const std::string& model_path, const std::string& points_path,
             const std::string& out_path);

/// Full argv entry point (subcommands solve, table, eval).
int run_main(int argc, char** argv);

}  // namespace cheby::cli
