#include "cheby/cli.hpp"

#include <charconv>
#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cheby/io.hpp"
#include "cheby/ipm.hpp"
#include "cheby/lawson.hpp"
#include "cheby/refcheck.hpp"

namespace cheby::cli {

namespace {

Problem load_problem(const RunSpec& spec) {
  if (spec.dim < 1) throw InvalidConfig("--dim must be a positive integer");
  if (!spec.problem.empty() && !spec.input.empty())
    throw InvalidConfig("--problem and --input are mutually exclusive");
  if (spec.problem.empty() && spec.input.empty())
    throw InvalidConfig("one of --problem or --input is required");
  if (!spec.problem.empty()) return builtin_problem(spec.problem, spec.dim);
  const io::CsvData data = io::read_nodes_csv(spec.input);
  return make_problem(data.nodes, data.values, BasisSpec::monomial(spec.dim),
                      data.mode);
}

nlohmann::json config_echo(const RunSpec& spec, double eps_w) {
  nlohmann::json j;
  j["method"] = spec.method;
  j["dim"] = spec.dim;
  if (!spec.problem.empty()) j["problem"] = spec.problem;
  if (!spec.input.empty()) j["input"] = spec.input;
  if (spec.method == "lawson") j["q"] = spec.q;
  j["max_iter"] = spec.max_iter;
  j["tol_d"] = spec.tol_d;
  j["tol_kkt"] = spec.tol_kkt;
  j["tol_stop"] = spec.tol_stop;
  j["filter_tol"] = spec.filter_tol;
  j["filter_tol_resolved"] = eps_w;
  j["tau"] = spec.tau;
  j["mu0"] = spec.mu0;
  j["z0"] = spec.z0;
  return j;
}

struct SolveOutputs {
  SolveReport report;
  WeightedBasis basis;
  Eigen::VectorXcd atilde;
};

SolveOutputs run_method(const Problem& problem, const RunSpec& spec,
                        double eps_w) {
  if (spec.method == "ipm") {
    IpmConfig cfg;
    cfg.tau = spec.tau;
    cfg.mu0 = spec.mu0;
    cfg.eps_d = spec.tol_d;
    cfg.eps_K = spec.tol_kkt;
    cfg.k_max = spec.max_iter > 0 ? spec.max_iter : 200;
    cfg.eps_w = eps_w;
    if (spec.z0 == "ones")
      cfg.z0_mode = IpmConfig::Z0Mode::ones;
    else if (spec.z0 == "mu-over-w")
      cfg.z0_mode = IpmConfig::Z0Mode::mu_over_w;
    else
      throw InvalidConfig("--z0 must be 'ones' or 'mu-over-w'");
    SolveReport rep = ipm_solve(problem, cfg);
    WlsSolution sol = solve_wls(problem, WeightVector(rep.w));
    return {std::move(rep), std::move(sol.basis), std::move(sol.atilde)};
  }
  if (spec.method == "lawson") {
    LawsonConfig cfg;
    cfg.q = spec.q;
    cfg.max_iter = spec.max_iter > 0 ? spec.max_iter : 1000;
    cfg.eps_stop = spec.tol_stop;
    cfg.eps_w = eps_w;
    SolveReport rep = lawson_solve(problem, cfg);
    WlsSolution sol = solve_wls(problem, WeightVector(rep.w));
    return {std::move(rep), std::move(sol.basis), std::move(sol.atilde)};
  }
  if (spec.method == "lp") {
    if (problem.mode() != Mode::Real)
      throw InvalidConfig("--method lp requires real-mode data");
    LpSolution lp = lp_reference(problem);
    SolveReport rep;
    rep.method = "lp";
    rep.status = SolveStatus::converged;
    rep.iterations = lp.iterations;
    rep.eta = lp.eta;
    rep.eta_dual = lp.eta;  // LP duality is exact at the optimum
    rep.d = lp.eta * lp.eta;
    rep.r = lp.residual.cast<Cplx>();
    rep.w = Eigen::VectorXd::Zero(problem.m());
    double tsum = 0.0;
    for (Eigen::Index i = 0; i < lp.multipliers.size(); ++i)
      tsum += std::abs(lp.multipliers[i]);
    for (size_t i = 0; i < lp.basic_indices.size(); ++i)
      rep.w[lp.basic_indices[i]] =
          tsum > 0.0 ? std::abs(lp.multipliers[i]) / tsum : 0.0;
    rep.active_nodes = static_cast<int>((rep.w.array() > 0.0).count());
    rep.history.push_back({0, rep.d, rep.eta, rep.w.maxCoeff(), std::nullopt});
    if (rep.eta > 0.0) {
      rep.reference_set =
          detect_reference_points(rep.r, rep.eta, 1e-6, problem.mode());
      rep.rho_estimate = convergence_factor_estimate(rep.r, rep.reference_set);
    }
    return {std::move(rep), std::move(lp.basis),
            lp.atilde.cast<Cplx>()};
  }
  throw InvalidConfig("--method must be one of ipm, lawson, lp");
}

struct PaperCell {
  const char* problem;
  int dim;
  const char* eps;   // as written, relative to m
  const char* method;
  int iterations;
  double r_inf;
  double d;
  int final_nodes;
};

// Reference results for the two builtin experiment tables (CPU columns are
// hardware-bound and not carried).
const PaperCell kTable1[] = {
    {"f1", 21, "1e-6/m", "lawson", 1000, 3.4238e-1, 1.1710e-1, 232},
    {"f1", 21, "1e-6/m", "ipm", 22, 3.4235e-1, 1.1720e-1, 22},
    {"f1", 21, "1e-5/m", "lawson", 1000, 3.4238e-1, 1.1710e-1, 218},
    {"f1", 21, "1e-5/m", "ipm", 21, 3.4235e-1, 1.1720e-1, 22},
    {"f1", 21, "1e-4/m", "lawson", 1000, 3.4238e-1, 1.1710e-1, 206},
    {"f1", 21, "1e-4/m", "ipm", 20, 3.4235e-1, 1.1720e-1, 22},
    {"f1", 31, "1e-6/m", "lawson", 1000, 7.6031e-3, 5.7750e-5, 234},
    {"f1", 31, "1e-6/m", "ipm", 26, 7.6028e-3, 5.7802e-5, 32},
    {"f1", 31, "1e-5/m", "lawson", 1000, 7.6031e-3, 5.7750e-5, 222},
    {"f1", 31, "1e-5/m", "ipm", 26, 7.6028e-3, 5.7802e-5, 32},
    {"f1", 31, "1e-4/m", "lawson", 1000, 7.6031e-3, 5.7750e-5, 206},
    {"f1", 31, "1e-4/m", "ipm", 25, 7.6028e-3, 5.7802e-5, 32},
    {"f2", 21, "1e-6/m", "lawson", 1000, 2.8474e-1, 8.1000e-2, 236},
    {"f2", 21, "1e-6/m", "ipm", 21, 2.8473e-1, 8.1074e-2, 22},
    {"f2", 21, "1e-5/m", "lawson", 1000, 2.8474e-1, 8.1000e-2, 222},
    {"f2", 21, "1e-5/m", "ipm", 21, 2.8473e-1, 8.1074e-2, 22},
    {"f2", 21, "1e-4/m", "lawson", 1000, 2.8474e-1, 8.1000e-2, 204},
    {"f2", 21, "1e-4/m", "ipm", 20, 2.8473e-1, 8.1074e-2, 22},
    {"f2", 31, "1e-6/m", "lawson", 1000, 4.1257e-2, 1.7005e-3, 236},
    {"f2", 31, "1e-6/m", "ipm", 23, 4.1255e-2, 1.7020e-3, 32},
    {"f2", 31, "1e-5/m", "lawson", 1000, 4.1257e-2, 1.7005e-3, 224},
    {"f2", 31, "1e-5/m", "ipm", 22, 4.1255e-2, 1.7020e-3, 32},
    {"f2", 31, "1e-4/m", "lawson", 1000, 4.1257e-2, 1.7005e-3, 200},
    {"f2", 31, "1e-4/m", "ipm", 21, 4.1255e-2, 1.7020e-3, 32},
};

const PaperCell kTable2[] = {
    {"g1", 9, "1e-6/m", "lawson", 1000, 1.0323e-3, 1.0646e-6, 242},
    {"g1", 9, "1e-6/m", "ipm", 27, 1.0322e-3, 1.0654e-6, 10},
    {"g1", 9, "1e-5/m", "lawson", 1000, 1.0323e-3, 1.0646e-6, 224},
    {"g1", 9, "1e-5/m", "ipm", 27, 1.0322e-3, 1.0654e-6, 10},
    {"g1", 9, "1e-4/m", "lawson", 1000, 1.0323e-3, 1.0646e-6, 206},
    {"g1", 9, "1e-4/m", "ipm", 29, 1.0322e-3, 1.0654e-6, 10},
    {"g1", 16, "1e-6/m", "lawson", 1000, 1.0529e-5, 1.1075e-10, 245},
    {"g1", 16, "1e-6/m", "ipm", 36, 1.0528e-5, 1.1084e-10, 19},
    {"g1", 16, "1e-5/m", "lawson", 1000, 1.0529e-5, 1.1075e-10, 229},
    {"g1", 16, "1e-5/m", "ipm", 55, 1.0528e-5, 1.1084e-10, 19},
    {"g1", 16, "1e-4/m", "lawson", 1000, 1.0529e-5, 1.1075e-10, 221},
    {"g1", 16, "1e-4/m", "ipm", 67, 1.0528e-5, 1.1084e-10, 19},
    {"g2", 21, "1e-6/m", "lawson", 1000, 1.8297e-2, 3.3436e-4, 597},
    {"g2", 21, "1e-6/m", "ipm", 28, 1.8294e-2, 3.3469e-4, 31},
    {"g2", 21, "1e-5/m", "lawson", 1000, 1.8297e-2, 3.3436e-4, 561},
    {"g2", 21, "1e-5/m", "ipm", 28, 1.8294e-2, 3.3469e-4, 31},
    {"g2", 21, "1e-4/m", "lawson", 1000, 1.8297e-2, 3.3436e-4, 529},
    {"g2", 21, "1e-4/m", "ipm", 27, 1.8294e-2, 3.3469e-4, 31},
    {"g2", 31, "1e-6/m", "lawson", 1000, 1.2449e-2, 1.5477e-4, 540},
    {"g2", 31, "1e-6/m", "ipm", 28, 1.2447e-2, 1.5493e-4, 32},
    {"g2", 31, "1e-5/m", "lawson", 1000, 1.2449e-2, 1.5477e-4, 512},
    {"g2", 31, "1e-5/m", "ipm", 28, 1.2447e-2, 1.5493e-4, 32},
    {"g2", 31, "1e-4/m", "lawson", 1000, 1.2449e-2, 1.5477e-4, 474},
    {"g2", 31, "1e-4/m", "ipm", 27, 1.2447e-2, 1.5493e-4, 32},
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

double resolve_filter_tol(const std::string& text, int m) {
  std::string head = text;
  bool per_m = false;
  if (head.size() > 2 && head.substr(head.size() - 2) == "/m") {
    per_m = true;
    head = head.substr(0, head.size() - 2);
  }
  double v = 0.0;
  const char* b = head.data();
  auto [ptr, ec] = std::from_chars(b, b + head.size(), v);
  if (ec != std::errc() || ptr != b + head.size() || v < 0.0)
    throw InvalidConfig("bad --filter-tol value '" + text + "'");
  return per_m ? v / m : v;
}

int cmd_solve(const RunSpec& spec) {
  const Problem problem = load_problem(spec);
  const double eps_w = resolve_filter_tol(spec.filter_tol, problem.m());
  const SolveOutputs res = run_method(problem, spec, eps_w);

  if (!spec.out.empty()) {
    io::write_json(spec.out,
                   io::report_json(problem, res.report, res.basis, res.atilde,
                                   config_echo(spec, eps_w)));
  }
  if (!spec.history.empty()) io::write_history_csv(spec.history, res.report);
  if (!spec.weights.empty())
    io::write_weights_csv(spec.weights, problem, res.report);
  if (!spec.curve.empty()) {
    const Eigen::VectorXcd v =
        spec.grid.empty() ? problem.nodes() : io::read_points_csv(spec.grid);
    io::write_curve_csv(spec.curve, v, evaluate_at(res.basis, res.atilde, v));
  }

  std::cout << res.report.method << ": status=" << to_string(res.report.status)
            << " iterations=" << res.report.iterations
            << " eta=" << fmt17(res.report.eta)
            << " d=" << fmt17(res.report.d)
            << " active_nodes=" << res.report.active_nodes << "\n";
  return res.report.status == SolveStatus::converged ? 0 : 2;
}

int cmd_table(int which, const std::string& out_path,
              const std::string& methods) {
  if (which != 1 && which != 2)
    throw InvalidConfig("table number must be 1 or 2");
  const PaperCell* cells = which == 1 ? kTable1 : kTable2;
  const size_t ncells = which == 1 ? std::size(kTable1) : std::size(kTable2);

  std::string csv =
      "table,problem,dim,eps_w,method,status,iterations,iterations_ref,"
      "r_inf,r_inf_ref,r_inf_reldiff,d,d_ref,d_reldiff,"
      "final_nodes,final_nodes_ref,wall_ms\n";
  for (size_t i = 0; i < ncells; ++i) {
    const PaperCell& cell = cells[i];
    if (methods != "both" && methods != cell.method) continue;
    RunSpec spec;
    spec.problem = cell.problem;
    spec.dim = cell.dim;
    spec.method = cell.method;
    spec.q = 1;
    spec.filter_tol = cell.eps;
    const Problem problem = load_problem(spec);
    const double eps_w = resolve_filter_tol(spec.filter_tol, problem.m());
    const SolveOutputs res = run_method(problem, spec, eps_w);
    const SolveReport& rep = res.report;
    auto reldiff = [](double ours, double ref) {
      return std::abs(ours - ref) / std::abs(ref);
    };
    csv += std::to_string(which) + "," + cell.problem + "," +
           std::to_string(cell.dim) + "," + cell.eps + "," + cell.method +
           "," + to_string(rep.status) + "," + std::to_string(rep.iterations) +
           "," + std::to_string(cell.iterations) + "," + fmt17(rep.eta) + "," +
           fmt17(cell.r_inf) + "," + fmt17(reldiff(rep.eta, cell.r_inf)) +
           "," + fmt17(rep.d) + "," + fmt17(cell.d) + "," +
           fmt17(reldiff(rep.d, cell.d)) + "," +
           std::to_string(rep.active_nodes) + "," +
           std::to_string(cell.final_nodes) + "," + fmt17(rep.wall_ms) + "\n";
    std::cout << cell.problem << " dim=" << cell.dim << " eps=" << cell.eps
              << " " << cell.method << ": eta=" << fmt17(rep.eta)
              << " (ref " << fmt17(cell.r_inf) << ") nodes="
              << rep.active_nodes << " (ref " << cell.final_nodes << ")\n";
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot open '" + out_path + "' for writing");
    out << csv;
  } else {
    std::cout << csv;
  }
  return 0;
}

int cmd_eval(const std::string& model_path, const std::string& points_path,
             const std::string& out_path) {
  const io::ModelData md = io::read_model_json(model_path);
  const Eigen::VectorXcd v = io::read_points_csv(points_path);

  WeightedBasis basis;
  basis.source = WeightedBasis::Source::arnoldi;
  basis.H = md.hess;
  const Eigen::VectorXcd pv = evaluate_at(basis, md.atilde, v);
  if (!out_path.empty()) {
    io::write_curve_csv(out_path, v, pv);
  } else {
    std::cout << "x_re,x_im,p_re,p_im\n";
    for (Eigen::Index i = 0; i < v.size(); ++i)
      std::cout << fmt17(v[i].real()) << ',' << fmt17(v[i].imag()) << ','
                << fmt17(pv[i].real()) << ',' << fmt17(pv[i].imag()) << '\n';
  }
  return 0;
}

int run_main(int argc, char** argv) {
  CLI::App app{"Best linear Chebyshev approximation on a finite node set"};
  app.require_subcommand(1);

  RunSpec spec;
  CLI::App* solve = app.add_subcommand(
      "solve", "Run a solver on a builtin problem or a node CSV");
  solve->add_option("--problem", spec.problem, "builtin problem: f1, f2, g1, g2");
  solve->add_option("--input", spec.input, "node CSV (header x_re[,x_im],f_re[,f_im])");
  solve->add_option("--dim", spec.dim, "basis dimension n (span{1,...,x^{n-1}})")
      ->required();
  solve->add_option("--method", spec.method, "ipm | lawson | lp");
  solve->add_option("--q", spec.q, "Lawson exponent (1 or 2)");
  solve->add_option("--max-iter", spec.max_iter, "iteration cap (0 = default)");
  solve->add_option("--tol-d", spec.tol_d, "relative dual-change tolerance");
  solve->add_option("--tol-kkt", spec.tol_kkt, "KKT residual tolerance");
  solve->add_option("--tol-stop", spec.tol_stop, "Lawson stopping tolerance");
  solve->add_option("--filter-tol", spec.filter_tol,
                    "weight filtering threshold, e.g. 1e-6/m");
  solve->add_option("--tau", spec.tau, "fraction-to-boundary factor");
  solve->add_option("--mu0", spec.mu0, "initial barrier parameter");
  solve->add_option("--z0", spec.z0, "initial z: ones | mu-over-w");
  solve->add_option("--out", spec.out, "report JSON path (doubles as model file)");
  solve->add_option("--history", spec.history, "history CSV path");
  solve->add_option("--weights", spec.weights, "weights CSV path");
  solve->add_option("--curve", spec.curve, "fitted-curve CSV path");
  solve->add_option("--grid", spec.grid, "evaluation grid CSV for --curve");

  int which = 0;
  std::string table_out, table_methods = "both";
  CLI::App* table = app.add_subcommand(
      "table", "Reproduce a builtin experiment table and compare");
  table->add_option("which", which, "table number (1 or 2)")->required();
  table->add_option("--out", table_out, "comparison CSV path");
  table->add_option("--methods", table_methods, "both | ipm | lawson");

  std::string model_path, points_path, eval_out;
  CLI::App* eval = app.add_subcommand(
      "eval", "Evaluate a solved model at new points");
  eval->add_option("model", model_path, "report JSON from solve --out")
      ->required();
  eval->add_option("points", points_path, "points CSV (header x_re[,x_im])")
      ->required();
  eval->add_option("--out", eval_out, "output CSV path");

  try {
    app.parse(argc, argv);
    if (solve->parsed()) return cmd_solve(spec);
    if (table->parsed()) return cmd_table(which, table_out, table_methods);
    if (eval->parsed()) return cmd_eval(model_path, points_path, eval_out);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace cheby::cli
