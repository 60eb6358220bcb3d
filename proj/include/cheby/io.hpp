#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "cheby/orthobasis.hpp"
#include "cheby/problem.hpp"
#include "cheby/refcheck.hpp"
#include "cheby/report.hpp"

namespace cheby::io {

/// Node file contents. Header `x_re,x_im,f_re,f_im`; the imaginary columns
/// are optional and their absence selects real mode.
struct CsvData {
  Eigen::VectorXcd nodes;
  Eigen::VectorXcd values;
  Mode mode = Mode::Real;
};

CsvData read_nodes_csv(const std::string& path);

/// Evaluation grid: header `x_re[,x_im]`.
Eigen::VectorXcd read_points_csv(const std::string& path);

/// FNV-1a over the node doubles; ties a model file to its source grid.
std::string nodes_digest(const Eigen::VectorXcd& nodes);

void write_history_csv(const std::string& path, const SolveReport& report);
void write_weights_csv(const std::string& path, const Problem& problem,
                       const SolveReport& report);
void write_curve_csv(const std::string& path, const Eigen::VectorXcd& v,
                     const Eigen::VectorXcd& pv);

/// Report JSON. Also carries the recurrence and coefficients, so the same
/// file serves as the model input of the eval command.
nlohmann::json report_json(const Problem& problem, const SolveReport& report,
                           const WeightedBasis& basis,
                           const Eigen::VectorXcd& atilde,
                           const nlohmann::json& config_echo);
void write_json(const std::string& path, const nlohmann::json& j);

/// Model slice of a report file; validates the stored node digest.
struct ModelData {
  int n = 0;
  int m = 0;
  Mode mode = Mode::Real;
  Eigen::VectorXcd nodes;
  Eigen::MatrixXcd hess;  // (n+1) x n recurrence
  Eigen::VectorXcd atilde;
  double eta = 0.0;
};

ModelData read_model_json(const std::string& path);

}  // namespace cheby::io
