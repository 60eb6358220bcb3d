#include "cheby/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace cheby::io {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim surrounding whitespace
    size_t a = field.find_first_not_of(" \t\r");
    size_t b = field.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? "" : field.substr(a, b - a + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_double(const std::string& s, const std::string& path, int line) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end)
    throw IoError(path + ":" + std::to_string(line) + ": bad number '" + s +
                  "'");
  return v;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

nlohmann::json cvec_json(const Eigen::VectorXcd& v, bool imag) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    a.push_back(imag ? v[i].imag() : v[i].real());
  return a;
}

}  // namespace

CsvData read_nodes_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + ":1: empty file");
  const auto header = split_csv_line(line);
  int cx_re = -1, cx_im = -1, cf_re = -1, cf_im = -1;
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "x_re") cx_re = static_cast<int>(i);
    if (header[i] == "x_im") cx_im = static_cast<int>(i);
    if (header[i] == "f_re") cf_re = static_cast<int>(i);
    if (header[i] == "f_im") cf_im = static_cast<int>(i);
  }
  if (cx_re < 0 || cf_re < 0)
    throw IoError(path + ":1: header must contain x_re and f_re columns");

  CsvData data;
  data.mode = (cx_im >= 0 || cf_im >= 0) ? Mode::Complex : Mode::Real;
  std::vector<Cplx> xs, fs;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    const auto fields = split_csv_line(line);
    auto get = [&](int col) -> double {
      if (col < 0) return 0.0;
      if (col >= static_cast<int>(fields.size()))
        throw IoError(path + ":" + std::to_string(lineno) +
                      ": missing column " + std::to_string(col + 1));
      return parse_double(fields[col], path, lineno);
    };
    xs.emplace_back(get(cx_re), get(cx_im));
    fs.emplace_back(get(cf_re), get(cf_im));
  }
  if (xs.empty()) throw IoError(path + ": no data rows");
  data.nodes = Eigen::Map<Eigen::VectorXcd>(xs.data(), xs.size());
  data.values = Eigen::Map<Eigen::VectorXcd>(fs.data(), fs.size());
  return data;
}

Eigen::VectorXcd read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + ":1: empty file");
  const auto header = split_csv_line(line);
  int cx_re = -1, cx_im = -1;
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "x_re") cx_re = static_cast<int>(i);
    if (header[i] == "x_im") cx_im = static_cast<int>(i);
  }
  if (cx_re < 0) throw IoError(path + ":1: header must contain x_re");
  std::vector<Cplx> xs;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    const auto fields = split_csv_line(line);
    if (cx_re >= static_cast<int>(fields.size()))
      throw IoError(path + ":" + std::to_string(lineno) + ": missing x_re");
    const double re = parse_double(fields[cx_re], path, lineno);
    double im = 0.0;
    if (cx_im >= 0 && cx_im < static_cast<int>(fields.size()) &&
        !fields[cx_im].empty())
      im = parse_double(fields[cx_im], path, lineno);
    xs.emplace_back(re, im);
  }
  if (xs.empty()) throw IoError(path + ": no data rows");
  return Eigen::Map<Eigen::VectorXcd>(xs.data(), xs.size());
}

std::string nodes_digest(const Eigen::VectorXcd& nodes) {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](double v) {
    uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffull;
      h *= 1099511628211ull;
    }
  };
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    mix(nodes[i].real());
    mix(nodes[i].imag());
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_history_csv(const std::string& path, const SolveReport& report) {
  auto out = open_out(path);
  out << "iter,d,r_inf,w_inf,kkt_inf\n";
  for (const auto& row : report.history) {
    out << row.iter << ',' << fmt17(row.d) << ',' << fmt17(row.r_inf) << ','
        << fmt17(row.w_inf) << ',';
    if (row.kkt_inf) out << fmt17(*row.kkt_inf);
    out << '\n';
  }
}

void write_weights_csv(const std::string& path, const Problem& problem,
                       const SolveReport& report) {
  auto out = open_out(path);
  out << "index,x_re,x_im,w,r_abs\n";
  for (int j = 0; j < problem.m(); ++j) {
    out << j << ',' << fmt17(problem.nodes()[j].real()) << ','
        << fmt17(problem.nodes()[j].imag()) << ',' << fmt17(report.w[j]) << ','
        << fmt17(std::abs(report.r[j])) << '\n';
  }
}

void write_curve_csv(const std::string& path, const Eigen::VectorXcd& v,
                     const Eigen::VectorXcd& pv) {
  auto out = open_out(path);
  out << "x_re,x_im,p_re,p_im\n";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out << fmt17(v[i].real()) << ',' << fmt17(v[i].imag()) << ','
        << fmt17(pv[i].real()) << ',' << fmt17(pv[i].imag()) << '\n';
  }
}

nlohmann::json report_json(const Problem& problem, const SolveReport& report,
                           const WeightedBasis& basis,
                           const Eigen::VectorXcd& atilde,
                           const nlohmann::json& config_echo) {
  nlohmann::json j;
  j["format"] = "cheby-report-v1";
  j["method"] = report.method;
  j["n"] = problem.dim();
  j["m"] = problem.m();
  j["status"] = to_string(report.status);
  j["eta"] = report.eta;
  j["eta_dual"] = report.eta_dual;
  j["d"] = report.d;
  j["iterations"] = report.iterations;
  j["active_nodes"] = report.active_nodes;
  j["reference_indices"] = report.reference_set.indices;
  nlohmann::json refnodes = nlohmann::json::array();
  for (int idx : report.reference_set.indices) {
    refnodes.push_back({{"re", problem.nodes()[idx].real()},
                        {"im", problem.nodes()[idx].imag()}});
  }
  j["reference_nodes"] = refnodes;
  if (report.rho_estimate)
    j["rho_estimate"] = *report.rho_estimate;
  else
    j["rho_estimate"] = nullptr;
  j["config"] = config_echo;
  j["wall_ms"] = report.wall_ms;

  j["mode"] = problem.mode() == Mode::Real ? "real" : "complex";
  j["nodes_re"] = cvec_json(problem.nodes(), false);
  j["nodes_im"] = cvec_json(problem.nodes(), true);
  j["nodes_digest"] = nodes_digest(problem.nodes());
  if (basis.source == WeightedBasis::Source::arnoldi) {
    nlohmann::json hre = nlohmann::json::array(), him = nlohmann::json::array();
    for (Eigen::Index i = 0; i < basis.H.rows(); ++i) {
      nlohmann::json rre = nlohmann::json::array(),
                     rim = nlohmann::json::array();
      for (Eigen::Index c = 0; c < basis.H.cols(); ++c) {
        rre.push_back(basis.H(i, c).real());
        rim.push_back(basis.H(i, c).imag());
      }
      hre.push_back(rre);
      him.push_back(rim);
    }
    j["recurrence_re"] = hre;
    j["recurrence_im"] = him;
    j["atilde_re"] = cvec_json(atilde, false);
    j["atilde_im"] = cvec_json(atilde, true);
  }
  return j;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

ModelData read_model_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  try {
    ModelData md;
    md.n = j.at("n").get<int>();
    md.m = j.at("m").get<int>();
    md.mode = j.at("mode").get<std::string>() == "real" ? Mode::Real
                                                        : Mode::Complex;
    md.eta = j.at("eta").get<double>();
    const auto& nre = j.at("nodes_re");
    const auto& nim = j.at("nodes_im");
    if (static_cast<int>(nre.size()) != md.m ||
        static_cast<int>(nim.size()) != md.m)
      throw IoError(path + ": node array length does not match m");
    md.nodes.resize(md.m);
    for (int i = 0; i < md.m; ++i)
      md.nodes[i] = Cplx(nre[i].get<double>(), nim[i].get<double>());
    if (j.at("nodes_digest").get<std::string>() != nodes_digest(md.nodes))
      throw DigestMismatch(path +
                           ": stored digest does not match the stored nodes");
    if (!j.contains("recurrence_re"))
      throw IoError(path + ": report carries no recurrence (non-monomial or "
                           "LP-less run?)");
    const auto& hre = j.at("recurrence_re");
    const auto& him = j.at("recurrence_im");
    md.hess.resize(md.n + 1, md.n);
    for (int i = 0; i <= md.n; ++i)
      for (int c = 0; c < md.n; ++c)
        md.hess(i, c) =
            Cplx(hre[i][c].get<double>(), him[i][c].get<double>());
    const auto& are = j.at("atilde_re");
    const auto& aim = j.at("atilde_im");
    md.atilde.resize(md.n);
    for (int i = 0; i < md.n; ++i)
      md.atilde[i] = Cplx(are[i].get<double>(), aim[i].get<double>());
    return md;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

}  // namespace cheby::io
