#include "algpos/serialize.hpp"

#include <fstream>
#include <sstream>

#include "algpos/errors.hpp"

namespace algpos {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"n", m.rows()}, {"rows", std::move(rows)}};
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  if (!j.contains("n") || !j.contains("rows")) throw Error("matrix document needs n and rows");
  const Eigen::Index n = j.at("n").get<Eigen::Index>();
  const auto& rows = j.at("rows");
  if (static_cast<Eigen::Index>(rows.size()) != n) throw Error("matrix row count mismatch");
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n) throw Error("matrix not square");
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = rows[i][k].get<double>();
  }
  return m;
}

namespace {
json vector_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}
}  // namespace

json verdict_to_json(const Verdict& v) {
  json j{{"positive", v.positive}};
  if (v.positive) {
    j["lambda"] = v.lambda;
    j["u"] = vector_to_json(v.u);
    j["v"] = vector_to_json(v.v);
  } else {
    j["diagnostics"] = v.diagnostics;
  }
  return j;
}

json witness_to_json(const WitnessPolynomial& w) {
  return json(w.coefficients);
}

json realization_to_json(const Realization& r) {
  json trace = json::array();
  for (const TraceStep& s : r.trace) {
    json params = json::object();
    for (const auto& [k, v] : s.params) params[k] = v;
    json added = json::array();
    for (const auto& [i, j, sgn, eps] : s.added)
      added.push_back(json{{"row", i}, {"col", j},
                           {"sign", std::string(1, sign_char(sgn))}, {"epsilon", eps}});
    trace.push_back(json{{"rule", s.rule},
                         {"params", std::move(params)},
                         {"epsilon", s.epsilon},
                         {"added", std::move(added)},
                         {"pattern", format_pattern(s.pattern)},
                         {"labels", s.labels},
                         {"right_residual", s.right_residual},
                         {"left_residual", s.left_residual}});
  }
  return json{{"pattern", format_pattern(r.pattern)},
              {"matrix", matrix_to_json(r.matrix)},
              {"lambda", r.lambda},
              {"u", vector_to_json(r.u)},
              {"v", vector_to_json(r.v)},
              {"witness", witness_to_json(r.witness)},
              {"trace", std::move(trace)}};
}

json probe_to_json(const ProbeSummary& s) {
  json rows = json::array();
  for (const ProbeRow& r : s.rows)
    rows.push_back(json{{"pattern", format_pattern(r.pattern)},
                        {"filter", r.filter == FilterVerdict::Candidate ? "candidate" : "rejected"},
                        {"hypothesis", r.hypothesis},
                        {"hypothesis_negated", r.hypothesis_neg},
                        {"realized", r.realized},
                        {"oracle_found", r.oracle_found},
                        {"samples", r.samples}});
  return json{{"order", s.order},
              {"canonical_count", s.canonical_count},
              {"candidates", s.candidates},
              {"realized", s.realized},
              {"oracle_found", s.oracle_found},
              {"unresolved_candidates", s.unresolved_candidates},
              {"minimal_zero_diag", s.minimal_zero_diag},
              {"minimal_zero_diag_within_bound", s.minimal_zero_diag_within_bound},
              {"rows", std::move(rows)}};
}

Eigen::MatrixXd extract_matrix(const json& j) {
  if (j.contains("matrix")) return matrix_from_json(j.at("matrix"));
  return matrix_from_json(j);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

}  // namespace algpos
