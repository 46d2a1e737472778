#pragma once

#include <json.hpp>
#include <string>

#include "algpos/oracle.hpp"
#include "algpos/realizer.hpp"
#include "algpos/spectral.hpp"

namespace algpos {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);

nlohmann::json verdict_to_json(const Verdict& v);
nlohmann::json witness_to_json(const WitnessPolynomial& w);
nlohmann::json realization_to_json(const Realization& r);
nlohmann::json probe_to_json(const ProbeSummary& s);

/// Accepts either a bare matrix document {"n", "rows"} or any document
/// with a "matrix" field (a realization round-trips through verify).
Eigen::MatrixXd extract_matrix(const nlohmann::json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace algpos
