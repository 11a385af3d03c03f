#pragma once

#include "taylorlab/l2_solver.hpp"
#include "taylorlab/lab.hpp"
#include "taylorlab/moment_matrix.hpp"
#include "taylorlab/remez.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace taylorlab {

// JSON payloads. Floating values are emitted as JSON numbers (nlohmann
// round-trips doubles exactly); exact rationals as "p/q" strings.

nlohmann::json approx_to_json(const ApproxResult& result, const Polynomial& taylor);
nlohmann::json exact_approx_to_json(const ExactApprox& result, const Polynomial& taylor,
                                    const Rational& eps);
nlohmann::json remez_to_json(const RemezResult& result, double eps);

nlohmann::json matrix_det_report(int k, const Scalar& eps);
nlohmann::json matrix_blocks_report(int k);
nlohmann::json matrix_inverse_report(int k, const std::vector<Scalar>& eps_list);

// CSV bodies (RFC-4180-ish, fixed header line first).
std::string sweep_to_csv(const std::vector<SweepRecord>& records,
                         const std::vector<SlopeFit>& fits);
std::string duel_to_csv(const DuelReport& report);

// Writes content through a temporary file in the target directory followed
// by an atomic rename. path "-" writes to stdout.
void write_output(const std::string& path, const std::string& content);

}  // namespace taylorlab
