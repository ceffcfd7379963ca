#pragma once

#include <string>

#include <json.hpp>

#include "conekit/curvature.hpp"
#include "conekit/localization.hpp"
#include "conekit/operators.hpp"
#include "conekit/radial.hpp"
#include "conekit/torus_solver.hpp"

namespace conekit {

using json = nlohmann::json;

json cone_to_json(const Cone& c);
Cone cone_from_json(const json& j);

json operator_to_json(const OperatorSpec& f);
OperatorSpec operator_from_json(const json& j);

json audit_to_json(const StructuralAudit& a);
json ellipticity_to_json(const EllipticityReport& r);
json solve_report_to_json(const SolveReport& r);
json verify_report_to_json(const VerifyReport& r);
json localization_to_json(const LocalizationResult& r);
json reduced_to_json(const ReducedProblem& r);

BorderedHermitian bordered_from_json(const json& j);

/// Radial problem plus boundary description, as read by the CLI.
struct RadialJob {
  RadialProblem problem;
  bool exhaustion = false;
  double phi_inner = 0.0, phi_outer = 0.0;
  std::vector<int> k_list;
};
RadialJob radial_job_from_json(const json& j);

TorusProblem torus_problem_from_json(const json& j);

/// Flat binary float64 field with a JSON side header (N, h, layout).
void write_field(const std::string& prefix, const Grid4& g, const Field& f);
Field read_field(const std::string& prefix, Grid4& g);

json load_json_file(const std::string& path);

}  // namespace conekit
