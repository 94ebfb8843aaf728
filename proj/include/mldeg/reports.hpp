#pragma once

#include <json.hpp>

#include "mldeg/face_classifier.hpp"
#include "mldeg/mixed_volume.hpp"
#include "mldeg/solver.hpp"

namespace mldeg {

// JSON fragments shared by the command-line reports. Keys are emitted in
// sorted order and no timestamps appear anywhere, so fixed seeds give
// byte-identical reports.

nlohmann::json json_bigint(const BigInt& value);
nlohmann::json json_rational(const BigRat& value);
nlohmann::json polytope_json(const LatticePolytope& polytope);  // sorted vertex list
nlohmann::json cell_json(const MixedCell& cell);
nlohmann::json subdivision_json(const MixedSubdivision& subdivision);
nlohmann::json tracker_config_json(const TrackerConfig& config);
nlohmann::json solve_report_json(const SolveReport& report);
nlohmann::json face_case_json(const std::vector<int64_t>& w, const FaceCase& face);
nlohmann::json scan_json(const WeightScan& scan);

}  // namespace mldeg
