#include "mldeg/reports.hpp"

namespace mldeg {

using nlohmann::json;

json json_bigint(const BigInt& value) {
    // Counts at desk scale fit an int64; fall back to a string beyond that.
    if (value >= std::numeric_limits<int64_t>::min() &&
        value <= std::numeric_limits<int64_t>::max())
        return value.convert_to<int64_t>();
    return value.str();
}

json json_rational(const BigRat& value) {
    return format_rational(value);
}

json polytope_json(const LatticePolytope& polytope) {
    json verts = json::array();
    for (const auto& v : polytope.vertices()) verts.push_back(v);
    return verts;
}

json cell_json(const MixedCell& cell) {
    json edges = json::array();
    for (const auto& [a, b] : cell.edges) edges.push_back(json::array({a, b}));
    json normal = json::array();
    for (const auto& g : cell.normal) normal.push_back(json_rational(g));
    return json{{"edges", std::move(edges)},
                {"normal", std::move(normal)},
                {"det", json_bigint(cell.det)}};
}

json subdivision_json(const MixedSubdivision& subdivision) {
    json cells = json::array();
    for (const auto& c : subdivision.cells) cells.push_back(cell_json(c));
    return json{{"cells", std::move(cells)},
                {"total", json_bigint(subdivision.total)},
                {"lifting_seed", subdivision.lifting_seed},
                {"lifting_attempts", subdivision.attempts}};
}

json tracker_config_json(const TrackerConfig& config) {
    return json{{"initial_step", config.initial_step},
                {"min_step", config.min_step},
                {"newton_tolerance", config.newton_tolerance},
                {"max_newton_iters", config.max_newton_iters},
                {"max_steps", config.max_steps},
                {"torus_threshold", config.torus_threshold},
                {"dedup_distance", config.dedup_distance},
                {"threads", config.threads}};
}

json solve_report_json(const SolveReport& report) {
    json solutions = json::array();
    for (std::size_t i = 0; i < report.solutions.size(); ++i) {
        json point = json::array();
        for (const Complex& c : report.solutions[i].coordinates)
            point.push_back(json::array({c.real(), c.imag()}));
        solutions.push_back(json{{"point", std::move(point)},
                                 {"residual", report.residuals[i]}});
    }
    json out{{"count", json_bigint(report.count)},
             {"mixed_volume", json_bigint(report.mixed_volume)},
             {"agreement", report.agreement},
             {"paths",
              json{{"tracked", report.paths_tracked},
                   {"converged", report.paths_converged},
                   {"diverged", report.paths_diverged},
                   {"step_limit", report.paths_step_limit},
                   {"merged", report.paths_merged}}},
             {"solutions", std::move(solutions)},
             {"config", tracker_config_json(report.config)},
             {"seed", report.seed},
             {"lifting_seed", report.lifting_seed}};
    if (!report.warning.empty()) out["warning"] = report.warning;
    return out;
}

json face_case_json(const std::vector<int64_t>& w, const FaceCase& face) {
    json active = json::array();
    for (int j : face.active) active.push_back(j + 1);
    json verts = json::array();
    for (const auto& v : face.face_vertices) verts.push_back(v);
    return json{{"w", w},
                {"case", face.case_number()},
                {"t", face.t()},
                {"gamma", json_bigint(face.gamma)},
                {"value", json_bigint(face.value)},
                {"active", std::move(active)},
                {"face_vertices", std::move(verts)}};
}

json scan_json(const WeightScan& scan) {
    json rows = json::array();
    for (const auto& row : scan.rows)
        rows.push_back(json{{"w", row.w},
                            {"case", row.case_number},
                            {"t", row.t},
                            {"gamma", json_bigint(row.gamma)}});
    return json{{"radius", scan.radius},
                {"counts",
                 json{{"case1", scan.counts[0]},
                      {"case2", scan.counts[1]},
                      {"case3", scan.counts[2]}}},
                {"rows", std::move(rows)}};
}

}  // namespace mldeg
