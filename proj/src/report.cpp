#include "hypersect/report.hpp"

#include <chrono>
#include <ctime>

namespace hypersect {

Json to_json(const Vec& v) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
    return j;
}

Json to_json(const Mat& m) {
    Json j = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        j.push_back(std::move(row));
    }
    return j;
}

Json to_json(const QuadratureConfig& cfg) {
    return Json{{"radial_nodes", cfg.radial_nodes},
                {"directions", cfg.directions},
                {"mc_samples", cfg.mc_samples},
                {"seed", cfg.seed},
                {"target_rel_err", cfg.target_rel_err},
                {"mc_target_rel_err", cfg.mc_target_rel_err},
                {"max_refinements", cfg.max_refinements}};
}

Json to_json(const IntegralValue& v) {
    return Json{{"value", v.value},
                {"abs_err_est", v.abs_err_est},
                {"method", std::string(to_string(v.method))},
                {"evaluations", v.evaluations},
                {"refinements", v.refinements}};
}

Json to_json(const SurfacePoint& p) {
    return Json{{"x0", to_json(p.x0)},           {"height", p.height}, {"gradient", to_json(p.gradient)},
                {"w", p.w},                       {"hessian", to_json(p.hessian)},
                {"det_hessian", p.det_hessian},   {"k_curv", p.k_curv},
                {"degenerate", p.degenerate()}};
}

Json to_json(const SectionSpec& s) {
    return Json{{"mode", std::string(to_string(s.mode))}, {"magnitude", s.magnitude}};
}

Json to_json(const SectionMeasure& m) {
    return Json{{"point", to_json(m.point)}, {"spec", to_json(m.spec)},  {"k", m.k},
                {"t", m.t},                  {"a_star", to_json(m.a_star)}, {"v_star", to_json(m.v_star)},
                {"s_star", to_json(m.s_star)}, {"a_loc", to_json(m.a_loc)},   {"v_loc", to_json(m.v_loc)},
                {"s_loc", to_json(m.s_loc)},   {"n_loc", to_json(m.n_loc)}};
}

Json to_json(const LimitEstimate& e) {
    Json ladder = Json::array();
    for (const auto& [t, y] : e.ladder) ladder.push_back(Json{{"t", t}, {"normalized", y}});
    return Json{{"quantity", std::string(to_string(e.quantity))},
                {"extrapolated", e.extrapolated},
                {"uncertainty", e.uncertainty},
                {"predicted", e.predicted},
                {"rel_dev", e.rel_dev},
                {"fit", e.fit},
                {"ladder", std::move(ladder)}};
}

Json to_json(const HessianFactor& f) {
    return Json{{"a_matrix", to_json(f.a_matrix)},
                {"b_matrix", to_json(f.b_matrix)},
                {"det_b", f.det_b},
                {"area_limit", f.area_limit()}};
}

Json to_json(const ScanReport& r) {
    Json points = Json::array();
    for (const auto& p : r.points) points.push_back(to_json(p.x0));
    return Json{{"condition", std::string(to_string(r.condition))},
                {"points", std::move(points)},
                {"offsets", r.offsets},
                {"values", r.values},
                {"abs_errors", r.abs_errors},
                {"spread_axis", r.axis == SpreadAxis::AcrossPoints ? "points" : "offsets"},
                {"spread", r.spread},
                {"threshold", r.threshold},
                {"max_rel_quad_err", r.max_rel_quad_err},
                {"verdict", std::string(to_string(r.verdict))}};
}

Json to_json(const CurvatureInference& c) {
    return Json{{"condition", std::string(to_string(c.condition))},
                {"limit_constant", c.limit_constant},
                {"curvature", c.curvature},
                {"analytic_curvature", c.analytic_curvature},
                {"det_hessian", c.det_hessian},
                {"det_mean", c.det_mean},
                {"det_spread", c.det_spread},
                {"curvature_spread", c.curvature_spread}};
}

Json to_json(const Classification& c) {
    Json points = Json::array();
    for (const auto& p : c.points) points.push_back(to_json(p.x0));
    Json excluded = Json::array();
    for (const auto& x : c.excluded) excluded.push_back(to_json(x));
    return Json{{"verdict", std::string(to_string(c.verdict))},
                {"source", c.source == CurvatureSource::Analytic ? "analytic" : "measured"},
                {"points", std::move(points)},
                {"excluded", std::move(excluded)},
                {"curvature", c.curvature},
                {"det_hessian", c.det_hessian},
                {"curvature_spread", c.curvature_spread},
                {"det_spread", c.det_spread},
                {"threshold", c.threshold},
                {"scope", "sampled grid only"}};
}

Json to_json(const MeanValueReport& r) {
    Json centers = Json::array();
    for (const auto& q : r.centers) centers.push_back(to_json(q));
    return Json{{"test_fn", r.test_fn},
                {"centers", std::move(centers)},
                {"radii", r.radii},
                {"ratios", r.ratios},
                {"spread_per_radius", r.spread_per_radius},
                {"max_deviation_from_one", r.max_deviation_from_one},
                {"tolerance", r.tolerance},
                {"harmonic_verdict", r.harmonic_verdict}};
}

Json to_json(const UTransformCheck& c) {
    return Json{{"samples", c.samples},
                {"max_u_residual", c.max_u_residual},
                {"max_second_derivative_residual", c.max_second_derivative_residual},
                {"max_residual", c.max_residual()},
                {"u_at_origin", c.u_at_origin},
                {"v_at_origin", c.v_at_origin},
                {"origin_is_v_minimum", c.origin_is_v_minimum},
                {"origin_is_u_maximum", c.origin_is_u_maximum}};
}

Json strip_volatile(Json report) {
    if (report.is_object()) report.erase("generated_at");
    return report;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace hypersect
