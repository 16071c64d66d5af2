#include "hypersect/suite.hpp"

#include "hypersect/random.hpp"

#include <cmath>
#include <numbers>

namespace hypersect {

namespace {

constexpr double kPi = std::numbers::pi;

Vec pt(std::initializer_list<double> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

/// Built-in surfaces with point boxes and offset ranges that keep sections well inside the domain.
struct RegistryCell {
    const char* surface;
    double box;
    double t_lo;
    double t_hi;
};

constexpr RegistryCell kRegistry[] = {
    {"paraboloid:1,1", 1.0, 0.1, 0.8}, {"paraboloid:1,2", 0.8, 0.1, 0.6}, {"sphere:1", 0.2, 0.05, 0.4},
    {"cosh-bowl:2", 1.0, 0.1, 0.6},    {"quartic-bowl:2", 0.8, 0.1, 0.5}, {"exp-bowl:2", 0.7, 0.1, 0.5},
    {"sphere:1,3", 0.2, 0.05, 0.3},    {"cosh-bowl:1", 1.0, 0.1, 0.8},
};

Vec draw_point(Rng& rng, int dim, double box) {
    Vec x(dim);
    for (int i = 0; i < dim; ++i) x[i] = rng.uniform(-box, box);
    return x;
}

CriterionResult archimedes(const QuadratureConfig& cfg) {
    const ConvexSurface sphere = make_sphere_graph(1.0, 2);
    const std::vector<Vec> points = {pt({0, 0}),     pt({0.1, 0}),   pt({0, 0.1}),  pt({-0.15, 0.05}),
                                     pt({0.2, 0}),   pt({0, -0.2}),  pt({0.1, 0.1}), pt({-0.12, -0.12})};
    const std::vector<double> ts = {0.1, 0.25, 0.5};
    double worst = 0.0;
    Json cells = Json::array();
    for (const Vec& x : points) {
        const SurfacePoint p = point_at(sphere, x);
        for (double t : ts) {
            const SectionMeasure m = local_frame_measures(sphere, p, t, cfg);
            const double expected = 2.0 * kPi * 1.0 * t;
            const double rel = std::abs(m.s_loc.value - expected) / expected;
            worst = std::max(worst, rel);
            cells.push_back(Json{{"x0", to_json(x)}, {"t", t}, {"s_loc", m.s_loc.value}, {"rel_err", rel}});
        }
    }
    return {1, "Archimedes identity S = 2 pi a t", worst <= 1e-6,
            Json{{"max_rel_err", worst}, {"tolerance", 1e-6}, {"cells", std::move(cells)}}};
}

CriterionResult lemma8_limits(const QuadratureConfig& cfg) {
    struct Case {
        ConvexSurface surface;
        std::vector<Vec> points;
    };
    const std::vector<double> a11 = {1.0, 1.0};
    const std::vector<Case> cases = {
        {make_paraboloid(a11), {pt({0, 0}), pt({1, 0}), pt({0.5, -0.5})}},
        {make_sphere_graph(1.0, 2), {pt({0, 0}), pt({0.2, 0}), pt({-0.1, 0.15})}},
    };
    double worst = 0.0;
    Json rows = Json::array();
    for (const auto& c : cases) {
        for (const Vec& x : c.points) {
            const SurfacePoint p = point_at(c.surface, x);
            for (const LimitEstimate& e : lemma8_estimate_all(c.surface, p, {}, cfg)) {
                worst = std::max(worst, e.rel_dev);
                rows.push_back(Json{{"surface", c.surface.name()},
                                    {"x0", to_json(x)},
                                    {"quantity", std::string(to_string(e.quantity))},
                                    {"extrapolated", e.extrapolated},
                                    {"predicted", e.predicted},
                                    {"rel_dev", e.rel_dev}});
            }
        }
    }
    return {2, "Small-section curvature limits for A, V, S", worst <= 1e-3,
            Json{{"max_rel_dev", worst}, {"tolerance", 1e-3}, {"estimates", std::move(rows)}}};
}

CriterionResult derivative_identity(const QuadratureConfig& cfg) {
    Rng rng(3, 0xd5);
    constexpr double h = 1e-4;
    double worst = 0.0;
    Json rows = Json::array();
    for (int cell = 0; cell < 12; ++cell) {
        const RegistryCell& rc = kRegistry[static_cast<std::size_t>(rng.uniform() * std::size(kRegistry))];
        const ConvexSurface surface = parse_surface(rc.surface);
        const Vec x = draw_point(rng, surface.dim(), rc.box);
        const double t = rng.uniform(rc.t_lo, rc.t_hi);
        const DerivativeCheck check = dv_dt_check(surface, point_at(surface, x), t, h, cfg);
        worst = std::max(worst, check.rel_discrepancy());
        rows.push_back(Json{{"surface", surface.name()},
                            {"x0", to_json(x)},
                            {"t", t},
                            {"dv_dt", check.dv_dt},
                            {"area", check.area},
                            {"rel_discrepancy", check.rel_discrepancy()}});
    }
    return {3, "Volume derivative equals section area", worst <= 1e-4,
            Json{{"h", h}, {"max_rel_discrepancy", worst}, {"tolerance", 1e-4}, {"cells", std::move(rows)}}};
}

CriterionResult paraboloid_closed_forms(const QuadratureConfig& cfg) {
    const std::vector<std::vector<double>> coeff_sets = {{1.0, 1.0}, {1.0, 2.0}};
    const std::vector<Vec> points = {pt({0, 0}), pt({1, 0})};
    const std::vector<double> ks = {0.5, 1.0};
    double worst = 0.0;
    Json rows = Json::array();
    for (const auto& coeffs : coeff_sets) {
        const ConvexSurface surface = make_paraboloid(coeffs);
        for (const Vec& x : points) {
            const SurfacePoint p = point_at(surface, x);
            for (double k : ks) {
                const StarMeasures m = star_measures(surface, p, k, cfg);
                const double v_exp = cap_oracle_paraboloid(coeffs, x, SectionSpec::vertical(k), Quantity::V);
                const double a_exp = cap_oracle_paraboloid(coeffs, x, SectionSpec::vertical(k), Quantity::A);
                const double v_err = std::abs(m.volume.value - v_exp) / v_exp;
                const double a_err = std::abs(m.area.value - a_exp) / a_exp;
                worst = std::max({worst, v_err, a_err});
                rows.push_back(Json{{"surface", surface.name()},
                                    {"x0", to_json(x)},
                                    {"k", k},
                                    {"v_star", m.volume.value},
                                    {"v_expected", v_exp},
                                    {"a_star", m.area.value},
                                    {"a_expected", a_exp}});
            }
        }
    }
    return {4, "Paraboloid closed forms for V* and A*", worst <= 1e-7,
            Json{{"max_rel_err", worst}, {"tolerance", 1e-7}, {"cells", std::move(rows)}}};
}

CriterionResult forward_scans(const QuadratureConfig& cfg) {
    const std::vector<double> a11 = {1.0, 1.0};
    const ConvexSurface surface = make_paraboloid(a11);
    const std::vector<Vec> points = {pt({0, 0}), pt({1, 0}), pt({0, 2}), pt({1, 1})};
    const std::vector<double> ks = {0.5, 1.0};
    ScanOptions opts;
    opts.quad = cfg;
    bool ok = true;
    Json out = Json::object();
    for (Condition c : {Condition::VStar, Condition::AStar}) {
        const ScanReport scan = scan_condition(surface, c, points, ks, opts);
        const bool holds = scan.verdict == Verdict::Holds && scan.max_spread() <= 1e-6;
        double det_err = INFINITY;
        Json inferred;
        if (scan.verdict == Verdict::Holds) {
            const CurvatureInference inf = infer_curvature(scan);
            det_err = 0.0;
            for (double d : inf.det_hessian) det_err = std::max(det_err, std::abs(d - 4.0) / 4.0);
            inferred = to_json(inf);
        }
        ok = ok && holds && det_err <= 1e-4;
        out[std::string(to_string(c))] = Json{{"verdict", std::string(to_string(scan.verdict))},
                                              {"max_spread", scan.max_spread()},
                                              {"det_hessian_max_rel_err", det_err},
                                              {"inferred", std::move(inferred)}};
    }
    out["spread_tolerance"] = 1e-6;
    out["det_tolerance"] = 1e-4;
    return {5, "Paraboloid satisfies V* and A*; inferred det Hessian = 4", ok, std::move(out)};
}

CriterionResult s_star_fails(const QuadratureConfig& cfg) {
    const std::vector<double> a11 = {1.0, 1.0};
    const ConvexSurface surface = make_paraboloid(a11);
    const std::vector<Vec> points = {pt({0, 0}), pt({1, 0}), pt({0, 2})};
    const std::vector<double> ks = {0.5, 1.0};
    ScanOptions opts;
    opts.quad = cfg;
    const ScanReport scan = scan_condition(surface, Condition::SStar, points, ks, opts);
    const double spread_k1 = scan.spread[1];
    const bool ok = scan.verdict == Verdict::Fails && spread_k1 >= 1e-3;
    return {6, "Paraboloid violates S*", ok,
            Json{{"verdict", std::string(to_string(scan.verdict))},
                 {"spread_at_k1", spread_k1},
                 {"threshold", scan.threshold},
                 {"required_spread", 1e-3},
                 {"scan", to_json(scan)}}};
}

CriterionResult mean_value(const QuadratureConfig& cfg) {
    const std::vector<double> a11 = {1.0, 1.0};
    const std::vector<double> radii = {0.05, 0.1, 0.2};
    const MeanValueReport w = mean_value_scan(w_integrand(a11), {pt({0, 0})}, radii, cfg);
    bool ok = true;
    Json expansion = Json::array();
    for (std::size_t j = 0; j < radii.size(); ++j) {
        const double r = radii[j];
        const double dev = std::abs(w.ratios[0][j] - (1.0 + r * r));
        const double bound = 5.0 * std::pow(r, 4);
        ok = ok && dev <= bound && w.ratios[0][j] >= 1.0;
        expansion.push_back(Json{{"r", r}, {"ratio", w.ratios[0][j]}, {"deviation", dev}, {"bound", bound}});
    }

    const MeanValueReport affine = mean_value_scan(registry_test_function("affine", 2),
                                                   {pt({0, 0}), pt({2, 0}), pt({-1, 3})}, {0.1, 0.5, 1.0}, cfg, 1e-9);
    ok = ok && affine.harmonic_verdict;

    Rng rng(7, 0x0c);
    std::vector<Vec> samples;
    for (int i = 0; i < 50; ++i) samples.push_back(draw_point(rng, 2, 2.0));
    double residual = 0.0;
    double u0_err = 0.0;
    for (const std::vector<double>& coeffs : {std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 3.0}}) {
        const UTransformCheck u = u_transform_check(coeffs, samples);
        residual = std::max(residual, u.max_residual());
        u0_err = std::max(u0_err, std::abs(u.u_at_origin - 2.0));
    }
    ok = ok && residual <= 1e-6 && u0_err <= 1e-12;

    return {7, "Mean-value machinery and U-transform", ok,
            Json{{"w_expansion", std::move(expansion)},
                 {"affine_max_deviation", affine.max_deviation_from_one},
                 {"affine_tolerance", 1e-9},
                 {"u_transform_residual", residual},
                 {"u_transform_tolerance", 1e-6},
                 {"u_origin_error", u0_err}}};
}

CriterionResult remainder_vanishing(const QuadratureConfig& cfg) {
    const std::vector<double> a11 = {1.0, 1.0};
    const ConvexSurface surface = make_paraboloid(a11);
    const SurfacePoint vertex = point_at(surface, pt({0, 0}));
    // j = 0..6: at j = 5 the exact ratio N/A is still 0.0156
    const auto rungs = remainder_ladder(surface, vertex, LadderConfig{0.5, 0.5, 7}, cfg);
    bool decreasing = true;
    double exact_err = 0.0;
    Json ladder = Json::array();
    for (std::size_t j = 0; j < rungs.size(); ++j) {
        const auto& r = rungs[j];
        if (j > 0 && !(r.excess_normalized < rungs[j - 1].excess_normalized)) decreasing = false;
        const double ratio = r.excess_normalized / r.area_normalized;
        const double exact = (std::pow(1.0 + 4.0 * r.t, 1.5) - 1.0) / (6.0 * r.t) - 1.0;
        exact_err = std::max(exact_err, std::abs(ratio - exact) / exact);
        ladder.push_back(Json{{"t", r.t},
                              {"n_over_t_pow", r.excess_normalized},
                              {"a_over_t_pow", r.area_normalized},
                              {"ratio", ratio},
                              {"exact_ratio", exact},
                              {"n_direct", r.excess_direct}});
    }
    const double final_ratio = rungs.back().excess_normalized / rungs.back().area_normalized;
    const double ratio_j5 = rungs[5].excess_normalized / rungs[5].area_normalized;
    const bool ok = decreasing && exact_err <= 1e-8 && final_ratio < 1e-2;
    return {8, "Excess N_p(t) / t^{n/2} vanishes at the vertex", ok,
            Json{{"decreasing", decreasing},
                 {"max_rel_err_vs_exact", exact_err},
                 {"ratio_at_j5", ratio_j5},
                 {"bound_met_by_j5", ratio_j5 < 1e-2},
                 {"last_rung", static_cast<int>(rungs.size()) - 1},
                 {"final_ratio", final_ratio},
                 {"bound", 1e-2},
                 {"ladder", std::move(ladder)}}};
}

CriterionResult classification(const QuadratureConfig& cfg) {
    struct Case {
        const char* surface;
        ShapeClass expected;
    };
    const Case cases[] = {{"sphere:2", ShapeClass::SphereLike},
                          {"paraboloid:1,2", ShapeClass::ParaboloidLike},
                          {"cosh-bowl", ShapeClass::Neither}};
    bool ok = true;
    Json rows = Json::array();
    ClassifyOptions opts;
    opts.quad = cfg;
    for (const auto& c : cases) {
        const Classification cl = classify(parse_surface(c.surface), opts);
        ok = ok && cl.verdict == c.expected;
        rows.push_back(Json{{"surface", c.surface},
                            {"verdict", std::string(to_string(cl.verdict))},
                            {"expected", std::string(to_string(c.expected))},
                            {"curvature_spread", cl.curvature_spread},
                            {"det_spread", cl.det_spread}});
    }
    return {9, "Classification on default grids", ok, Json{{"cases", std::move(rows)}}};
}

CriterionResult mc_agreement(const QuadratureConfig& cfg) {
    QuadratureConfig mc_cfg = cfg;
    mc_cfg.mc_samples = 200'000;
    mc_cfg.mc_target_rel_err = 1.0;  // fixed sample count
    Rng rng(11, 0xa7);
    bool agree = true;
    bool reproducible = true;
    double worst_sigma = 0.0;
    Json rows = Json::array();
    for (const RegistryCell& rc : kRegistry) {
        const ConvexSurface surface = parse_surface(rc.surface);
        if (surface.dim() != 2) continue;
        for (int rep = 0; rep < 2; ++rep) {
            const Vec x = draw_point(rng, 2, rc.box);
            const SurfacePoint p = point_at(surface, x);
            const double k = rng.uniform(rc.t_lo, rc.t_hi) * p.w;
            const SectionRegion region = build_region(surface, p, SectionSpec::vertical(k));
            const auto integrand = [&](const Vec& u, std::span<double> out) {
                const Vec xx = p.x0 + u;
                out[0] = 1.0;
                out[1] = k - region.gauge(u);
                out[2] = std::sqrt(1.0 + surface.gradient(xx).squaredNorm());
            };
            const auto det = integrate_region_multi(region, 3, integrand, cfg);
            const auto mc = mc_integrate_region_multi(region, 3, integrand, mc_cfg);
            if (rep == 0) {
                QuadratureConfig serial = mc_cfg;
                serial.parallel = false;
                const auto again = mc_integrate_region_multi(region, 3, integrand, serial);
                for (int c = 0; c < 3; ++c) reproducible = reproducible && again[c].value == mc[c].value;
            }
            Json comps = Json::array();
            for (int c = 0; c < 3; ++c) {
                const double diff = std::abs(det[c].value - mc[c].value);
                const double allowed = 3.0 * (det[c].abs_err_est + mc[c].abs_err_est);
                agree = agree && diff <= allowed;
                worst_sigma = std::max(worst_sigma, diff / (det[c].abs_err_est + mc[c].abs_err_est));
                comps.push_back(Json{{"deterministic", det[c].value}, {"monte_carlo", mc[c].value}, {"mc_err", mc[c].abs_err_est}});
            }
            rows.push_back(Json{{"surface", surface.name()}, {"x0", to_json(x)}, {"k", k}, {"area_volume_surface", std::move(comps)}});
        }
    }
    return {10, "Monte Carlo agrees with deterministic cubature; fixed seed reproduces bitwise", agree && reproducible,
            Json{{"max_diff_over_combined_err", worst_sigma},
                 {"allowed", 3.0},
                 {"bitwise_reproducible", reproducible},
                 {"cells", std::move(rows)}}};
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
    static const std::vector<Criterion> criteria = {
        {1, "archimedes", archimedes},
        {2, "lemma8-limits", lemma8_limits},
        {3, "derivative-identity", derivative_identity},
        {4, "paraboloid-closed-forms", paraboloid_closed_forms},
        {5, "forward-scans", forward_scans},
        {6, "s-star-fails", s_star_fails},
        {7, "mean-value", mean_value},
        {8, "remainder-vanishing", remainder_vanishing},
        {9, "classification", classification},
        {10, "mc-agreement", mc_agreement},
    };
    return criteria;
}

std::vector<CriterionResult> run_acceptance_battery(const QuadratureConfig& cfg) {
    std::vector<CriterionResult> results;
    for (const auto& c : acceptance_criteria()) results.push_back(c.run(cfg));
    return results;
}

Json to_json(const CriterionResult& r) {
    return Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"metrics", r.metrics}};
}

}  // namespace hypersect
