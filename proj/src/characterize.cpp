#include "hypersect/characterize.hpp"

#include "hypersect/config.hpp"
#include "hypersect/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hypersect {

namespace {

constexpr int kHaltonBases[] = {2, 3, 5, 7, 11, 13};

double halton(int base, std::size_t index) {
    double f = 1.0;
    double r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

struct Statistic {
    double value;
    double abs_err;
};

Statistic statistic_for(Condition c, const SectionMeasure& m) {
    const int n = m.point.dim();
    const double w = m.point.w;
    switch (c) {
        case Condition::A: return {m.a_loc.value, m.a_loc.abs_err_est};
        case Condition::V: return {m.v_loc.value, m.v_loc.abs_err_est};
        case Condition::S: return {m.s_loc.value, m.s_loc.abs_err_est};
        case Condition::VStar: return {m.v_star.value, m.v_star.abs_err_est};
        case Condition::AStar: return {m.a_star.value / w, m.a_star.abs_err_est / w};
        case Condition::SStar: return {m.s_star.value / w, m.s_star.abs_err_est / w};
        case Condition::VScaling: {
            const double s = std::pow(m.t, 0.5 * (n + 2));
            return {m.v_loc.value / s, m.v_loc.abs_err_est / s};
        }
        case Condition::AScaling: {
            const double s = std::pow(m.t, 0.5 * n);
            return {m.a_loc.value / s, m.a_loc.abs_err_est / s};
        }
    }
    return {0.0, 0.0};
}

}  // namespace

std::string_view to_string(Condition c) {
    switch (c) {
        case Condition::A: return "A";
        case Condition::V: return "V";
        case Condition::S: return "S";
        case Condition::VStar: return "Vstar";
        case Condition::AStar: return "Astar";
        case Condition::SStar: return "Sstar";
        case Condition::VScaling: return "Vss";
        case Condition::AScaling: return "Ass";
    }
    return "?";
}

Condition parse_condition(std::string_view text) {
    if (text == "A") return Condition::A;
    if (text == "V") return Condition::V;
    if (text == "S") return Condition::S;
    if (text == "Vstar" || text == "V*") return Condition::VStar;
    if (text == "Astar" || text == "A*") return Condition::AStar;
    if (text == "Sstar" || text == "S*") return Condition::SStar;
    if (text == "Vss" || text == "V**") return Condition::VScaling;
    if (text == "Ass" || text == "A**") return Condition::AScaling;
    throw Error(ErrorKind::InvalidParameter,
                "unknown condition '" + std::string(text) + "' (A, V, S, Vstar, Astar, Sstar, Vss, Ass)");
}

bool is_scaling_condition(Condition c) { return c == Condition::VScaling || c == Condition::AScaling; }

bool uses_vertical_offset(Condition c) {
    return c == Condition::VStar || c == Condition::AStar || c == Condition::SStar;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::string_view to_string(ShapeClass s) {
    switch (s) {
        case ShapeClass::SphereLike: return "sphere-like";
        case ShapeClass::ParaboloidLike: return "paraboloid-like";
        case ShapeClass::Neither: return "neither";
    }
    return "?";
}

double ScanReport::max_spread() const { return spread.empty() ? 0.0 : *std::max_element(spread.begin(), spread.end()); }

double relative_spread(std::span<const double> values) {
    if (values.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    if (*hi == *lo) return 0.0;
    return (*hi - *lo) / std::abs(mean);
}

Verdict verdict_for(std::span<const double> spreads, double threshold) {
    bool all_within = true;
    for (double s : spreads) {
        if (s >= 10.0 * threshold) return Verdict::Fails;
        if (s > threshold) all_within = false;
    }
    return all_within ? Verdict::Holds : Verdict::Inconclusive;
}

ScanReport scan_condition(const ConvexSurface& surface, Condition condition, const std::vector<Vec>& points,
                          const std::vector<double>& offsets, const ScanOptions& options) {
    if (points.size() < 3) throw Error(ErrorKind::Precondition, "a scan needs at least 3 base points");
    if (offsets.size() < 2) throw Error(ErrorKind::Precondition, "a scan needs at least 2 offsets");

    ScanReport report;
    report.condition = condition;
    report.offsets = offsets;
    report.axis = is_scaling_condition(condition) ? SpreadAxis::AcrossOffsets : SpreadAxis::AcrossPoints;

    for (const Vec& x : points) {
        const SurfacePoint p = point_at(surface, x);
        std::vector<double> row;
        std::vector<double> errs;
        for (double off : offsets) {
            const SectionSpec spec = uses_vertical_offset(condition) ? SectionSpec::vertical(off) : SectionSpec::normal(off);
            const SectionMeasure m = measure_section(surface, p, spec, options.quad);
            const Statistic s = statistic_for(condition, m);
            row.push_back(s.value);
            errs.push_back(s.abs_err);
            if (s.value != 0.0) report.max_rel_quad_err = std::max(report.max_rel_quad_err, s.abs_err / std::abs(s.value));
        }
        report.points.push_back(p);
        report.values.push_back(std::move(row));
        report.abs_errors.push_back(std::move(errs));
    }

    if (report.axis == SpreadAxis::AcrossPoints) {
        for (std::size_t j = 0; j < offsets.size(); ++j) {
            std::vector<double> column;
            for (const auto& row : report.values) column.push_back(row[j]);
            report.spread.push_back(relative_spread(column));
        }
    } else {
        for (const auto& row : report.values) report.spread.push_back(relative_spread(row));
    }

    report.threshold = options.threshold > 0.0 ? options.threshold : std::max(1e-5, 20.0 * report.max_rel_quad_err);
    report.verdict = verdict_for(report.spread, report.threshold);
    return report;
}

CurvatureInference infer_curvature(const ScanReport& scan) {
    const Condition c = scan.condition;
    if (c != Condition::VStar && c != Condition::AStar && c != Condition::V && c != Condition::A) {
        throw Error(ErrorKind::Precondition, "curvature inference needs a V, A, Vstar or Astar scan");
    }
    if (scan.verdict != Verdict::Holds) {
        throw Error(ErrorKind::Precondition, "curvature inference needs a scan whose verdict is 'holds'");
    }
    if (scan.points.empty() || scan.offsets.size() < 2) throw Error(ErrorKind::Precondition, "scan is too small");

    // Two smallest offsets.
    std::vector<std::size_t> order(scan.offsets.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return scan.offsets[a] < scan.offsets[b]; });
    const std::size_t j1 = order[0];
    const std::size_t j2 = order[1];
    const double k1 = scan.offsets[j1];
    const double k2 = scan.offsets[j2];

    const int n = scan.points.front().dim();
    const bool volume = c == Condition::VStar || c == Condition::V;
    const bool starred = c == Condition::VStar || c == Condition::AStar;
    const double pw = volume ? 0.5 * (n + 2) : 0.5 * n;
    const double omega = ball_volume(n);

    CurvatureInference inf;
    inf.condition = c;
    for (std::size_t i = 0; i < scan.points.size(); ++i) {
        const SurfacePoint& p = scan.points[i];
        const double y1 = scan.values[i][j1] / std::pow(k1, pw);
        const double y2 = scan.values[i][j2] / std::pow(k2, pw);
        // Linear extrapolation to zero offset.
        const double limit = (y1 * k2 - y2 * k1) / (k2 - k1);
        const double w_pow = std::pow(p.w, n + 2);
        double numer = volume ? std::pow(2.0, n + 2) * omega * omega / ((n + 2.0) * (n + 2.0))
                              : std::pow(2.0, n) * omega * omega;
        double curvature = numer / (limit * limit);
        if (starred) curvature /= w_pow;
        inf.limit_constant.push_back(limit);
        inf.curvature.push_back(curvature);
        inf.det_hessian.push_back(curvature * w_pow);
        inf.analytic_curvature.push_back(p.k_curv);
    }
    inf.det_mean = std::accumulate(inf.det_hessian.begin(), inf.det_hessian.end(), 0.0) /
                   static_cast<double>(inf.det_hessian.size());
    inf.det_spread = relative_spread(inf.det_hessian);
    inf.curvature_spread = relative_spread(inf.curvature);
    return inf;
}

std::vector<Vec> default_grid(int dim, std::size_t count, double half_width) {
    if (dim < 1 || dim > kMaxDimension) throw Error(ErrorKind::InvalidParameter, "grid dimension out of range");
    std::vector<Vec> grid;
    if (count == 0) return grid;
    grid.push_back(Vec::Zero(dim));
    for (std::size_t i = 1; i < count; ++i) {
        Vec x(dim);
        for (int d = 0; d < dim; ++d) x[d] = half_width * (2.0 * halton(kHaltonBases[d], i) - 1.0);
        grid.push_back(std::move(x));
    }
    return grid;
}

double default_grid_half_width(const ConvexSurface& surface) {
    return std::isfinite(surface.domain_radius()) ? 0.3 * surface.domain_radius() : 1.0;
}

Classification classify(const ConvexSurface& surface, const ClassifyOptions& options) {
    const int n = surface.dim();
    const double hw = options.half_width > 0.0 ? options.half_width : default_grid_half_width(surface);
    Classification out;
    out.threshold = options.threshold;
    out.source = options.source;

    for (const Vec& x : default_grid(n, options.grid_points, hw)) {
        if (!surface.in_domain(x)) {
            out.excluded.push_back(x);
            continue;
        }
        const SurfacePoint p = point_at(surface, x);
        if (p.degenerate()) {
            out.excluded.push_back(x);
            continue;
        }
        double k = p.k_curv;
        if (options.source == CurvatureSource::Measured) {
            const LimitEstimate est = lemma8_estimate(surface, p, Quantity::A, options.ladder, options.quad);
            const double omega = ball_volume(n);
            k = std::pow(2.0, n) * omega * omega / (est.extrapolated * est.extrapolated);
        }
        out.points.push_back(p);
        out.curvature.push_back(k);
        out.det_hessian.push_back(k * std::pow(p.w, n + 2));
    }
    if (out.points.size() < 2) {
        throw Error(ErrorKind::Inconclusive, "fewer than two non-degenerate grid points; cannot classify");
    }
    out.curvature_spread = relative_spread(out.curvature);
    out.det_spread = relative_spread(out.det_hessian);
    if (out.curvature_spread <= options.threshold) {
        out.verdict = ShapeClass::SphereLike;
    } else if (out.det_spread <= options.threshold) {
        out.verdict = ShapeClass::ParaboloidLike;
    } else {
        out.verdict = ShapeClass::Neither;
    }
    return out;
}

TestFunction w_integrand(std::span<const double> coeffs) {
    const int n = static_cast<int>(coeffs.size());
    if (n < 1 || n > kMaxDimension) throw Error(ErrorKind::InvalidParameter, "coefficient count out of range");
    Vec sq(n);
    for (int i = 0; i < n; ++i) {
        if (!(coeffs[i] > 0.0)) throw Error(ErrorKind::InvalidParameter, "coefficients must be positive");
        sq[i] = coeffs[i] * coeffs[i];
    }
    return {"w-integrand", n, [sq](const Vec& y) { return std::sqrt(1.0 + 4.0 * sq.dot(y.cwiseProduct(y))); }};
}

TestFunction registry_test_function(std::string_view name, int dim) {
    if (dim < 1 || dim > kMaxDimension) throw Error(ErrorKind::InvalidParameter, "dimension out of range");
    if (name == "affine") return {"affine", dim, [](const Vec& y) { return 3.0 + y[0]; }};
    if (name == "harmonic-quadratic") {
        if (dim < 2) throw Error(ErrorKind::InvalidParameter, "harmonic-quadratic needs n >= 2");
        return {"harmonic-quadratic", dim, [](const Vec& y) { return 5.0 + y[0] * y[0] - y[1] * y[1]; }};
    }
    throw Error(ErrorKind::InvalidParameter, "unknown test function '" + std::string(name) + "'");
}

MeanValueReport mean_value_scan(const TestFunction& test_fn, const std::vector<Vec>& centers,
                                const std::vector<double>& radii, const QuadratureConfig& cfg, double tolerance) {
    if (centers.empty() || radii.empty()) throw Error(ErrorKind::Precondition, "need at least one center and radius");
    MeanValueReport report;
    report.test_fn = test_fn.name;
    report.centers = centers;
    report.radii = radii;
    report.tolerance = tolerance;
    const int n = test_fn.dim;
    const double omega = ball_volume(n);

    for (const Vec& q : centers) {
        if (q.size() != n) throw Error(ErrorKind::InvalidParameter, "center dimension does not match test function");
        const double centre_value = test_fn.fn(q);
        if (centre_value == 0.0) throw Error(ErrorKind::Evaluation, "test function vanishes at a center");
        std::vector<double> row;
        for (double r : radii) {
            const IntegralValue integral = integrate_ball(q, r, test_fn.fn, cfg);
            const double ratio = integral.value / (centre_value * omega * std::pow(r, n));
            row.push_back(ratio);
            report.max_deviation_from_one = std::max(report.max_deviation_from_one, std::abs(ratio - 1.0));
        }
        report.ratios.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < radii.size(); ++j) {
        std::vector<double> column;
        for (const auto& row : report.ratios) column.push_back(row[j]);
        report.spread_per_radius.push_back(relative_spread(column));
    }
    report.harmonic_verdict = report.max_deviation_from_one <= tolerance;
    return report;
}

UTransformCheck u_transform_check(std::span<const double> coeffs, const std::vector<Vec>& samples) {
    const int n = static_cast<int>(coeffs.size());
    const TestFunction v = w_integrand(coeffs);

    const auto second_closed = [&](const Vec& x, double vx, int i) {
        const double a2 = coeffs[i] * coeffs[i];
        return 4.0 * a2 * (vx * vx - 4.0 * a2 * x[i] * x[i]) / (vx * vx * vx);
    };
    const auto u_closed = [&](const Vec& x) {
        const double vx = v.fn(x);
        double u = 0.0;
        for (int i = 0; i < n; ++i) u += second_closed(x, vx, i) / (coeffs[i] * coeffs[i]);
        return 0.25 * u;
    };

    UTransformCheck check;
    check.samples = samples.size();
    const Vec origin = Vec::Zero(n);
    check.v_at_origin = v.fn(origin);
    check.u_at_origin = u_closed(origin);
    check.origin_is_v_minimum = true;
    check.origin_is_u_maximum = true;

    for (const Vec& x : samples) {
        if (x.size() != n) throw Error(ErrorKind::InvalidParameter, "sample dimension does not match coefficients");
        const double vx = v.fn(x);
        const double u = u_closed(x);
        const double u_rhs = ((n - 1) * vx * vx + 1.0) / (vx * vx * vx);
        check.max_u_residual = std::max(check.max_u_residual, std::abs(u - u_rhs));

        const double h = 1e-4 * (1.0 + x.norm());
        for (int i = 0; i < n; ++i) {
            Vec xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            const double fd = (v.fn(xp) - 2.0 * vx + v.fn(xm)) / (h * h);
            const double closed = second_closed(x, vx, i);
            check.max_second_derivative_residual =
                std::max(check.max_second_derivative_residual, std::abs(fd - closed) / std::max(1.0, std::abs(closed)));
        }
        if (x.norm() > 0.0) {
            if (!(vx > check.v_at_origin)) check.origin_is_v_minimum = false;
            if (!(u < check.u_at_origin)) check.origin_is_u_maximum = false;
        }
    }
    return check;
}

}  // namespace hypersect
