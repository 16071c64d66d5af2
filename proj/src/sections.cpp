#include "hypersect/sections.hpp"

#include "hypersect/error.hpp"

#include <cmath>

namespace hypersect {

namespace {

enum Component : std::size_t { kProjected = 0, kVolume, kSurface, kExcess, kComponents };

IntegralValue scaled(IntegralValue v, double factor) {
    v.value *= factor;
    v.abs_err_est *= factor;
    return v;
}

StarMeasures measure_region(const SectionRegion& region, const QuadratureConfig& cfg) {
    const SurfacePoint& p = region.base();
    const ConvexSurface& surface = region.surface();
    const double k = region.level();
    const double grad_sq0 = p.gradient.squaredNorm();

    const auto values = integrate_region_multi(
        region, kComponents,
        [&](const Vec& u, std::span<double> out) {
            const Vec x = p.x0 + u;
            const double g = surface.value(x) - p.height - p.gradient.dot(u);
            const double grad_sq = surface.gradient(x).squaredNorm();
            const double w = std::sqrt(1.0 + grad_sq);
            out[kProjected] = 1.0;
            out[kVolume] = k - g;
            out[kSurface] = w;
            // W(x) - W(p) without cancellation.
            out[kExcess] = (grad_sq - grad_sq0) / (w + p.w);
        },
        cfg);

    StarMeasures m;
    m.level = k;
    m.projected = values[kProjected];
    m.area = scaled(values[kProjected], p.w);
    m.volume = values[kVolume];
    m.surface = values[kSurface];
    m.excess = values[kExcess];
    return m;
}

}  // namespace

StarMeasures star_measures(const ConvexSurface& surface, const SurfacePoint& point, double k,
                           const QuadratureConfig& cfg) {
    return measure_region(build_region(surface, point, SectionSpec::vertical(k)), cfg);
}

IntegralValue area_star(const ConvexSurface& surface, const SurfacePoint& point, double k,
                        const QuadratureConfig& cfg) {
    const SectionRegion region = build_region(surface, point, SectionSpec::vertical(k));
    return scaled(integrate_region(region, [](const Vec&) { return 1.0; }, cfg), point.w);
}

IntegralValue volume_star(const ConvexSurface& surface, const SurfacePoint& point, double k,
                          const QuadratureConfig& cfg) {
    const SectionRegion region = build_region(surface, point, SectionSpec::vertical(k));
    return integrate_region(region, [&](const Vec& u) { return k - region.gauge(u); }, cfg);
}

IntegralValue surface_star(const ConvexSurface& surface, const SurfacePoint& point, double k,
                           const QuadratureConfig& cfg) {
    const SectionRegion region = build_region(surface, point, SectionSpec::vertical(k));
    return integrate_region(
        region, [&](const Vec& u) { return std::sqrt(1.0 + surface.gradient(point.x0 + u).squaredNorm()); }, cfg);
}

SectionMeasure measure_section(const ConvexSurface& surface, const SurfacePoint& point, const SectionSpec& spec,
                               const QuadratureConfig& cfg) {
    const SectionRegion region = build_region(surface, point, spec);
    const StarMeasures star = measure_region(region, cfg);

    SectionMeasure m;
    m.point = point;
    m.spec = spec;
    m.k = vertical_level(point, spec);
    m.t = normal_offset(point, spec);
    m.a_star = star.area;
    m.v_star = star.volume;
    m.s_star = star.surface;
    // The plane at normal offset t is the plane at vertical offset t * W.
    m.a_loc = star.area;
    m.v_loc = star.volume;
    m.s_loc = star.surface;
    m.n_loc = star.excess;
    return m;
}

SectionMeasure local_frame_measures(const ConvexSurface& surface, const SurfacePoint& point, double t,
                                    const QuadratureConfig& cfg) {
    return measure_section(surface, point, SectionSpec::normal(t), cfg);
}

IntegralValue excess_at_vertex(const ConvexSurface& surface, const SurfacePoint& point, double t,
                               const QuadratureConfig& cfg) {
    if (point.gradient.norm() > 1e-12) {
        throw Error(ErrorKind::Precondition, "direct excess integral needs a horizontal tangent plane");
    }
    const SectionRegion region = build_region(surface, point, SectionSpec::normal(t));
    return integrate_region(
        region,
        [&](const Vec& u) {
            const double grad_sq = surface.gradient(point.x0 + u).squaredNorm();
            return grad_sq / (std::sqrt(1.0 + grad_sq) + 1.0);
        },
        cfg);
}

double DerivativeCheck::rel_discrepancy() const { return std::abs(dv_dt - area) / std::abs(area); }

DerivativeCheck dv_dt_check(const ConvexSurface& surface, const SurfacePoint& point, double t, double h,
                            const QuadratureConfig& cfg) {
    if (!(h > 0.0) || !(h < t / 4.0)) throw Error(ErrorKind::Precondition, "dv_dt_check needs 0 < h < t/4");

    const SectionMeasure centre = local_frame_measures(surface, point, t, cfg);
    // Freeze the resolution picked at t so both volumes see the same rule.
    QuadratureConfig fixed = cfg;
    fixed.radial_nodes = cfg.radial_nodes << centre.v_loc.refinements;
    fixed.directions = cfg.directions << centre.v_loc.refinements;
    fixed.max_refinements = 0;

    const SectionMeasure plus = local_frame_measures(surface, point, t + h, fixed);
    const SectionMeasure minus = local_frame_measures(surface, point, t - h, fixed);

    DerivativeCheck check;
    check.dv_dt = (plus.v_loc.value - minus.v_loc.value) / (2.0 * h);
    check.area = centre.a_loc.value;
    check.quadrature_err = centre.a_loc.abs_err_est;
    return check;
}

}  // namespace hypersect
