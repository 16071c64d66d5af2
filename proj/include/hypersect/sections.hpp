#pragma once

#include "hypersect/quad.hpp"

namespace hypersect {

/// The vertical-offset functionals at one (p, k), from a single polar pass.
struct StarMeasures {
    double level = 0.0;         // k
    IntegralValue area;         // A*_p(k) = W(p) * |D_p(k)|
    IntegralValue volume;       // V*_p(k)
    IntegralValue surface;      // S*_p(k)
    IntegralValue excess;       // S* - A*, integrated directly
    IntegralValue projected;    // |D_p(k)|
};

StarMeasures star_measures(const ConvexSurface& surface, const SurfacePoint& point, double k,
                           const QuadratureConfig& cfg = {});

IntegralValue area_star(const ConvexSurface& surface, const SurfacePoint& point, double k,
                        const QuadratureConfig& cfg = {});
IntegralValue volume_star(const ConvexSurface& surface, const SurfacePoint& point, double k,
                          const QuadratureConfig& cfg = {});
IntegralValue surface_star(const ConvexSurface& surface, const SurfacePoint& point, double k,
                           const QuadratureConfig& cfg = {});

/// Both parameterizations of one section. The starred quantities use the
/// vertical offset k, the local-frame ones the normal offset t = k / W(p);
/// they describe the same cap, so v_star == v_loc etc.
struct SectionMeasure {
    SurfacePoint point;
    SectionSpec spec;
    double k = 0.0;
    double t = 0.0;
    IntegralValue a_star, v_star, s_star;
    IntegralValue a_loc, v_loc, s_loc, n_loc;
};

SectionMeasure measure_section(const ConvexSurface& surface, const SurfacePoint& point, const SectionSpec& spec,
                               const QuadratureConfig& cfg = {});
SectionMeasure local_frame_measures(const ConvexSurface& surface, const SurfacePoint& point, double t,
                                    const QuadratureConfig& cfg = {});

/// N_p(t) as the tangent-frame integral of sqrt(1+|grad f|^2) - 1, valid only
/// where the tangent plane is horizontal (grad f(x0) = 0).
IntegralValue excess_at_vertex(const ConvexSurface& surface, const SurfacePoint& point, double t,
                               const QuadratureConfig& cfg = {});

struct DerivativeCheck {
    double dv_dt = 0.0;  // (V(t+h) - V(t-h)) / 2h
    double area = 0.0;   // A(t)
    double quadrature_err = 0.0;
    double rel_discrepancy() const;
};

/// Central difference of V_p(t) against A_p(t). Requires 0 < h < t/4. The
/// three volumes share one quadrature resolution.
DerivativeCheck dv_dt_check(const ConvexSurface& surface, const SurfacePoint& point, double t, double h,
                            const QuadratureConfig& cfg = {});

}  // namespace hypersect
