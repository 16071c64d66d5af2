#pragma once

#include "hypersect/surface.hpp"

#include <string_view>

namespace hypersect {

enum class OffsetMode { Normal, Vertical };

std::string_view to_string(OffsetMode mode);
OffsetMode parse_offset_mode(std::string_view text);

/// Cutting hyperplane parallel to the tangent plane: offset either by the
/// perpendicular distance t (Normal) or by the vertical rise k (Vertical).
struct SectionSpec {
    OffsetMode mode = OffsetMode::Vertical;
    double magnitude = 1.0;

    static SectionSpec normal(double t);
    static SectionSpec vertical(double k);
};

/// Switches modes using k = t * W(p).
SectionSpec spec_convert(const SurfacePoint& point, const SectionSpec& spec);
/// The vertical offset k of the cutting plane.
double vertical_level(const SurfacePoint& point, const SectionSpec& spec);
/// The normal offset t of the cutting plane.
double normal_offset(const SurfacePoint& point, const SectionSpec& spec);

/// The horizontal projection D_p(k) = {u : g(u) < k} of the cap cut off by
/// the plane, in tangent-shifted coordinates u = x - x0.
class SectionRegion {
public:
    SectionRegion(ConvexSurface surface, SurfacePoint base, SectionSpec spec);

    const ConvexSurface& surface() const { return surface_; }
    const SurfacePoint& base() const { return base_; }
    const SectionSpec& spec() const { return spec_; }
    double level() const { return level_; }
    int dim() const { return base_.dim(); }

    /// Height of the graph above the tangent plane, measured vertically.
    double gauge(const Vec& u) const;
    bool contains(const Vec& u) const;
    Vec to_global(const Vec& u) const { return base_.x0 + u; }

    /// r(v) with g(r v) = level for a unit direction v.
    double boundary_radius(const Vec& v) const;

private:
    ConvexSurface surface_;
    SurfacePoint base_;
    SectionSpec spec_;
    double level_;
    double negative_tol_;
};

/// Validates the spec, probes the coordinate directions, and fails with
/// RegionUnbounded or ConvexityViolation when the section is not usable.
SectionRegion build_region(const ConvexSurface& surface, const SurfacePoint& point, const SectionSpec& spec);

inline double boundary_radius(const SectionRegion& region, const Vec& v) { return region.boundary_radius(v); }

}  // namespace hypersect
