#include "hypersect/region.hpp"

#include "hypersect/config.hpp"
#include "hypersect/error.hpp"

#include <cmath>
#include <limits>

namespace hypersect {

namespace {

constexpr int kMaxDoublings = 40;
constexpr int kMaxBisections = 200;

}  // namespace

std::string_view to_string(OffsetMode mode) { return mode == OffsetMode::Normal ? "normal" : "vertical"; }

OffsetMode parse_offset_mode(std::string_view text) {
    if (text == "normal" || text == "t") return OffsetMode::Normal;
    if (text == "vertical" || text == "k") return OffsetMode::Vertical;
    throw Error(ErrorKind::InvalidParameter, "offset mode must be normal or vertical, got '" + std::string(text) + "'");
}

SectionSpec SectionSpec::normal(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorKind::InvalidParameter, "section offset must be positive");
    return {OffsetMode::Normal, t};
}

SectionSpec SectionSpec::vertical(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorKind::InvalidParameter, "section offset must be positive");
    return {OffsetMode::Vertical, k};
}

SectionSpec spec_convert(const SurfacePoint& point, const SectionSpec& spec) {
    if (spec.mode == OffsetMode::Normal) return {OffsetMode::Vertical, spec.magnitude * point.w};
    return {OffsetMode::Normal, spec.magnitude / point.w};
}

double vertical_level(const SurfacePoint& point, const SectionSpec& spec) {
    return spec.mode == OffsetMode::Vertical ? spec.magnitude : spec.magnitude * point.w;
}

double normal_offset(const SurfacePoint& point, const SectionSpec& spec) {
    return spec.mode == OffsetMode::Normal ? spec.magnitude : spec.magnitude / point.w;
}

SectionRegion::SectionRegion(ConvexSurface surface, SurfacePoint base, SectionSpec spec)
    : surface_(std::move(surface)), base_(std::move(base)), spec_(spec) {
    if (!(spec_.magnitude > 0.0) || !std::isfinite(spec_.magnitude)) {
        throw Error(ErrorKind::InvalidParameter, "section offset must be positive");
    }
    level_ = vertical_level(base_, spec_);
    negative_tol_ = 1e-9 * std::max(1.0, std::abs(base_.height));
}

double SectionRegion::gauge(const Vec& u) const {
    return surface_.value(base_.x0 + u) - base_.height - base_.gradient.dot(u);
}

bool SectionRegion::contains(const Vec& u) const {
    const Vec x = base_.x0 + u;
    if (!surface_.in_domain(x)) return false;
    return gauge(u) < level_;
}

double SectionRegion::boundary_radius(const Vec& v) const {
    const double big_r = surface_.domain_radius();
    // Distance along v from x0 to the domain sphere, minus a small margin.
    double r_cap = std::numeric_limits<double>::infinity();
    if (std::isfinite(big_r)) {
        const double b = base_.x0.dot(v);
        const double c = base_.x0.squaredNorm() - big_r * big_r;
        r_cap = -b + std::sqrt(b * b - c) - 1e-9 * big_r;
    }

    const auto g_at = [&](double r) {
        const double g = gauge(r * v);
        if (!std::isfinite(g)) {
            throw Error(ErrorKind::Evaluation, "non-finite surface value along direction (" + format_point(v) + ")");
        }
        if (g < -negative_tol_) {
            throw Error(ErrorKind::ConvexityViolation,
                        "graph dips below the tangent plane at x = (" + format_point(base_.x0 + r * v) + ")");
        }
        return g;
    };

    double lo = 0.0;
    double hi = std::min(1.0, std::isfinite(big_r) ? big_r / 2.0 : 1.0) * 0x1.0p-10;
    bool bracketed = false;
    for (int step = 0; step <= kMaxDoublings; ++step) {
        if (hi >= r_cap) {
            hi = r_cap;
            if (g_at(hi) < level_) break;
            bracketed = true;
            break;
        }
        if (g_at(hi) >= level_) {
            bracketed = true;
            break;
        }
        lo = hi;
        hi *= 2.0;
    }
    if (!bracketed) {
        throw Error(ErrorKind::RegionUnbounded, "section at x0 = (" + format_point(base_.x0) + ") with level " +
                                                    std::to_string(level_) + " is not bounded inside the domain of " +
                                                    surface_.name());
    }

    // Invariant: g(lo v) < level <= g(hi v); converges to the smallest root.
    for (int it = 0; it < kMaxBisections && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g_at(mid) < level_) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

SectionRegion build_region(const ConvexSurface& surface, const SurfacePoint& point, const SectionSpec& spec) {
    if (!surface.in_domain(point.x0)) {
        throw Error(ErrorKind::Domain, "base point (" + format_point(point.x0) + ") outside the surface domain");
    }
    SectionRegion region(surface, point, spec);

    const int n = region.dim();
    for (int i = 0; i < n; ++i) {
        for (double sign : {1.0, -1.0}) {
            Vec v = Vec::Zero(n);
            v[i] = sign;
            (void)region.boundary_radius(v);
        }
    }
    if (n > 1) {
        const double inv = 1.0 / std::sqrt(static_cast<double>(n));
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            Vec v(n);
            for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1u ? -inv : inv;
            (void)region.boundary_radius(v);
        }
    }
    return region;
}

}  // namespace hypersect
