#pragma once

#include "hypersect/region.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace hypersect {

struct QuadratureConfig {
    int radial_nodes = 32;  // Gauss-Legendre order per ray
    int directions = 64;    // circle points; n = 3 uses directions x directions/2; n >= 4 uses directions^2 points
    std::size_t mc_samples = 1'000'000;
    std::uint64_t seed = 20240601;
    double target_rel_err = 1e-8;     // deterministic path; refines up to max_refinements times
    double mc_target_rel_err = 1e-3;  // MC path; adds sample batches up to 16x mc_samples
    int max_refinements = 3;
    bool parallel = true;

    void validate() const;
};

enum class Method { Deterministic, MonteCarlo };
std::string_view to_string(Method method);

struct IntegralValue {
    double value = 0.0;
    double abs_err_est = 0.0;
    Method method = Method::Deterministic;
    std::size_t evaluations = 0;
    int refinements = 0;  // deterministic levels beyond the base resolution

    double rel_err() const;
};

/// Gauss-Legendre nodes and weights on [-1, 1]; cached per order.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre(int order);

/// Unit directions on S^{n-1} with weights summing to the sphere area.
struct DirectionRule {
    std::vector<Vec> directions;
    std::vector<double> weights;
};
DirectionRule direction_rule(int dim, int count);

/// omega_n, the volume of the unit n-ball, for 1 <= n <= 6.
double ball_volume(int n);
/// sigma_{n-1} = n * omega_n, the area of the unit sphere S^{n-1}.
double sphere_area(int n);

using Integrand = std::function<double(const Vec&)>;
/// Fills out[c] for each of the components at one node.
using MultiIntegrand = std::function<void(const Vec&, std::span<double>)>;

/// Integrates over a region star-shaped about 0 given its radius function.
/// Each component gets its own value and refinement-based error estimate.
std::vector<IntegralValue> integrate_star_shaped(int dim, const std::function<double(const Vec&)>& radius,
                                                 std::size_t components, const MultiIntegrand& integrand,
                                                 const QuadratureConfig& cfg);

/// Integrand receives tangent-shifted coordinates u.
std::vector<IntegralValue> integrate_region_multi(const SectionRegion& region, std::size_t components,
                                                  const MultiIntegrand& integrand, const QuadratureConfig& cfg);
IntegralValue integrate_region(const SectionRegion& region, const Integrand& integrand, const QuadratureConfig& cfg);

/// Integrand receives absolute coordinates y in B_q(r).
IntegralValue integrate_ball(const Vec& center, double radius, const Integrand& integrand,
                             const QuadratureConfig& cfg);

/// Rejection-sampled estimate over the region's bounding box; abs_err_est is
/// one standard error. Bitwise reproducible for a fixed seed.
std::vector<IntegralValue> mc_integrate_region_multi(const SectionRegion& region, std::size_t components,
                                                     const MultiIntegrand& integrand, const QuadratureConfig& cfg);
IntegralValue mc_integrate_region(const SectionRegion& region, const Integrand& integrand,
                                  const QuadratureConfig& cfg);

}  // namespace hypersect
