#pragma once

#include "hypersect/asymptotics.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hypersect {

/// The constancy conditions. Unstarred ones use the normal offset t, starred
/// ones the vertical offset k; the scaling conditions test V_p(t)/t^{(n+2)/2}
/// and A_p(t)/t^{n/2} for constancy in t at each fixed point.
enum class Condition { A, V, S, VStar, AStar, SStar, VScaling, AScaling };

std::string_view to_string(Condition c);
Condition parse_condition(std::string_view text);
bool is_scaling_condition(Condition c);
bool uses_vertical_offset(Condition c);

enum class Verdict { Holds, Fails, Inconclusive };
std::string_view to_string(Verdict v);

/// Spread runs across points (one entry per offset) or, for the scaling
/// conditions, across offsets (one entry per point).
enum class SpreadAxis { AcrossPoints, AcrossOffsets };

struct ScanOptions {
    QuadratureConfig quad;
    double threshold = 0.0;  // <= 0 means max(1e-5, 20 * worst relative quadrature error)
};

struct ScanReport {
    Condition condition = Condition::A;
    std::vector<SurfacePoint> points;
    std::vector<double> offsets;
    std::vector<std::vector<double>> values;      // [point][offset]
    std::vector<std::vector<double>> abs_errors;  // [point][offset]
    SpreadAxis axis = SpreadAxis::AcrossPoints;
    std::vector<double> spread;
    Verdict verdict = Verdict::Inconclusive;
    double threshold = 0.0;
    double max_rel_quad_err = 0.0;

    double max_spread() const;
};

ScanReport scan_condition(const ConvexSurface& surface, Condition condition, const std::vector<Vec>& points,
                          const std::vector<double>& offsets, const ScanOptions& options = {});

/// (max - min) / |mean|.
double relative_spread(std::span<const double> values);
Verdict verdict_for(std::span<const double> spreads, double threshold);

/// Curvature recovered from a passing scan via the small-offset limit
/// constant at each point.
struct CurvatureInference {
    Condition condition = Condition::VStar;
    std::vector<double> limit_constant;  // alpha, beta, or the unstarred limit, per point
    std::vector<double> curvature;       // inferred K(p)
    std::vector<double> det_hessian;     // K * W^{n+2}
    std::vector<double> analytic_curvature;
    double det_mean = 0.0;
    double det_spread = 0.0;
    double curvature_spread = 0.0;
};

/// Accepts holding scans of A, V, A* or V*.
CurvatureInference infer_curvature(const ScanReport& scan);

/// Deterministic Halton points in the box [-half_width, half_width]^n,
/// starting with the origin.
std::vector<Vec> default_grid(int dim, std::size_t count, double half_width);
/// Box half-width used when none is given: 1 on unbounded domains, 0.3 * radius otherwise.
double default_grid_half_width(const ConvexSurface& surface);

enum class ShapeClass { SphereLike, ParaboloidLike, Neither };
std::string_view to_string(ShapeClass s);

enum class CurvatureSource { Analytic, Measured };

struct ClassifyOptions {
    std::size_t grid_points = 12;
    double half_width = 0.0;  // <= 0 picks default_grid_half_width
    double threshold = 1e-5;
    CurvatureSource source = CurvatureSource::Analytic;
    QuadratureConfig quad;
    LadderConfig ladder;
};

/// Verdict on the sampled grid only.
struct Classification {
    ShapeClass verdict = ShapeClass::Neither;
    std::vector<SurfacePoint> points;
    std::vector<Vec> excluded;  // degenerate points left out
    std::vector<double> curvature;
    std::vector<double> det_hessian;
    double curvature_spread = 0.0;
    double det_spread = 0.0;
    double threshold = 0.0;
    CurvatureSource source = CurvatureSource::Analytic;
};

Classification classify(const ConvexSurface& surface, const ClassifyOptions& options = {});

/// A scalar test function for the mean-value scan.
struct TestFunction {
    std::string name;
    int dim = 0;
    ScalarField fn;
};

/// V(y) = sqrt(1 + 4 sum a_i^2 y_i^2).
TestFunction w_integrand(std::span<const double> coeffs);
/// Harmonic registry: "affine" (3 + y_1) and "harmonic-quadratic" (5 + y_1^2 - y_2^2, n >= 2).
TestFunction registry_test_function(std::string_view name, int dim);

struct MeanValueReport {
    std::string test_fn;
    std::vector<Vec> centers;
    std::vector<double> radii;
    std::vector<std::vector<double>> ratios;  // [center][radius]
    std::vector<double> spread_per_radius;
    double max_deviation_from_one = 0.0;
    double tolerance = 1e-9;
    bool harmonic_verdict = false;
};

/// ratio(q, r) = integral over B_q(r) of fn / (fn(q) * omega_n * r^n).
MeanValueReport mean_value_scan(const TestFunction& test_fn, const std::vector<Vec>& centers,
                                const std::vector<double>& radii, const QuadratureConfig& cfg = {},
                                double tolerance = 1e-9);

struct UTransformCheck {
    std::size_t samples = 0;
    double max_u_residual = 0.0;                 // closed-form U vs ((n-1)V^2 + 1)/V^3
    double max_second_derivative_residual = 0.0; // closed-form V_ii vs central differences, relative
    double u_at_origin = 0.0;
    double v_at_origin = 0.0;
    bool origin_is_v_minimum = false;
    bool origin_is_u_maximum = false;

    double max_residual() const { return std::max(max_u_residual, max_second_derivative_residual); }
};

UTransformCheck u_transform_check(std::span<const double> coeffs, const std::vector<Vec>& samples);

}  // namespace hypersect
