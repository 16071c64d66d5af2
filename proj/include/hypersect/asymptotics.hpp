#pragma once

#include "hypersect/sections.hpp"

#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace hypersect {

enum class Quantity { A, V, S };

std::string_view to_string(Quantity q);
Quantity parse_quantity(std::string_view text);

/// Power of t that normalizes the quantity: n/2 for A and S, (n+2)/2 for V.
double normalizing_power(Quantity q, int n);

/// Geometric ladder t_j = t0 * rho^j. t0 <= 0 picks a default from the surface.
struct LadderConfig {
    double t0 = 0.0;
    double rho = 0.5;
    int rungs = 6;
};

struct LimitEstimate {
    Quantity quantity = Quantity::A;
    double extrapolated = 0.0;
    double uncertainty = 0.0;
    std::vector<std::pair<double, double>> ladder;  // (t, Q(t) / t^pow), t decreasing
    double predicted = 0.0;
    double rel_dev = 0.0;
    std::vector<double> fit;  // c0, c1, c2 of c0 + c1 sqrt(t) + c2 t
};

/// Closed-form small-t limit of Q(t)/t^pow at a point with K(p) > 0.
double lemma8_predicted(const SurfacePoint& point, Quantity quantity);

/// Least-squares fit of the normalized ladder; c0 is the limit estimate.
LimitEstimate lemma8_estimate(const ConvexSurface& surface, const SurfacePoint& point, Quantity quantity,
                              const LadderConfig& ladder = {}, const QuadratureConfig& cfg = {});
/// A, V and S from one shared ladder.
std::vector<LimitEstimate> lemma8_estimate_all(const ConvexSurface& surface, const SurfacePoint& point,
                                               const LadderConfig& ladder = {}, const QuadratureConfig& cfg = {});

/// Fits y(t) = c0 + c1 sqrt(t) + c2 t; returns {c0, c1, c2} and the standard
/// error of c0 through `c0_stderr`.
std::vector<double> fit_sqrt_model(std::span<const std::pair<double, double>> samples, double* c0_stderr = nullptr);

double default_ladder_start(const ConvexSurface& surface, const SurfacePoint& point);

struct HessianFactor {
    Mat a_matrix;  // D^2 f(x0) / 2
    Mat b_matrix;  // symmetric positive root, A = B^t B
    double det_b = 0.0;
    int dim = 0;

    /// omega_n / det B, the small-t limit of A_p(t) / t^{n/2}.
    double area_limit() const;
};

HessianFactor hessian_sqrt_factor(const SurfacePoint& point);

/// Sphere cap of height t on a sphere of radius a in R^{n+1}.
double cap_oracle_sphere(double a, double t, int n, Quantity quantity);

/// alpha_n = 2 sigma_{n-1} / (n (n+2) a_1 ... a_n).
double paraboloid_alpha(std::span<const double> coeffs);

/// Closed forms for z = sum a_i^2 x_i^2. Vertical specs give V*_p(k) and
/// A*_p(k); normal specs give V_p(t) and A_p(t). No closed form for S.
double cap_oracle_paraboloid(std::span<const double> coeffs, const Vec& x0, const SectionSpec& spec,
                             Quantity quantity);

/// One rung of the remainder ladder at a vertex.
struct RemainderRung {
    double t = 0.0;
    double excess_normalized = 0.0;  // N_p(t) / t^{n/2}
    double area_normalized = 0.0;    // A_p(t) / t^{n/2}
    double excess_direct = 0.0;      // N_p(t) from the tangent-frame integrand
};

std::vector<RemainderRung> remainder_ladder(const ConvexSurface& surface, const SurfacePoint& point,
                                            const LadderConfig& ladder, const QuadratureConfig& cfg = {});

}  // namespace hypersect
