#pragma once

#include "hypersect/types.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hypersect {

/// How a surface was made; enough to rebuild it from a config file or a
/// `kind:params` string.
struct SurfaceDescriptor {
    std::string kind;            // paraboloid | sphere | cosh-bowl | quartic-bowl | exp-bowl | custom
    std::vector<double> params;  // coefficients, or {radius}
    int dim = 0;

    std::string to_string() const;
};

/// Graph hypersurface z = f(x) over an open ball of R^n, with exact first and
/// second derivatives. Immutable; copies share the evaluators.
class ConvexSurface {
public:
    ConvexSurface(SurfaceDescriptor descriptor, ScalarField eval, VectorField grad, MatrixField hess,
                  double domain_radius, bool thread_safe = true);

    int dim() const { return impl_->descriptor.dim; }
    const SurfaceDescriptor& descriptor() const { return impl_->descriptor; }
    std::string name() const { return impl_->descriptor.to_string(); }
    double domain_radius() const { return impl_->domain_radius; }
    /// False for evaluators that must not be called concurrently (e.g. Python callbacks).
    bool thread_safe() const { return impl_->thread_safe; }

    bool in_domain(const Vec& x) const;

    // All three throw Error(Domain) outside the open domain ball.
    double value(const Vec& x) const;
    Vec gradient(const Vec& x) const;
    Mat hessian(const Vec& x) const;

private:
    struct Impl {
        SurfaceDescriptor descriptor;
        ScalarField eval;
        VectorField grad;
        MatrixField hess;
        double domain_radius;
        bool thread_safe;
    };

    void require_domain(const Vec& x) const;

    std::shared_ptr<const Impl> impl_;
};

/// Base point on a surface with its cached differential data.
struct SurfacePoint {
    Vec x0;
    double height = 0.0;
    Vec gradient;
    double w = 1.0;  // sqrt(1 + |grad f|^2)
    Mat hessian;
    Vec hessian_eigenvalues;  // ascending
    double det_hessian = 0.0;
    double k_curv = 0.0;  // Gauss-Kronecker curvature, upward normal

    int dim() const { return static_cast<int>(x0.size()); }
    /// Smallest Hessian eigenvalue not above 1e-10 * trace.
    bool degenerate() const;
};

SurfacePoint point_at(const ConvexSurface& surface, const Vec& x0);

ConvexSurface make_paraboloid(std::span<const double> coeffs);
ConvexSurface make_sphere_graph(double radius, int dim = 2);
ConvexSurface make_custom(int dim, ScalarField eval, VectorField grad, MatrixField hess,
                          double domain_radius = std::numeric_limits<double>::infinity(),
                          bool thread_safe = true);

/// Fixed registry of convex test bowls: cosh-bowl, quartic-bowl, exp-bowl.
ConvexSurface named_surface(std::string_view name, int dim = 2);
std::vector<std::string> named_surface_names();

/// Parses `paraboloid:1,2`, `sphere:1` (n = 2), `sphere:1,3` (radius 1, n = 3),
/// `cosh-bowl`, `cosh-bowl:3`.
ConvexSurface parse_surface(std::string_view text);

/// Builds a surface from key-value config entries (kind, coefficients, radius, dimension).
ConvexSurface surface_from_config(const std::map<std::string, std::string>& entries);
ConvexSurface load_surface_config(const std::string& path);

/// Sampled validation of the ConvexSurface invariants.
struct SurfaceCheck {
    std::size_t samples = 0;
    double max_asymmetry = 0.0;
    double min_eigenvalue = std::numeric_limits<double>::infinity();
    double max_gradient_error = 0.0;  // relative to max(1, |grad|)
    double max_hessian_error = 0.0;   // relative to max(1, |H_ij|)
    Vec worst_convexity_point;

    bool symmetric() const { return max_asymmetry <= 1e-12; }
    bool convex() const { return min_eigenvalue >= -1e-10; }
    bool derivatives_consistent(double rel_tol = 1e-6) const {
        return max_gradient_error <= rel_tol && max_hessian_error <= rel_tol;
    }
};

/// Samples points uniformly in the ball of radius min(box, 0.9 * domain_radius).
SurfaceCheck check_surface(const ConvexSurface& surface, std::size_t samples = 100,
                           std::uint64_t seed = 1, double box = 1.5);

}  // namespace hypersect
