#include "hypersect/surface.hpp"

#include "hypersect/config.hpp"
#include "hypersect/error.hpp"
#include "hypersect/random.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>

namespace hypersect {

namespace {

void require_dimension(int dim) {
    if (dim < 1 || dim > kMaxDimension) {
        throw Error(ErrorKind::InvalidParameter,
                    "dimension must be in [1, " + std::to_string(kMaxDimension) + "], got " + std::to_string(dim));
    }
}

}  // namespace

std::string SurfaceDescriptor::to_string() const {
    std::ostringstream os;
    os << kind;
    if (kind == "paraboloid") {
        os << ':' << format_doubles(params);
    } else if (kind == "sphere") {
        os << ':' << format_doubles(params) << ',' << dim;
    } else {
        os << ':' << dim;
    }
    return os.str();
}

ConvexSurface::ConvexSurface(SurfaceDescriptor descriptor, ScalarField eval, VectorField grad, MatrixField hess,
                             double domain_radius, bool thread_safe) {
    require_dimension(descriptor.dim);
    if (!(domain_radius > 0.0)) throw Error(ErrorKind::InvalidParameter, "domain radius must be positive");
    if (!eval || !grad || !hess) throw Error(ErrorKind::InvalidParameter, "surface evaluators must be callable");
    impl_ = std::make_shared<const Impl>(Impl{std::move(descriptor), std::move(eval), std::move(grad),
                                              std::move(hess), domain_radius, thread_safe});
}

bool ConvexSurface::in_domain(const Vec& x) const {
    return x.size() == dim() && x.norm() < impl_->domain_radius;
}

void ConvexSurface::require_domain(const Vec& x) const {
    if (x.size() != dim()) {
        throw Error(ErrorKind::InvalidParameter,
                    "point has dimension " + std::to_string(x.size()) + ", surface has " + std::to_string(dim()));
    }
    if (!(x.norm() < impl_->domain_radius)) {
        throw Error(ErrorKind::Domain, "point (" + format_point(x) + ") outside domain radius " +
                                           std::to_string(impl_->domain_radius) + " of " + name());
    }
}

double ConvexSurface::value(const Vec& x) const {
    require_domain(x);
    return impl_->eval(x);
}

Vec ConvexSurface::gradient(const Vec& x) const {
    require_domain(x);
    return impl_->grad(x);
}

Mat ConvexSurface::hessian(const Vec& x) const {
    require_domain(x);
    return impl_->hess(x);
}

bool SurfacePoint::degenerate() const {
    const double trace = hessian.trace();
    return !(trace > 0.0) || hessian_eigenvalues.minCoeff() <= 1e-10 * trace;
}

SurfacePoint point_at(const ConvexSurface& surface, const Vec& x0) {
    SurfacePoint p;
    p.x0 = x0;
    p.height = surface.value(x0);
    p.gradient = surface.gradient(x0);
    p.w = std::sqrt(1.0 + p.gradient.squaredNorm());
    p.hessian = surface.hessian(x0);
    Eigen::SelfAdjointEigenSolver<Mat> eig(p.hessian, Eigen::EigenvaluesOnly);
    p.hessian_eigenvalues = eig.eigenvalues();
    p.det_hessian = p.hessian_eigenvalues.prod();
    p.k_curv = p.det_hessian / std::pow(p.w, surface.dim() + 2);
    return p;
}

ConvexSurface make_paraboloid(std::span<const double> coeffs) {
    if (coeffs.empty()) throw Error(ErrorKind::InvalidParameter, "paraboloid needs at least one coefficient");
    for (double a : coeffs) {
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw Error(ErrorKind::InvalidParameter, "paraboloid coefficients must be positive, got " + std::to_string(a));
        }
    }
    const int n = static_cast<int>(coeffs.size());
    require_dimension(n);
    Vec sq(n);
    for (int i = 0; i < n; ++i) sq[i] = coeffs[i] * coeffs[i];
    SurfaceDescriptor desc{"paraboloid", std::vector<double>(coeffs.begin(), coeffs.end()), n};
    return ConvexSurface(
        std::move(desc), [sq](const Vec& x) { return sq.dot(x.cwiseProduct(x)); },
        [sq](const Vec& x) -> Vec { return 2.0 * sq.cwiseProduct(x); },
        [sq](const Vec&) -> Mat { return Mat((2.0 * sq).asDiagonal()); }, std::numeric_limits<double>::infinity());
}

ConvexSurface make_sphere_graph(double radius, int dim) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw Error(ErrorKind::InvalidParameter, "sphere radius must be positive");
    }
    require_dimension(dim);
    const double a2 = radius * radius;
    SurfaceDescriptor desc{"sphere", {radius}, dim};
    // Lower hemisphere of the sphere centred at (0, a), touching the origin.
    return ConvexSurface(
        std::move(desc), [radius, a2](const Vec& x) { return radius - std::sqrt(a2 - x.squaredNorm()); },
        [a2](const Vec& x) -> Vec { return x / std::sqrt(a2 - x.squaredNorm()); },
        [a2, dim](const Vec& x) -> Mat {
            const double s = std::sqrt(a2 - x.squaredNorm());
            Mat h = Mat::Identity(dim, dim) / s;
            h.noalias() += x * x.transpose() / (s * s * s);
            return h;
        },
        radius);
}

ConvexSurface make_custom(int dim, ScalarField eval, VectorField grad, MatrixField hess, double domain_radius,
                          bool thread_safe) {
    SurfaceDescriptor desc{"custom", {}, dim};
    return ConvexSurface(std::move(desc), std::move(eval), std::move(grad), std::move(hess), domain_radius,
                         thread_safe);
}

std::vector<std::string> named_surface_names() { return {"cosh-bowl", "quartic-bowl", "exp-bowl"}; }

ConvexSurface named_surface(std::string_view name, int dim) {
    require_dimension(dim);
    const double inf = std::numeric_limits<double>::infinity();
    if (name == "cosh-bowl") {
        // f = sum cosh(x_i) - n
        return ConvexSurface(
            SurfaceDescriptor{"cosh-bowl", {}, dim},
            [dim](const Vec& x) { return x.array().cosh().sum() - dim; },
            [](const Vec& x) -> Vec { return x.array().sinh().matrix(); },
            [](const Vec& x) -> Mat { return Mat(x.array().cosh().matrix().asDiagonal()); }, inf);
    }
    if (name == "quartic-bowl") {
        // f = sum x_i^4, degenerate vertex at the origin
        return ConvexSurface(
            SurfaceDescriptor{"quartic-bowl", {}, dim},
            [](const Vec& x) { return x.array().square().square().sum(); },
            [](const Vec& x) -> Vec { return (4.0 * x.array().cube()).matrix(); },
            [](const Vec& x) -> Mat { return Mat((12.0 * x.array().square()).matrix().asDiagonal()); }, inf);
    }
    if (name == "exp-bowl") {
        // f = exp(|x|^2 / 2) - 1, same vertex curvature as the unit sphere
        return ConvexSurface(
            SurfaceDescriptor{"exp-bowl", {}, dim},
            [](const Vec& x) { return std::expm1(0.5 * x.squaredNorm()); },
            [](const Vec& x) -> Vec { return std::exp(0.5 * x.squaredNorm()) * x; },
            [dim](const Vec& x) -> Mat {
                const double e = std::exp(0.5 * x.squaredNorm());
                return e * (Mat::Identity(dim, dim) + x * x.transpose());
            },
            inf);
    }
    throw Error(ErrorKind::InvalidParameter, "unknown named surface '" + std::string(name) + "'");
}

ConvexSurface parse_surface(std::string_view text) {
    const std::string spec = trim(text);
    const auto colon = spec.find(':');
    const std::string kind = trim(std::string_view(spec).substr(0, colon));
    const std::string rest = colon == std::string::npos ? std::string() : trim(std::string_view(spec).substr(colon + 1));

    if (kind == "paraboloid") {
        if (rest.empty()) throw Error(ErrorKind::InvalidParameter, "paraboloid needs coefficients, e.g. paraboloid:1,1");
        const auto coeffs = parse_doubles(rest);
        return make_paraboloid(coeffs);
    }
    if (kind == "sphere") {
        if (rest.empty()) throw Error(ErrorKind::InvalidParameter, "sphere needs a radius, e.g. sphere:1");
        const auto params = parse_doubles(rest);
        if (params.size() > 2) throw Error(ErrorKind::InvalidParameter, "sphere takes radius[,dimension]");
        const int dim = params.size() == 2 ? static_cast<int>(params[1]) : 2;
        if (params.size() == 2 && static_cast<double>(dim) != params[1]) {
            throw Error(ErrorKind::InvalidParameter, "sphere dimension must be an integer");
        }
        return make_sphere_graph(params[0], dim);
    }
    for (const auto& named : named_surface_names()) {
        if (kind == named) {
            int dim = 2;
            if (!rest.empty()) {
                const auto params = parse_doubles(rest);
                if (params.size() != 1 || params[0] != std::floor(params[0])) {
                    throw Error(ErrorKind::InvalidParameter, kind + " takes a single integer dimension");
                }
                dim = static_cast<int>(params[0]);
            }
            return named_surface(kind, dim);
        }
    }
    throw Error(ErrorKind::InvalidParameter, "unknown surface kind '" + kind + "'");
}

ConvexSurface surface_from_config(const std::map<std::string, std::string>& entries) {
    const auto get = [&](const std::string& key) -> std::string {
        const auto it = entries.find(key);
        return it == entries.end() ? std::string() : it->second;
    };
    const std::string kind = get("kind");
    if (kind.empty()) throw Error(ErrorKind::InvalidParameter, "surface config needs 'kind'");
    const std::string dim_text = get("dimension");
    int dim = 2;
    if (!dim_text.empty()) {
        const auto d = parse_doubles(dim_text);
        if (d.size() != 1 || d[0] != std::floor(d[0])) throw Error(ErrorKind::InvalidParameter, "dimension must be an integer");
        dim = static_cast<int>(d[0]);
    }

    if (kind == "paraboloid") {
        const std::string coeffs = get("coefficients");
        if (coeffs.empty()) throw Error(ErrorKind::InvalidParameter, "paraboloid config needs 'coefficients'");
        return make_paraboloid(parse_doubles(coeffs));
    }
    if (kind == "sphere") {
        const std::string radius = get("radius");
        if (radius.empty()) throw Error(ErrorKind::InvalidParameter, "sphere config needs 'radius'");
        return make_sphere_graph(parse_doubles(radius).at(0), dim);
    }
    if (kind == "named-custom") {
        const std::string name = get("name");
        if (name.empty()) throw Error(ErrorKind::InvalidParameter, "named-custom config needs 'name'");
        return named_surface(name, dim);
    }
    // Registry names are also accepted directly as the kind.
    return named_surface(kind, dim);
}

ConvexSurface load_surface_config(const std::string& path) {
    return surface_from_config(read_key_value_file(path));
}

SurfaceCheck check_surface(const ConvexSurface& surface, std::size_t samples, std::uint64_t seed, double box) {
    const int n = surface.dim();
    const double radius = std::min(box, 0.9 * surface.domain_radius());
    Rng rng(seed, 0x5f);
    SurfaceCheck check;
    check.samples = samples;
    check.worst_convexity_point = Vec::Zero(n);

    for (std::size_t s = 0; s < samples; ++s) {
        Vec dir(n);
        for (int i = 0; i < n; ++i) {
            // Box-Muller
            const double u1 = 1.0 - rng.uniform();
            const double u2 = rng.uniform();
            dir[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        }
        const double len = dir.norm();
        if (len == 0.0) continue;
        const Vec x = dir / len * radius * std::pow(rng.uniform(), 1.0 / n);

        const Mat h = surface.hessian(x);
        check.max_asymmetry = std::max(check.max_asymmetry, (h - h.transpose()).cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (h + h.transpose()), Eigen::EigenvaluesOnly);
        if (eig.eigenvalues()[0] < check.min_eigenvalue) {
            check.min_eigenvalue = eig.eigenvalues()[0];
            check.worst_convexity_point = x;
        }

        const double step = 1e-5 * (1.0 + x.norm());
        const Vec g = surface.gradient(x);
        for (int i = 0; i < n; ++i) {
            Vec xp = x, xm = x;
            xp[i] += step;
            xm[i] -= step;
            const double fd = (surface.value(xp) - surface.value(xm)) / (2.0 * step);
            check.max_gradient_error =
                std::max(check.max_gradient_error, std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i])));
            const Vec dg = (surface.gradient(xp) - surface.gradient(xm)) / (2.0 * step);
            for (int j = 0; j < n; ++j) {
                check.max_hessian_error =
                    std::max(check.max_hessian_error, std::abs(dg[j] - h(j, i)) / std::max(1.0, std::abs(h(j, i))));
            }
        }
    }
    return check;
}

}  // namespace hypersect
