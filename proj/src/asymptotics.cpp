#include "hypersect/asymptotics.hpp"

#include "hypersect/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace hypersect {

namespace {

constexpr int kOracleOrder = 64;
constexpr int kMaxShrinks = 8;

void require_nondegenerate(const SurfacePoint& point) {
    if (point.degenerate() || !(point.k_curv > 0.0)) {
        throw Error(ErrorKind::DegenerateCurvature,
                    "Gauss-Kronecker curvature vanishes (K = " + std::to_string(point.k_curv) +
                        "); the small-section limits need K(p) > 0");
    }
}

void validate_ladder(const LadderConfig& ladder) {
    if (ladder.rungs < 4) throw Error(ErrorKind::InvalidParameter, "ladder needs at least 4 rungs");
    if (!(ladder.rho > 0.0 && ladder.rho < 1.0)) throw Error(ErrorKind::InvalidParameter, "ladder ratio must be in (0,1)");
}

/// Integral of fn over [lo, hi] with the cached high-order rule.
template <typename Fn>
double gl_integrate(Fn fn, double lo, double hi) {
    const GaussLegendreRule& gl = gauss_legendre(kOracleOrder);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double sum = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) sum += gl.weights[i] * fn(mid + half * gl.nodes[i]);
    return half * sum;
}

/// Runs one measurement per rung; shrinks t0 on unbounded or out-of-domain sections.
std::vector<SectionMeasure> run_ladder(const ConvexSurface& surface, const SurfacePoint& point,
                                       const LadderConfig& ladder, const QuadratureConfig& cfg) {
    validate_ladder(ladder);
    double t0 = ladder.t0 > 0.0 ? ladder.t0 : default_ladder_start(surface, point);
    for (int attempt = 0;; ++attempt) {
        try {
            std::vector<SectionMeasure> rungs;
            double t = t0;
            for (int j = 0; j < ladder.rungs; ++j, t *= ladder.rho) {
                rungs.push_back(local_frame_measures(surface, point, t, cfg));
            }
            return rungs;
        } catch (const Error& e) {
            const bool shrinkable = e.kind() == ErrorKind::RegionUnbounded || e.kind() == ErrorKind::Domain;
            if (!shrinkable || attempt >= kMaxShrinks) throw;
            t0 *= 0.5;
        }
    }
}

const IntegralValue& pick(const SectionMeasure& m, Quantity q) {
    switch (q) {
        case Quantity::A: return m.a_loc;
        case Quantity::V: return m.v_loc;
        case Quantity::S: return m.s_loc;
    }
    return m.a_loc;
}

LimitEstimate estimate_from_rungs(const std::vector<SectionMeasure>& rungs, const SurfacePoint& point, Quantity q) {
    const int n = point.dim();
    const double pw = normalizing_power(q, n);
    LimitEstimate est;
    est.quantity = q;
    double quad_err = 0.0;
    for (const auto& m : rungs) {
        const double scale = std::pow(m.t, pw);
        const IntegralValue& v = pick(m, q);
        est.ladder.emplace_back(m.t, v.value / scale);
        quad_err = std::max(quad_err, v.abs_err_est / scale);
    }
    double c0_stderr = 0.0;
    est.fit = fit_sqrt_model(est.ladder, &c0_stderr);
    est.extrapolated = est.fit[0];
    est.uncertainty = c0_stderr + quad_err;
    est.predicted = lemma8_predicted(point, q);
    est.rel_dev = std::abs(est.extrapolated - est.predicted) / est.predicted;
    return est;
}

}  // namespace

std::string_view to_string(Quantity q) {
    switch (q) {
        case Quantity::A: return "A";
        case Quantity::V: return "V";
        case Quantity::S: return "S";
    }
    return "?";
}

Quantity parse_quantity(std::string_view text) {
    if (text == "A" || text == "a") return Quantity::A;
    if (text == "V" || text == "v") return Quantity::V;
    if (text == "S" || text == "s") return Quantity::S;
    throw Error(ErrorKind::InvalidParameter, "quantity must be A, V or S, got '" + std::string(text) + "'");
}

double normalizing_power(Quantity q, int n) { return q == Quantity::V ? 0.5 * (n + 2) : 0.5 * n; }

double lemma8_predicted(const SurfacePoint& point, Quantity quantity) {
    require_nondegenerate(point);
    const int n = point.dim();
    const double omega = ball_volume(n);
    const double root_k = std::sqrt(point.k_curv);
    if (quantity == Quantity::V) return std::pow(2.0, 0.5 * (n + 2)) * omega / ((n + 2) * root_k);
    return std::pow(2.0, 0.5 * n) * omega / root_k;
}

double default_ladder_start(const ConvexSurface& surface, const SurfacePoint& point) {
    const double reach = std::min(1.0, surface.domain_radius());
    const double lambda_max = point.hessian_eigenvalues.size() ? point.hessian_eigenvalues.maxCoeff() : 0.0;
    return 0.02 * reach / std::max(1.0, 0.5 * lambda_max);
}

std::vector<double> fit_sqrt_model(std::span<const std::pair<double, double>> samples, double* c0_stderr) {
    const auto m = static_cast<Eigen::Index>(samples.size());
    if (m < 3) throw Error(ErrorKind::InvalidParameter, "fit needs at least 3 samples");
    Mat design(m, 3);
    Vec y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double t = samples[i].first;
        design(i, 0) = 1.0;
        design(i, 1) = std::sqrt(t);
        design(i, 2) = t;
        y[i] = samples[i].second;
    }
    const Vec coef = design.colPivHouseholderQr().solve(y);
    if (c0_stderr) {
        *c0_stderr = 0.0;
        if (m > 3) {
            const double rss = (design * coef - y).squaredNorm();
            const Mat cov = (design.transpose() * design).inverse();
            *c0_stderr = std::sqrt(rss / static_cast<double>(m - 3) * std::max(0.0, cov(0, 0)));
        }
    }
    return {coef[0], coef[1], coef[2]};
}

LimitEstimate lemma8_estimate(const ConvexSurface& surface, const SurfacePoint& point, Quantity quantity,
                              const LadderConfig& ladder, const QuadratureConfig& cfg) {
    require_nondegenerate(point);
    return estimate_from_rungs(run_ladder(surface, point, ladder, cfg), point, quantity);
}

std::vector<LimitEstimate> lemma8_estimate_all(const ConvexSurface& surface, const SurfacePoint& point,
                                               const LadderConfig& ladder, const QuadratureConfig& cfg) {
    require_nondegenerate(point);
    const auto rungs = run_ladder(surface, point, ladder, cfg);
    return {estimate_from_rungs(rungs, point, Quantity::A), estimate_from_rungs(rungs, point, Quantity::V),
            estimate_from_rungs(rungs, point, Quantity::S)};
}

double HessianFactor::area_limit() const { return ball_volume(dim) / det_b; }

HessianFactor hessian_sqrt_factor(const SurfacePoint& point) {
    HessianFactor f;
    f.dim = point.dim();
    f.a_matrix = 0.5 * point.hessian;
    Eigen::SelfAdjointEigenSolver<Mat> eig(f.a_matrix);
    const Vec& lambda = eig.eigenvalues();
    if (!(lambda[0] > 1e-10 * f.a_matrix.trace())) {
        throw Error(ErrorKind::DegenerateCurvature, "Hessian is not positive definite at x0");
    }
    const Vec root = lambda.cwiseSqrt();
    f.b_matrix = eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
    f.det_b = root.prod();
    return f;
}

double cap_oracle_sphere(double a, double t, int n, Quantity quantity) {
    if (!(a > 0.0)) throw Error(ErrorKind::InvalidParameter, "sphere radius must be positive");
    if (!(t > 0.0) || !(t < a)) throw Error(ErrorKind::Domain, "cap height must satisfy 0 < t < a");
    const double omega = ball_volume(n);
    switch (quantity) {
        case Quantity::A:
            return omega * std::pow(2.0 * a * t - t * t, 0.5 * n);
        case Quantity::V:
            if (n == 2) return std::numbers::pi * t * t * (a - t / 3.0);
            // V = omega * int_0^t (2as - s^2)^{n/2} ds, with s = t u^2
            return omega * 2.0 * std::pow(t, 0.5 * n + 1.0) *
                   gl_integrate([&](double u) { return std::pow(u, n + 1) * std::pow(2.0 * a - t * u * u, 0.5 * n); },
                                0.0, 1.0);
        case Quantity::S: {
            if (n == 2) return 2.0 * std::numbers::pi * a * t;
            const double theta = std::acos(1.0 - t / a);
            return sphere_area(n) * std::pow(a, n) *
                   gl_integrate([&](double phi) { return std::pow(std::sin(phi), n - 1); }, 0.0, theta);
        }
    }
    return 0.0;
}

double paraboloid_alpha(std::span<const double> coeffs) {
    const int n = static_cast<int>(coeffs.size());
    double prod = 1.0;
    for (double a : coeffs) prod *= a;
    return 2.0 * sphere_area(n) / (n * (n + 2) * prod);
}

double cap_oracle_paraboloid(std::span<const double> coeffs, const Vec& x0, const SectionSpec& spec,
                             Quantity quantity) {
    const int n = static_cast<int>(coeffs.size());
    if (x0.size() != n) throw Error(ErrorKind::InvalidParameter, "point dimension does not match coefficients");
    if (!(spec.magnitude > 0.0)) throw Error(ErrorKind::InvalidParameter, "section offset must be positive");
    if (quantity == Quantity::S) throw Error(ErrorKind::InvalidParameter, "no closed form for the lateral area");
    double grad_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a2 = coeffs[i] * coeffs[i];
        grad_sq += 4.0 * a2 * a2 * x0[i] * x0[i];
    }
    const double w = std::sqrt(1.0 + grad_sq);
    const double alpha = paraboloid_alpha(coeffs);
    const double m = spec.magnitude;
    if (spec.mode == OffsetMode::Vertical) {
        if (quantity == Quantity::V) return alpha * std::pow(m, 0.5 * (n + 2));
        return 0.5 * (n + 2) * alpha * w * std::pow(m, 0.5 * n);
    }
    const double wt = std::pow(w, 0.5 * (n + 2));
    if (quantity == Quantity::V) return alpha * wt * std::pow(m, 0.5 * (n + 2));
    return 0.5 * (n + 2) * alpha * wt * std::pow(m, 0.5 * n);
}

std::vector<RemainderRung> remainder_ladder(const ConvexSurface& surface, const SurfacePoint& point,
                                            const LadderConfig& ladder, const QuadratureConfig& cfg) {
    validate_ladder(ladder);
    const double t0 = ladder.t0 > 0.0 ? ladder.t0 : default_ladder_start(surface, point);
    const double pw = 0.5 * point.dim();
    std::vector<RemainderRung> out;
    double t = t0;
    for (int j = 0; j < ladder.rungs; ++j, t *= ladder.rho) {
        const SectionMeasure m = local_frame_measures(surface, point, t, cfg);
        RemainderRung rung;
        rung.t = t;
        rung.excess_normalized = m.n_loc.value / std::pow(t, pw);
        rung.area_normalized = m.a_loc.value / std::pow(t, pw);
        rung.excess_direct = excess_at_vertex(surface, point, t, cfg).value;
        out.push_back(rung);
    }
    return out;
}

}  // namespace hypersect
