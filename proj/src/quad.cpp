#include "hypersect/quad.hpp"

#include "hypersect/error.hpp"
#include "hypersect/parallel.hpp"
#include "hypersect/random.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace hypersect {

namespace {

constexpr std::size_t kMcChunk = 1u << 16;
constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13};

double radical_inverse(int base, std::uint64_t index) {
    double inv_base = 1.0 / base;
    double factor = inv_base;
    double result = 0.0;
    while (index > 0) {
        result += static_cast<double>(index % base) * factor;
        index /= base;
        factor *= inv_base;
    }
    return result;
}

GaussLegendreRule compute_gauss_legendre(int order) {
    GaussLegendreRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            if (order == 1) p0 = 1.0;
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-16) break;
        }
        // Recompute the derivative at the converged node for the weight.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= order; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        if (order == 1) p0 = 1.0;
        dp = order * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    return rule;
}

struct RawSums {
    std::vector<double> value;
    std::vector<double> magnitude;  // integral of |integrand|, used as the error scale near zero
    std::size_t evaluations = 0;
};

RawSums polar_sum(int dim, const std::function<double(const Vec&)>& radius, std::size_t components,
                  const MultiIntegrand& integrand, int radial_nodes, int directions, bool parallel) {
    const DirectionRule rule = direction_rule(dim, directions);
    const GaussLegendreRule& gl = gauss_legendre(radial_nodes);
    const std::size_t ndir = rule.directions.size();

    std::vector<double> contrib(ndir * components * 2, 0.0);
    parallel_for(
        ndir,
        [&](std::size_t d) {
            const Vec& v = rule.directions[d];
            const double r = radius(v);
            std::vector<double> out(components);
            std::vector<double> acc(components, 0.0);
            std::vector<double> acc_abs(components, 0.0);
            for (int j = 0; j < radial_nodes; ++j) {
                const double s = 0.5 * (gl.nodes[j] + 1.0);
                const double rho = r * s;
                const double jac = 0.5 * gl.weights[j] * std::pow(rho, dim - 1);
                const Vec u = rho * v;
                integrand(u, out);
                for (std::size_t c = 0; c < components; ++c) {
                    if (!std::isfinite(out[c])) {
                        throw Error(ErrorKind::Evaluation, "integrand returned a non-finite value");
                    }
                    acc[c] += jac * out[c];
                    acc_abs[c] += jac * std::abs(out[c]);
                }
            }
            for (std::size_t c = 0; c < components; ++c) {
                contrib[(d * components + c) * 2] = rule.weights[d] * r * acc[c];
                contrib[(d * components + c) * 2 + 1] = rule.weights[d] * r * acc_abs[c];
            }
        },
        parallel);

    RawSums sums;
    sums.value.assign(components, 0.0);
    sums.magnitude.assign(components, 0.0);
    for (std::size_t d = 0; d < ndir; ++d) {
        for (std::size_t c = 0; c < components; ++c) {
            sums.value[c] += contrib[(d * components + c) * 2];
            sums.magnitude[c] += contrib[(d * components + c) * 2 + 1];
        }
    }
    sums.evaluations = ndir * static_cast<std::size_t>(radial_nodes);
    return sums;
}

}  // namespace

void QuadratureConfig::validate() const {
    if (radial_nodes < 2) throw Error(ErrorKind::InvalidParameter, "radial_nodes must be >= 2");
    if (directions < 4) throw Error(ErrorKind::InvalidParameter, "directions must be >= 4");
    if (mc_samples < 2) throw Error(ErrorKind::InvalidParameter, "mc_samples must be >= 2");
    if (!(target_rel_err > 0.0) || !(mc_target_rel_err > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "target relative errors must be positive");
    }
    if (max_refinements < 0) throw Error(ErrorKind::InvalidParameter, "max_refinements must be >= 0");
}

std::string_view to_string(Method method) {
    return method == Method::Deterministic ? "deterministic" : "monte-carlo";
}

double IntegralValue::rel_err() const {
    if (value != 0.0) return abs_err_est / std::abs(value);
    return abs_err_est == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

const GaussLegendreRule& gauss_legendre(int order) {
    if (order < 1) throw Error(ErrorKind::InvalidParameter, "Gauss-Legendre order must be positive");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const GaussLegendreRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[order];
    if (!slot) slot = std::make_unique<const GaussLegendreRule>(compute_gauss_legendre(order));
    return *slot;
}

DirectionRule direction_rule(int dim, int count) {
    if (dim < 1 || dim > kMaxDimension) throw Error(ErrorKind::InvalidParameter, "dimension out of range");
    if (count < 2) throw Error(ErrorKind::InvalidParameter, "direction count must be >= 2");
    DirectionRule rule;
    const double two_pi = 2.0 * std::numbers::pi;

    if (dim == 1) {
        rule.directions = {Vec::Constant(1, 1.0), Vec::Constant(1, -1.0)};
        rule.weights = {1.0, 1.0};
        return rule;
    }
    if (dim == 2) {
        // Trapezoid rule on the circle.
        for (int j = 0; j < count; ++j) {
            const double th = two_pi * j / count;
            Vec v(2);
            v << std::cos(th), std::sin(th);
            rule.directions.push_back(std::move(v));
            rule.weights.push_back(two_pi / count);
        }
        return rule;
    }
    if (dim == 3) {
        // Gauss-Legendre in z = cos(theta) times trapezoid in phi.
        const GaussLegendreRule& gl = gauss_legendre(std::max(2, count / 2));
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double z = gl.nodes[i];
            const double s = std::sqrt(1.0 - z * z);
            for (int j = 0; j < count; ++j) {
                const double ph = two_pi * j / count;
                Vec v(3);
                v << s * std::cos(ph), s * std::sin(ph), z;
                rule.directions.push_back(std::move(v));
                rule.weights.push_back(gl.weights[i] * two_pi / count);
            }
        }
        return rule;
    }

    // Halton points pushed through Box-Muller and normalised.
    const std::size_t total = static_cast<std::size_t>(count) * static_cast<std::size_t>(count);
    const double w = sphere_area(dim) / static_cast<double>(total);
    const int pairs = (dim + 1) / 2;
    for (std::size_t i = 1; i <= total; ++i) {
        Vec g(2 * pairs);
        for (int p = 0; p < pairs; ++p) {
            const double h1 = radical_inverse(kPrimes[2 * p], i);
            const double h2 = radical_inverse(kPrimes[(2 * p + 1) % 6], i);
            const double rad = std::sqrt(-2.0 * std::log(h1));
            g[2 * p] = rad * std::cos(two_pi * h2);
            g[2 * p + 1] = rad * std::sin(two_pi * h2);
        }
        Vec v = g.head(dim);
        v /= v.norm();
        rule.directions.push_back(std::move(v));
        rule.weights.push_back(w);
    }
    return rule;
}

double ball_volume(int n) {
    if (n < 1 || n > kMaxDimension) {
        throw Error(ErrorKind::InvalidParameter, "ball_volume needs 1 <= n <= 6, got " + std::to_string(n));
    }
    return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double sphere_area(int n) { return n * ball_volume(n); }

std::vector<IntegralValue> integrate_star_shaped(int dim, const std::function<double(const Vec&)>& radius,
                                                 std::size_t components, const MultiIntegrand& integrand,
                                                 const QuadratureConfig& cfg) {
    cfg.validate();
    if (components == 0) throw Error(ErrorKind::InvalidParameter, "need at least one integrand component");

    int radial = cfg.radial_nodes;
    int dirs = cfg.directions;
    RawSums coarse = polar_sum(dim, radius, components, integrand, std::max(2, radial / 2), std::max(2, dirs / 2),
                               cfg.parallel);
    RawSums fine = polar_sum(dim, radius, components, integrand, radial, dirs, cfg.parallel);
    std::size_t evaluations = coarse.evaluations + fine.evaluations;

    int level = 0;
    for (;; ++level) {
        bool converged = true;
        for (std::size_t c = 0; c < components; ++c) {
            const double err = std::abs(fine.value[c] - coarse.value[c]);
            const double scale = std::max(std::abs(fine.value[c]), fine.magnitude[c]);
            if (err > cfg.target_rel_err * scale) converged = false;
        }
        if (converged || level >= cfg.max_refinements) break;
        radial *= 2;
        dirs *= 2;
        coarse = std::move(fine);
        fine = polar_sum(dim, radius, components, integrand, radial, dirs, cfg.parallel);
        evaluations += fine.evaluations;
    }

    std::vector<IntegralValue> out(components);
    for (std::size_t c = 0; c < components; ++c) {
        out[c].value = fine.value[c];
        out[c].abs_err_est = std::abs(fine.value[c] - coarse.value[c]);
        out[c].method = Method::Deterministic;
        out[c].evaluations = evaluations;
        out[c].refinements = level;
    }
    return out;
}

std::vector<IntegralValue> integrate_region_multi(const SectionRegion& region, std::size_t components,
                                                  const MultiIntegrand& integrand, const QuadratureConfig& cfg) {
    QuadratureConfig local = cfg;
    local.parallel = cfg.parallel && region.surface().thread_safe();
    return integrate_star_shaped(
        region.dim(), [&](const Vec& v) { return region.boundary_radius(v); }, components, integrand, local);
}

IntegralValue integrate_region(const SectionRegion& region, const Integrand& integrand, const QuadratureConfig& cfg) {
    return integrate_region_multi(
        region, 1, [&](const Vec& u, std::span<double> out) { out[0] = integrand(u); }, cfg)[0];
}

IntegralValue integrate_ball(const Vec& center, double radius, const Integrand& integrand,
                             const QuadratureConfig& cfg) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorKind::InvalidParameter, "ball radius must be positive");
    const int dim = static_cast<int>(center.size());
    if (dim < 1 || dim > kMaxDimension) throw Error(ErrorKind::InvalidParameter, "ball dimension out of range");
    return integrate_star_shaped(
        dim, [radius](const Vec&) { return radius; }, 1,
        [&](const Vec& u, std::span<double> out) { out[0] = integrand(center + u); }, cfg)[0];
}

std::vector<IntegralValue> mc_integrate_region_multi(const SectionRegion& region, std::size_t components,
                                                     const MultiIntegrand& integrand, const QuadratureConfig& cfg) {
    cfg.validate();
    const int n = region.dim();

    // Bounding box from boundary probes, inflated; the region contains 0.
    Vec lo = Vec::Zero(n);
    Vec hi = Vec::Zero(n);
    DirectionRule probes = direction_rule(n, std::max(64, cfg.directions));
    for (int i = 0; i < n; ++i) {
        for (double sign : {1.0, -1.0}) {
            Vec e = Vec::Zero(n);
            e[i] = sign;
            probes.directions.push_back(std::move(e));
        }
    }
    for (const Vec& v : probes.directions) {
        const Vec p = region.boundary_radius(v) * v;
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    lo *= 1.25;
    hi *= 1.25;
    const Vec extent = hi - lo;
    const double box_volume = extent.prod();

    struct ChunkSums {
        std::vector<double> sum;
        std::vector<double> sum_sq;
        std::size_t accepted = 0;
    };

    const bool threads = cfg.parallel && region.surface().thread_safe();
    std::size_t chunk_offset = 0;
    std::vector<double> sum(components, 0.0);
    std::vector<double> sum_sq(components, 0.0);
    std::size_t accepted = 0;
    std::size_t total = 0;
    const std::size_t max_total = 16 * cfg.mc_samples;

    while (true) {
        const std::size_t batch = cfg.mc_samples;
        const std::size_t nchunks = (batch + kMcChunk - 1) / kMcChunk;
        std::vector<ChunkSums> chunks(nchunks);
        parallel_for(
            nchunks,
            [&](std::size_t c) {
                const std::size_t begin = c * kMcChunk;
                const std::size_t count = std::min(kMcChunk, batch - begin);
                Rng rng(cfg.seed, chunk_offset + c);
                ChunkSums& cs = chunks[c];
                cs.sum.assign(components, 0.0);
                cs.sum_sq.assign(components, 0.0);
                std::vector<double> out(components);
                Vec u(n);
                for (std::size_t s = 0; s < count; ++s) {
                    for (int i = 0; i < n; ++i) u[i] = lo[i] + extent[i] * rng.uniform();
                    if (!region.contains(u)) continue;
                    ++cs.accepted;
                    integrand(u, out);
                    for (std::size_t k = 0; k < components; ++k) {
                        if (!std::isfinite(out[k])) {
                            throw Error(ErrorKind::Evaluation, "integrand returned a non-finite value");
                        }
                        cs.sum[k] += out[k];
                        cs.sum_sq[k] += out[k] * out[k];
                    }
                }
            },
            threads);
        for (const auto& cs : chunks) {
            accepted += cs.accepted;
            for (std::size_t k = 0; k < components; ++k) {
                sum[k] += cs.sum[k];
                sum_sq[k] += cs.sum_sq[k];
            }
        }
        total += batch;
        chunk_offset += nchunks;

        if (static_cast<double>(accepted) < 1e-4 * static_cast<double>(total)) {
            throw Error(ErrorKind::IllConditionedRegion,
                        "Monte Carlo acceptance rate " + std::to_string(static_cast<double>(accepted) / total) +
                            " is below 1e-4");
        }

        bool done = total + batch > max_total;
        if (!done) {
            done = true;
            for (std::size_t k = 0; k < components; ++k) {
                const double mean = sum[k] / total;
                const double var = std::max(0.0, sum_sq[k] / total - mean * mean);
                const double se = std::sqrt(var / (total - 1));
                if (se > cfg.mc_target_rel_err * std::abs(mean)) done = false;
            }
        }
        if (done) break;
    }

    std::vector<IntegralValue> out(components);
    for (std::size_t k = 0; k < components; ++k) {
        const double mean = sum[k] / total;
        const double var = std::max(0.0, sum_sq[k] / total - mean * mean);
        out[k].value = box_volume * mean;
        out[k].abs_err_est = box_volume * std::sqrt(var / (total - 1));
        out[k].method = Method::MonteCarlo;
        out[k].evaluations = total;
    }
    return out;
}

IntegralValue mc_integrate_region(const SectionRegion& region, const Integrand& integrand,
                                  const QuadratureConfig& cfg) {
    return mc_integrate_region_multi(
        region, 1, [&](const Vec& u, std::span<double> out) { out[0] = integrand(u); }, cfg)[0];
}

}  // namespace hypersect
