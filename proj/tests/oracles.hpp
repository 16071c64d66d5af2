#pragma once

// Reference computations written independently of the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

inline double unit_ball_volume(int n) { return std::pow(pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0); }
inline double unit_sphere_area(int n) { return 2.0 * std::pow(pi, n / 2.0) / std::tgamma(n / 2.0); }

/// Composite Simpson on [a, b] with an even panel count.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels = 20000) {
    if (panels % 2) ++panels;
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// Smallest root of a monotone-increasing function on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Sphere cap of height t on the radius-a sphere in R^{n+1}, by slicing.
inline double sphere_cap_volume(double a, double t, int n) {
    // slice at height h = a (1 - cos th), radius a sin th
    const double theta = std::acos(1.0 - t / a);
    return unit_ball_volume(n) * std::pow(a, n + 1) *
           simpson([&](double th) { return std::pow(std::sin(th), n + 1); }, 0.0, theta);
}

inline double sphere_cap_area(double a, double t, int n) {
    const double theta = std::acos(1.0 - t / a);
    return unit_sphere_area(n) * std::pow(a, n) *
           simpson([&](double th) { return std::pow(std::sin(th), n - 1); }, 0.0, theta);
}

inline double sphere_cap_base_area(double a, double t, int n) {
    return unit_ball_volume(n) * std::pow(2 * a * t - t * t, n / 2.0);
}

/// Rejection sampling of the cap {|X| < a, X_z < t - a} of the ball centred at (0,0,a) in R^3.
inline double sphere_cap_volume_mc(double a, double t, std::uint64_t samples, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0), z(0.0, 1.0);
    const double r = std::sqrt(2 * a * t - t * t);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const double x = r * u(gen), y = r * u(gen), h = t * z(gen);
        const double dz = a - h;
        if (x * x + y * y + dz * dz < a * a) ++hits;
    }
    return 4 * r * r * t * static_cast<double>(hits) / static_cast<double>(samples);
}

/// Ball average of sqrt(1 + 4 r^2 |y|^2) at the origin (all a_i = 1), n = 2.
inline double w_ratio_origin(double r) { return (std::pow(1 + 4 * r * r, 1.5) - 1.0) / (6 * r * r); }

inline double paraboloid_alpha(const std::vector<double>& a) {
    const int n = static_cast<int>(a.size());
    double prod = 1.0;
    for (double v : a) prod *= v;
    return 2.0 * unit_sphere_area(n) / (n * (n + 2) * prod);
}

template <class F, class V>
V fd_gradient(const F& f, V x, double h) {
    V g = x;
    for (int i = 0; i < static_cast<int>(x.size()); ++i) {
        V xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        g[i] = (f(xp) - f(xm)) / (2 * h);
    }
    return g;
}

}  // namespace oracle
