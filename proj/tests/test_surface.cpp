#include "hypersect/error.hpp"
#include "hypersect/surface.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <Eigen/LU>

#include <sstream>

using namespace hypersect;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::Inconclusive;
}

}  // namespace

TEST_CASE("paraboloid values and derivatives") {
    const std::vector<double> a = {1.0, 1.0};
    const ConvexSurface s = make_paraboloid(a);
    CHECK(s.dim() == 2);
    CHECK(s.value(v2(1, 0)) == 1.0);
    CHECK(s.gradient(v2(1, 0))[0] == 2.0);
    CHECK(s.gradient(v2(1, 0))[1] == 0.0);

    const SurfacePoint p = point_at(s, v2(1, 0));
    CHECK(p.w == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
    CHECK(p.k_curv == doctest::Approx(0.16).epsilon(1e-14));

    const SurfacePoint vertex = point_at(s, v2(0, 0));
    CHECK(vertex.height == 0.0);
    CHECK(vertex.w == 1.0);
    CHECK(vertex.k_curv == doctest::Approx(4.0).epsilon(1e-15));

    const std::vector<double> b = {1.0, 2.0};
    CHECK(point_at(make_paraboloid(b), v2(0.3, -2.0)).det_hessian == doctest::Approx(16.0).epsilon(1e-14));
}

TEST_CASE("paraboloid rejects bad coefficients") {
    const std::vector<double> bad = {1.0, 0.0};
    CHECK(kind_of([&] { make_paraboloid(bad); }) == ErrorKind::InvalidParameter);
    const std::vector<double> neg = {-1.0};
    CHECK(kind_of([&] { make_paraboloid(neg); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("sphere graph") {
    const ConvexSurface unit = make_sphere_graph(1.0, 2);
    const SurfacePoint pole = point_at(unit, v2(0, 0));
    CHECK(pole.height == 0.0);
    CHECK(pole.k_curv == doctest::Approx(1.0).epsilon(1e-14));

    CHECK(point_at(make_sphere_graph(2.0, 2), v2(0, 0)).k_curv == doctest::Approx(0.25).epsilon(1e-14));

    // |x| = 0.6
    CHECK(point_at(unit, v2(0.36, 0.48)).w == doctest::Approx(1.25).epsilon(1e-14));

    CHECK(kind_of([&] { unit.value(v2(1.0, 0.0)); }) == ErrorKind::Domain);
    CHECK(kind_of([&] { point_at(unit, v2(0.8, 0.7)); }) == ErrorKind::Domain);
    CHECK(kind_of([&] { make_sphere_graph(0.0); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("sphere curvature is constant") {
    for (int n = 1; n <= 4; ++n) {
        for (double a : {0.5, 1.0, 3.0}) {
            const ConvexSurface s = make_sphere_graph(a, n);
            std::mt19937_64 gen(n * 100 + static_cast<int>(a * 10));
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            for (int k = 0; k < 30; ++k) {
                Vec x(n);
                for (int i = 0; i < n; ++i) x[i] = u(gen);
                x *= 0.9 * a * std::pow(std::abs(u(gen)), 1.0 / n) / std::max(1e-12, x.norm());
                const SurfacePoint p = point_at(s, x);
                CHECK(p.k_curv == doctest::Approx(std::pow(a, -n)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("curvature recomputation identity") {
    for (const char* name : {"paraboloid:1,2", "sphere:1,3", "cosh-bowl:2", "exp-bowl:3", "quartic-bowl:2"}) {
        const ConvexSurface s = parse_surface(name);
        Vec x = Vec::Constant(s.dim(), 0.3);
        const SurfacePoint p = point_at(s, x);
        CHECK(p.w >= 1.0);
        CHECK(p.k_curv == doctest::Approx(p.hessian.determinant() / std::pow(p.w, s.dim() + 2)).epsilon(1e-12));
    }
}

TEST_CASE("built-in surfaces satisfy the sampled invariants") {
    for (const char* name : {"paraboloid:1,2", "paraboloid:0.5,1,3", "sphere:1", "sphere:2,3", "cosh-bowl:1", "cosh-bowl:2",
                             "quartic-bowl:2", "exp-bowl:2", "exp-bowl:3"}) {
        CAPTURE(name);
        const ConvexSurface s = parse_surface(name);
        const SurfaceCheck c = check_surface(s, 100, 7, 1.5);
        CHECK(c.symmetric());
        CHECK(c.convex());
        CHECK(c.derivatives_consistent(1e-6));
    }
}

TEST_CASE("strictly convex models have positive curvature") {
    for (const char* name : {"paraboloid:1,2", "sphere:1", "cosh-bowl:2", "exp-bowl:2"}) {
        const ConvexSurface s = parse_surface(name);
        for (double r : {0.0, 0.1, 0.5, 0.8}) {
            const SurfacePoint p = point_at(s, Vec::Constant(2, r / std::sqrt(2.0)));
            CHECK(p.k_curv > 0.0);
            CHECK_FALSE(p.degenerate());
        }
    }
}

TEST_CASE("custom surfaces") {
    const ConvexSurface bowl = make_custom(
        1, [](const Vec& x) { return std::cosh(x[0]) - 1.0; },
        [](const Vec& x) { return Vec::Constant(1, std::sinh(x[0])); },
        [](const Vec& x) { return Mat::Constant(1, 1, std::cosh(x[0])); });
    CHECK(check_surface(bowl, 50).derivatives_consistent());
    CHECK(check_surface(bowl, 50).convex());

    const ConvexSurface quartic = parse_surface("quartic-bowl");
    const SurfacePoint origin = point_at(quartic, v2(0, 0));
    CHECK(origin.k_curv == 0.0);
    CHECK(origin.degenerate());

    const ConvexSurface saddle = make_custom(
        2, [](const Vec& x) { return x[0] * x[0] - x[1] * x[1]; }, [](const Vec& x) { return v2(2 * x[0], -2 * x[1]); },
        [](const Vec&) { return Mat((Mat(2, 2) << 2, 0, 0, -2).finished()); });
    const SurfaceCheck c = check_surface(saddle, 20);
    CHECK_FALSE(c.convex());
    CHECK(c.derivatives_consistent());
}

TEST_CASE("derivatives agree with an independent difference quotient") {
    const ConvexSurface s = parse_surface("exp-bowl:2");
    const Vec x = v2(0.4, -0.7);
    const Vec g = oracle::fd_gradient([&](const Vec& y) { return s.value(y); }, x, 1e-6);
    CHECK((g - s.gradient(x)).norm() < 1e-8);
    for (int i = 0; i < 2; ++i) {
        const Vec hcol = oracle::fd_gradient([&](const Vec& y) { return s.gradient(y)[i]; }, x, 1e-6);
        CHECK((hcol - s.hessian(x).row(i).transpose()).norm() < 1e-7);
    }
}

TEST_CASE("surface spec parsing") {
    CHECK(parse_surface("paraboloid:1,2").name() == "paraboloid:1,2");
    CHECK(parse_surface("sphere:1").dim() == 2);
    CHECK(parse_surface("sphere:1,3").dim() == 3);
    CHECK(parse_surface("cosh-bowl").dim() == 2);
    CHECK(parse_surface("cosh-bowl:3").dim() == 3);
    CHECK(parse_surface(parse_surface("sphere:2,3").name()).name() == "sphere:2,3");
    CHECK(kind_of([] { parse_surface("torus:1"); }) == ErrorKind::InvalidParameter);
    CHECK(kind_of([] { parse_surface("paraboloid:"); }) == ErrorKind::InvalidParameter);
    CHECK(kind_of([] { parse_surface("sphere:1,2.5"); }) == ErrorKind::InvalidParameter);
    CHECK(kind_of([] { parse_surface("cosh-bowl:7"); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("surface config") {
    CHECK(surface_from_config({{"kind", "paraboloid"}, {"coefficients", "1, 2"}}).name() == "paraboloid:1,2");
    CHECK(surface_from_config({{"kind", "sphere"}, {"radius", "2"}, {"dimension", "3"}}).name() == "sphere:2,3");
    CHECK(surface_from_config({{"kind", "named-custom"}, {"name", "exp-bowl"}}).name() == "exp-bowl:2");
    CHECK(kind_of([] { surface_from_config({{"kind", "sphere"}}); }) == ErrorKind::InvalidParameter);
    CHECK(kind_of([] { surface_from_config({{"kind", "sphere"}, {"radius", "1"}, {"dimension", "x"}}); }) ==
          ErrorKind::InvalidParameter);
}
