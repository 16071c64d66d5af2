#include "hypersect/asymptotics.hpp"
#include "hypersect/error.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace hypersect;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

const std::vector<double> a11 = {1.0, 1.0};

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

TEST_CASE("starred functionals on the paraboloid") {
    const ConvexSurface s = make_paraboloid(a11);
    const SurfacePoint vertex = point_at(s, v2(0, 0));
    const SurfacePoint off = point_at(s, v2(1, 0));
    CHECK(area_star(s, vertex, 1.0).value == doctest::Approx(oracle::pi).epsilon(1e-12));
    CHECK(area_star(s, off, 1.0).value == doctest::Approx(std::sqrt(5.0) * oracle::pi).epsilon(1e-12));
    CHECK(volume_star(s, vertex, 1.0).value == doctest::Approx(oracle::pi / 2).epsilon(1e-12));
    CHECK(volume_star(s, off, 1.0).value == doctest::Approx(oracle::pi / 2).epsilon(1e-12));
    CHECK(area_star(s, off, 1e-10).value < 1e-8);

    // S* at the vertex: pi/6 ((1 + 4k)^{3/2} - 1)
    const double k = 0.7;
    CHECK(surface_star(s, vertex, k).value ==
          doctest::Approx(oracle::pi / 6 * (std::pow(1 + 4 * k, 1.5) - 1)).epsilon(1e-10));
}

TEST_CASE("sphere cap measures") {
    const ConvexSurface s = make_sphere_graph(1.0, 2);
    const SurfacePoint pole = point_at(s, v2(0, 0));
    const SectionMeasure m = local_frame_measures(s, pole, 0.5);
    CHECK(m.v_loc.value == doctest::Approx(5.0 * oracle::pi / 24).epsilon(1e-10));
    CHECK(m.s_loc.value == doctest::Approx(oracle::pi).epsilon(1e-10));
    CHECK(m.a_loc.value == doctest::Approx(0.75 * oracle::pi).epsilon(1e-10));

    // brute-force 3-d sampling of the cap volume
    const double mc = oracle::sphere_cap_volume_mc(1.0, 0.5, 2'000'000, 17);
    CHECK(std::abs(mc - 5.0 * oracle::pi / 24) < 3e-3);

    for (int n = 1; n <= 3; ++n) {
        const ConvexSurface sn = make_sphere_graph(1.5, n);
        const SectionMeasure mn = local_frame_measures(sn, point_at(sn, Vec::Zero(n)), 0.4);
        CHECK(mn.v_loc.value == doctest::Approx(oracle::sphere_cap_volume(1.5, 0.4, n)).epsilon(1e-9));
        CHECK(mn.s_loc.value == doctest::Approx(oracle::sphere_cap_area(1.5, 0.4, n)).epsilon(1e-9));
        CHECK(mn.a_loc.value == doctest::Approx(oracle::sphere_cap_base_area(1.5, 0.4, n)).epsilon(1e-10));
    }
}

TEST_CASE("archimedes off the pole") {
    const ConvexSurface s = make_sphere_graph(2.0, 2);
    for (const Vec& x : {v2(0.3, 0.1), v2(-0.4, 0.2)}) {
        const SectionMeasure m = local_frame_measures(s, point_at(s, x), 0.3);
        CHECK(m.s_loc.value == doctest::Approx(2 * oracle::pi * 2.0 * 0.3).epsilon(1e-8));
        CHECK(m.v_loc.value == doctest::Approx(oracle::pi * 0.09 * (2.0 - 0.1)).epsilon(1e-8));
    }
}

TEST_CASE("frame identities") {
    const ConvexSurface s = make_paraboloid(a11);
    const SurfacePoint p = point_at(s, v2(1, 0));
    const SectionMeasure m = local_frame_measures(s, p, 1.0 / std::sqrt(5.0));
    CHECK(m.k == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m.v_loc.value == doctest::Approx(oracle::pi / 2).epsilon(1e-12));

    for (const char* name : {"cosh-bowl:2", "exp-bowl:2", "sphere:1,3"}) {
        const ConvexSurface c = parse_surface(name);
        const SurfacePoint q = point_at(c, Vec::Constant(c.dim(), 0.1));
        const double k = 0.3;
        const SectionMeasure byk = measure_section(c, q, SectionSpec::vertical(k));
        const SectionMeasure byt = measure_section(c, q, SectionSpec::normal(k / q.w));
        CHECK(byk.v_star.value == doctest::Approx(byt.v_loc.value).epsilon(1e-10));
        CHECK(byk.v_star.value == byk.v_loc.value);
        CHECK(byk.s_star.value == byk.s_loc.value);
        // decomposition S = A + N
        CHECK(std::abs(byk.s_loc.value - byk.a_loc.value - byk.n_loc.value) <=
              byk.s_loc.abs_err_est + byk.a_loc.abs_err_est + byk.n_loc.abs_err_est + 1e-14);
        CHECK(byk.n_loc.value >= 0.0);
        // projection identity
        CHECK(byk.a_star.value == doctest::Approx(q.w * star_measures(c, q, k).projected.value).epsilon(1e-14));
    }
}

TEST_CASE("monotone in k") {
    for (const char* name : {"paraboloid:1,2", "sphere:1", "cosh-bowl:2", "quartic-bowl:2"}) {
        const ConvexSurface s = parse_surface(name);
        const SurfacePoint p = point_at(s, Vec::Constant(2, 0.1));
        double a = 0, v = 0, su = 0;
        for (double k : {0.05, 0.1, 0.2, 0.4}) {
            const StarMeasures m = star_measures(s, p, k);
            CHECK(m.area.value > a);
            CHECK(m.volume.value > v);
            CHECK(m.surface.value > su);
            a = m.area.value;
            v = m.volume.value;
            su = m.surface.value;
        }
    }
}

TEST_CASE("paraboloid scaling laws") {
    const std::vector<double> a = {0.8, 1.5};
    const ConvexSurface s = make_paraboloid(a);
    const SurfacePoint p = point_at(s, v2(0.5, -0.3));
    const StarMeasures one = star_measures(s, p, 1.0);
    for (double k : {0.25, 2.0, 3.7}) {
        const StarMeasures m = star_measures(s, p, k);
        CHECK(m.volume.value == doctest::Approx(one.volume.value * std::pow(k, 2.0)).epsilon(1e-8));
        CHECK(m.area.value == doctest::Approx(one.area.value * k).epsilon(1e-8));
    }
}

TEST_CASE("volume derivative") {
    const ConvexSurface s = make_paraboloid(a11);
    const DerivativeCheck d = dv_dt_check(s, point_at(s, v2(0, 0)), 1.0, 1e-3);
    CHECK(d.dv_dt == doctest::Approx(oracle::pi).epsilon(1e-9));
    CHECK(d.area == doctest::Approx(oracle::pi).epsilon(1e-12));

    const ConvexSurface sphere = make_sphere_graph(1.0, 2);
    const DerivativeCheck e = dv_dt_check(sphere, point_at(sphere, v2(0, 0)), 0.5, 1e-4);
    CHECK(e.area == doctest::Approx(0.75 * oracle::pi).epsilon(1e-10));
    CHECK(e.rel_discrepancy() <= 1e-5);

    for (const char* name : {"cosh-bowl:2", "exp-bowl:3", "quartic-bowl:2", "paraboloid:1,2,3"}) {
        const ConvexSurface c = parse_surface(name);
        const double h = 1e-4;
        const DerivativeCheck dc = dv_dt_check(c, point_at(c, Vec::Constant(c.dim(), 0.2)), 0.3, h);
        CHECK(std::abs(dc.dv_dt - dc.area) <= std::max(5 * h * h * dc.area, 10 * dc.quadrature_err) + 1e-9 * dc.area);
    }
    CHECK(kind_of([&] { dv_dt_check(s, point_at(s, v2(0, 0)), 1.0, 0.3); }) == ErrorKind::Precondition);
}

TEST_CASE("vertex excess") {
    const ConvexSurface s = make_paraboloid(a11);
    const SurfacePoint vertex = point_at(s, v2(0, 0));
    const SectionMeasure m = local_frame_measures(s, vertex, 0.5);
    const IntegralValue direct = excess_at_vertex(s, vertex, 0.5);
    CHECK(direct.value == doctest::Approx(m.n_loc.value).epsilon(1e-12));
    CHECK(direct.value == doctest::Approx(m.s_loc.value - m.a_loc.value).epsilon(1e-10));
    CHECK(kind_of([&] { excess_at_vertex(s, point_at(s, v2(1, 0)), 0.5); }) == ErrorKind::Precondition);
}

TEST_CASE("degenerate points still integrate") {
    const ConvexSurface s = parse_surface("quartic-bowl:2");
    const SurfacePoint origin = point_at(s, v2(0, 0));
    const StarMeasures m = star_measures(s, origin, 1.0);
    // {x^4 + y^4 < 1} has area Gamma(1/4)^2 / (2 sqrt(pi))
    CHECK(m.projected.value == doctest::Approx(std::pow(std::tgamma(0.25), 2) / (2 * std::sqrt(oracle::pi))).epsilon(1e-8));
}
