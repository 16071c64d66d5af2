#include "hypersect/asymptotics.hpp"
#include "hypersect/error.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <Eigen/LU>

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

TEST_CASE("predicted limits") {
    const SurfacePoint vertex = point_at(make_paraboloid(a11), v2(0, 0));
    CHECK(lemma8_predicted(vertex, Quantity::A) == doctest::Approx(oracle::pi).epsilon(1e-15));
    CHECK(lemma8_predicted(vertex, Quantity::S) == doctest::Approx(oracle::pi).epsilon(1e-15));
    CHECK(lemma8_predicted(vertex, Quantity::V) == doctest::Approx(oracle::pi / 2).epsilon(1e-15));
    const SurfacePoint pole = point_at(make_sphere_graph(1.0, 2), v2(0, 0));
    CHECK(lemma8_predicted(pole, Quantity::S) == doctest::Approx(2 * oracle::pi).epsilon(1e-15));

    const SurfacePoint flat = point_at(parse_surface("quartic-bowl"), v2(0, 0));
    CHECK(kind_of([&] { lemma8_predicted(flat, Quantity::A); }) == ErrorKind::DegenerateCurvature);
    CHECK(kind_of([&] { lemma8_estimate(parse_surface("quartic-bowl"), flat, Quantity::A); }) ==
          ErrorKind::DegenerateCurvature);
}

TEST_CASE("limit estimates") {
    const ConvexSurface p = make_paraboloid(a11);
    const LimitEstimate a = lemma8_estimate(p, point_at(p, v2(0, 0)), Quantity::A);
    CHECK(a.rel_dev < 1e-6);
    CHECK(a.ladder.size() == 6);
    CHECK(a.uncertainty >= 0.0);
    for (std::size_t j = 1; j < a.ladder.size(); ++j) CHECK(a.ladder[j].first < a.ladder[j - 1].first);

    const ConvexSurface s = make_sphere_graph(1.0, 2);
    const LimitEstimate su = lemma8_estimate(s, point_at(s, v2(0, 0)), Quantity::S);
    CHECK(su.extrapolated == doctest::Approx(2 * oracle::pi).epsilon(1e-4));

    for (const char* name : {"paraboloid:1,2", "sphere:1", "sphere:1,3", "cosh-bowl:2", "exp-bowl:2", "cosh-bowl:1"}) {
        CAPTURE(name);
        const ConvexSurface c = parse_surface(name);
        const SurfacePoint q = point_at(c, Vec::Constant(c.dim(), 0.15));
        for (const LimitEstimate& e : lemma8_estimate_all(c, q)) {
            CAPTURE(to_string(e.quantity));
            CHECK(e.rel_dev <= 1e-3);
        }
    }
}

TEST_CASE("ladder validation and fallback") {
    const ConvexSurface s = make_sphere_graph(1.0, 2);
    const SurfacePoint pole = point_at(s, v2(0, 0));
    CHECK(kind_of([&] { lemma8_estimate(s, pole, Quantity::A, LadderConfig{0.1, 0.5, 3}); }) ==
          ErrorKind::InvalidParameter);
    CHECK(kind_of([&] { lemma8_estimate(s, pole, Quantity::A, LadderConfig{0.1, 1.5, 6}); }) ==
          ErrorKind::InvalidParameter);
    // t0 beyond the cap range shrinks until the section fits
    const LimitEstimate e = lemma8_estimate(s, pole, Quantity::A, LadderConfig{3.0, 0.5, 6});
    CHECK(e.ladder.front().first < 1.0);
    CHECK(e.rel_dev < 1e-3);
}

TEST_CASE("sqrt model fit") {
    std::vector<std::pair<double, double>> samples;
    for (double t = 0.5; t > 0.01; t *= 0.5) samples.emplace_back(t, 2.0 - 3.0 * std::sqrt(t) + 0.5 * t);
    double err = -1.0;
    const auto c = fit_sqrt_model(samples, &err);
    CHECK(c[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(c[1] == doctest::Approx(-3.0).epsilon(1e-10));
    CHECK(c[2] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(err >= 0.0);
    CHECK(err < 1e-10);
}

TEST_CASE("hessian square root") {
    const SurfacePoint p = point_at(make_paraboloid(a11), v2(0.3, 0.4));
    const HessianFactor f = hessian_sqrt_factor(p);
    CHECK((f.b_matrix - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(f.det_b == doctest::Approx(1.0));
    CHECK(f.area_limit() == doctest::Approx(oracle::pi));

    const std::vector<double> a12 = {1.0, 2.0};
    const HessianFactor g = hessian_sqrt_factor(point_at(make_paraboloid(a12), v2(0, 0)));
    CHECK(g.b_matrix(1, 1) == doctest::Approx(2.0));
    CHECK(g.area_limit() == doctest::Approx(oracle::pi / 2).epsilon(1e-14));

    const HessianFactor h3 = hessian_sqrt_factor(point_at(make_paraboloid(std::vector<double>{1, 1, 1}), Vec::Zero(3)));
    CHECK(h3.area_limit() == doctest::Approx(4 * oracle::pi / 3).epsilon(1e-14));

    for (const char* name : {"cosh-bowl:3", "exp-bowl:2", "sphere:1,3", "paraboloid:0.5,2"}) {
        const ConvexSurface c = parse_surface(name);
        const SurfacePoint q = point_at(c, Vec::Constant(c.dim(), 0.2));
        const HessianFactor hf = hessian_sqrt_factor(q);
        const double scale = hf.a_matrix.cwiseAbs().maxCoeff();
        CHECK((hf.b_matrix.transpose() * hf.b_matrix - hf.a_matrix).cwiseAbs().maxCoeff() <= 1e-12 * scale);
        CHECK(hf.det_b * hf.det_b == doctest::Approx(hf.a_matrix.determinant()).epsilon(1e-12));
        CHECK(std::pow(2.0, c.dim()) * hf.a_matrix.determinant() == doctest::Approx(q.det_hessian).epsilon(1e-12));
        // predicted limit uses K = det D^2 f / W^{n+2} in the tangent frame; at W = 1 both agree
        if (q.w == 1.0) CHECK(hf.area_limit() == doctest::Approx(lemma8_predicted(q, Quantity::A)).epsilon(1e-10));
    }
    const SurfacePoint vtx = point_at(make_paraboloid(std::vector<double>{2.0, 0.5}), v2(0, 0));
    CHECK(hessian_sqrt_factor(vtx).area_limit() == doctest::Approx(lemma8_predicted(vtx, Quantity::A)).epsilon(1e-10));
    CHECK(kind_of([] { hessian_sqrt_factor(point_at(parse_surface("quartic-bowl"), v2(0, 0))); }) ==
          ErrorKind::DegenerateCurvature);
}

TEST_CASE("sphere cap oracle") {
    CHECK(cap_oracle_sphere(1.0, 0.5, 2, Quantity::A) == doctest::Approx(0.75 * oracle::pi));
    CHECK(cap_oracle_sphere(1.0, 0.5, 2, Quantity::S) == doctest::Approx(oracle::pi));
    CHECK(cap_oracle_sphere(1.0, 0.5, 2, Quantity::V) == doctest::Approx(5 * oracle::pi / 24));
    CHECK(cap_oracle_sphere(2.0, 1e-9, 2, Quantity::V) < 1e-15);
    for (int n = 1; n <= 4; ++n) {
        CHECK(cap_oracle_sphere(1.3, 0.6, n, Quantity::V) ==
              doctest::Approx(oracle::sphere_cap_volume(1.3, 0.6, n)).epsilon(1e-10));
        CHECK(cap_oracle_sphere(1.3, 0.6, n, Quantity::S) ==
              doctest::Approx(oracle::sphere_cap_area(1.3, 0.6, n)).epsilon(1e-10));
    }
    CHECK(kind_of([] { cap_oracle_sphere(1.0, 1.0, 2, Quantity::A); }) == ErrorKind::Domain);
    CHECK(kind_of([] { cap_oracle_sphere(1.0, 0.0, 2, Quantity::A); }) == ErrorKind::Domain);
}

TEST_CASE("paraboloid oracle") {
    CHECK(paraboloid_alpha(a11) == doctest::Approx(oracle::pi / 2));
    const std::vector<double> a12 = {1.0, 2.0};
    CHECK(paraboloid_alpha(a12) == doctest::Approx(oracle::pi / 4));
    for (const auto& a : {std::vector<double>{1.0}, std::vector<double>{0.5, 2.0, 1.5}, std::vector<double>{1, 2, 3, 4}}) {
        CHECK(paraboloid_alpha(a) == doctest::Approx(oracle::paraboloid_alpha(a)).epsilon(1e-14));
    }
    CHECK(cap_oracle_paraboloid(a11, v2(1, 0), SectionSpec::vertical(1.0), Quantity::A) ==
          doctest::Approx(std::sqrt(5.0) * oracle::pi));
    CHECK(cap_oracle_paraboloid(a11, v2(0, 0), SectionSpec::vertical(1.0), Quantity::V) ==
          doctest::Approx(oracle::pi / 2));
    CHECK(cap_oracle_paraboloid(a12, v2(0, 0), SectionSpec::vertical(1.0), Quantity::V) ==
          doctest::Approx(oracle::pi / 4));
    // t form: V(t) = alpha W^{(n+2)/2} t^{(n+2)/2}
    const double w = std::sqrt(5.0);
    CHECK(cap_oracle_paraboloid(a11, v2(1, 0), SectionSpec::normal(0.3), Quantity::V) ==
          doctest::Approx(oracle::pi / 2 * w * w * 0.09));
    CHECK(cap_oracle_paraboloid(a11, v2(1, 0), SectionSpec::normal(0.3), Quantity::A) ==
          doctest::Approx(2 * oracle::pi / 2 * w * w * 0.3));
    CHECK(kind_of([&] { cap_oracle_paraboloid(a11, v2(0, 0), SectionSpec::vertical(1.0), Quantity::S); }) ==
          ErrorKind::InvalidParameter);
}

TEST_CASE("quadrature matches the oracles") {
    for (const auto& a : {std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 2.0}, std::vector<double>{0.7, 1.1, 1.9},
                          std::vector<double>{1.3}}) {
        const ConvexSurface s = make_paraboloid(a);
        const Vec x = Vec::Constant(s.dim(), 0.4);
        const SurfacePoint p = point_at(s, x);
        for (double k : {0.2, 1.0, 2.5}) {
            const StarMeasures m = star_measures(s, p, k);
            const SectionSpec spec = SectionSpec::vertical(k);
            CHECK(m.volume.value ==
                  doctest::Approx(cap_oracle_paraboloid(a, x, spec, Quantity::V)).epsilon(std::max(1e-7, m.volume.rel_err())));
            CHECK(m.area.value ==
                  doctest::Approx(cap_oracle_paraboloid(a, x, spec, Quantity::A)).epsilon(std::max(1e-7, m.area.rel_err())));
        }
    }
    for (int n = 1; n <= 3; ++n) {
        const ConvexSurface s = make_sphere_graph(1.0, n);
        for (double t : {0.1, 0.3}) {
            const SectionMeasure m = local_frame_measures(s, point_at(s, Vec::Constant(n, 0.05)), t);
            CHECK(m.v_loc.value == doctest::Approx(cap_oracle_sphere(1.0, t, n, Quantity::V)).epsilon(1e-7));
            CHECK(m.s_loc.value == doctest::Approx(cap_oracle_sphere(1.0, t, n, Quantity::S)).epsilon(1e-7));
            CHECK(m.a_loc.value == doctest::Approx(cap_oracle_sphere(1.0, t, n, Quantity::A)).epsilon(1e-7));
        }
    }
}

TEST_CASE("remainder ladder at the vertex") {
    const ConvexSurface s = make_paraboloid(a11);
    const auto rungs = remainder_ladder(s, point_at(s, v2(0, 0)), LadderConfig{0.5, 0.5, 6});
    REQUIRE(rungs.size() == 6);
    for (std::size_t j = 1; j < rungs.size(); ++j) CHECK(rungs[j].excess_normalized < rungs[j - 1].excess_normalized);
    for (const auto& r : rungs) {
        const double exact = (std::pow(1 + 4 * r.t, 1.5) - 1) / (6 * r.t) - 1;
        CHECK(r.excess_normalized / r.area_normalized == doctest::Approx(exact).epsilon(1e-10));
        CHECK(r.excess_direct == doctest::Approx(r.excess_normalized * r.t).epsilon(1e-12));
    }
}

TEST_CASE("quantity names") {
    CHECK(parse_quantity("A") == Quantity::A);
    CHECK(parse_quantity("v") == Quantity::V);
    CHECK(to_string(Quantity::S) == "S");
    CHECK(normalizing_power(Quantity::V, 3) == 2.5);
    CHECK(normalizing_power(Quantity::A, 3) == 1.5);
    CHECK(kind_of([] { parse_quantity("Q"); }) == ErrorKind::InvalidParameter);
}
