#include "hypersect/cli.hpp"
#include "hypersect/error.hpp"
#include "hypersect/report.hpp"
#include "hypersect/suite.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace hypersect;

namespace {

py::object to_py(const Json& j) {
    switch (j.type()) {
        case Json::value_t::null: return py::none();
        case Json::value_t::boolean: return py::bool_(j.get<bool>());
        case Json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
        case Json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
        case Json::value_t::number_float: return py::float_(j.get<double>());
        case Json::value_t::string: return py::str(j.get<std::string>());
        case Json::value_t::array: {
            py::list l;
            for (const auto& e : j) l.append(to_py(e));
            return l;
        }
        case Json::value_t::object: {
            py::dict d;
            for (const auto& [k, v] : j.items()) d[py::str(k)] = to_py(v);
            return d;
        }
        default: return py::none();
    }
}

SectionSpec make_spec(const std::string& mode, double magnitude) {
    return parse_offset_mode(mode) == OffsetMode::Normal ? SectionSpec::normal(magnitude) : SectionSpec::vertical(magnitude);
}

Vec as_point(const ConvexSurface& s, const Vec& x) {
    if (x.size() != s.dim()) throw Error(ErrorKind::InvalidParameter, "point has the wrong dimension");
    return x;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "hypersect core";

    static py::handle exc = py::exception<Error>(m, "HypersectError").release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(exc, e.what());
        }
    });

    py::class_<QuadratureConfig>(m, "QuadratureConfig")
        .def(py::init<>())
        .def_readwrite("radial_nodes", &QuadratureConfig::radial_nodes)
        .def_readwrite("directions", &QuadratureConfig::directions)
        .def_readwrite("mc_samples", &QuadratureConfig::mc_samples)
        .def_readwrite("seed", &QuadratureConfig::seed)
        .def_readwrite("target_rel_err", &QuadratureConfig::target_rel_err)
        .def_readwrite("mc_target_rel_err", &QuadratureConfig::mc_target_rel_err)
        .def_readwrite("max_refinements", &QuadratureConfig::max_refinements)
        .def_readwrite("parallel", &QuadratureConfig::parallel)
        .def("validate", &QuadratureConfig::validate);

    py::class_<ConvexSurface>(m, "Surface")
        .def_property_readonly("dim", &ConvexSurface::dim)
        .def_property_readonly("name", &ConvexSurface::name)
        .def_property_readonly("domain_radius", &ConvexSurface::domain_radius)
        .def("value", &ConvexSurface::value)
        .def("gradient", &ConvexSurface::gradient)
        .def("hessian", &ConvexSurface::hessian)
        .def("__repr__", [](const ConvexSurface& s) { return "<Surface " + s.name() + ">"; });

    py::class_<SurfacePoint>(m, "SurfacePoint")
        .def_readonly("x0", &SurfacePoint::x0)
        .def_readonly("height", &SurfacePoint::height)
        .def_readonly("gradient", &SurfacePoint::gradient)
        .def_readonly("w", &SurfacePoint::w)
        .def_readonly("hessian", &SurfacePoint::hessian)
        .def_readonly("det_hessian", &SurfacePoint::det_hessian)
        .def_readonly("k_curv", &SurfacePoint::k_curv)
        .def_property_readonly("degenerate", &SurfacePoint::degenerate);

    m.def("paraboloid", [](const std::vector<double>& a) { return make_paraboloid(a); }, py::arg("coeffs"));
    m.def("sphere", &make_sphere_graph, py::arg("radius"), py::arg("dim") = 2);
    m.def("named", &named_surface, py::arg("name"), py::arg("dim") = 2);
    m.def("parse_surface", &parse_surface, py::arg("text"));
    m.def(
        "custom",
        [](int dim, ScalarField f, VectorField g, MatrixField h, double radius) {
            // python callables hold the GIL, so the integrators must stay serial
            return make_custom(dim, std::move(f), std::move(g), std::move(h), radius, false);
        },
        py::arg("dim"), py::arg("f"), py::arg("grad"), py::arg("hess"),
        py::arg("domain_radius") = std::numeric_limits<double>::infinity());
    m.def("point_at", [](const ConvexSurface& s, const Vec& x) { return point_at(s, as_point(s, x)); });

    m.def(
        "section",
        [](const ConvexSurface& s, const Vec& x, const std::string& mode, double magnitude, const QuadratureConfig& cfg) {
            return to_py(to_json(measure_section(s, point_at(s, as_point(s, x)), make_spec(mode, magnitude), cfg)));
        },
        py::arg("surface"), py::arg("x0"), py::arg("mode") = "vertical", py::arg("magnitude") = 1.0,
        py::arg("cfg") = QuadratureConfig{});

    m.def(
        "limits",
        [](const ConvexSurface& s, const Vec& x, const std::string& quantity, double t0, double rho, int rungs,
           const QuadratureConfig& cfg) {
            const SurfacePoint p = point_at(s, as_point(s, x));
            const LadderConfig ladder{t0, rho, rungs};
            py::list out;
            if (quantity == "all") {
                for (const auto& e : lemma8_estimate_all(s, p, ladder, cfg)) out.append(to_py(to_json(e)));
            } else {
                out.append(to_py(to_json(lemma8_estimate(s, p, parse_quantity(quantity), ladder, cfg))));
            }
            return out;
        },
        py::arg("surface"), py::arg("x0"), py::arg("quantity") = "all", py::arg("t0") = 0.0, py::arg("rho") = 0.5,
        py::arg("rungs") = 6, py::arg("cfg") = QuadratureConfig{});

    m.def(
        "scan",
        [](const ConvexSurface& s, const std::string& condition, const std::vector<Vec>& points,
           const std::vector<double>& offsets, double threshold, const QuadratureConfig& cfg) {
            ScanOptions opts{cfg, threshold};
            const ScanReport r = scan_condition(s, parse_condition(condition), points, offsets, opts);
            Json j = to_json(r);
            const Condition c = r.condition;
            const bool invertible = c == Condition::A || c == Condition::V || c == Condition::AStar || c == Condition::VStar;
            if (invertible && r.verdict == Verdict::Holds) j["inference"] = to_json(infer_curvature(r));
            return to_py(j);
        },
        py::arg("surface"), py::arg("condition"), py::arg("points"), py::arg("offsets"), py::arg("threshold") = 0.0,
        py::arg("cfg") = QuadratureConfig{});

    m.def(
        "classify",
        [](const ConvexSurface& s, std::size_t grid, double box, double threshold, bool measured,
           const QuadratureConfig& cfg) {
            ClassifyOptions opts;
            opts.grid_points = grid;
            opts.half_width = box;
            opts.threshold = threshold;
            opts.source = measured ? CurvatureSource::Measured : CurvatureSource::Analytic;
            opts.quad = cfg;
            return to_py(to_json(classify(s, opts)));
        },
        py::arg("surface"), py::arg("grid") = 12, py::arg("box") = 0.0, py::arg("threshold") = 1e-5,
        py::arg("measured") = false, py::arg("cfg") = QuadratureConfig{});

    m.def(
        "mean_value",
        [](const std::string& test_fn, const std::vector<double>& coeffs, const std::vector<Vec>& centers,
           const std::vector<double>& radii, double tolerance, const QuadratureConfig& cfg) {
            const int dim = centers.empty() ? static_cast<int>(coeffs.size()) : static_cast<int>(centers.front().size());
            const TestFunction fn = test_fn == "w" ? w_integrand(coeffs) : registry_test_function(test_fn, dim);
            return to_py(to_json(mean_value_scan(fn, centers, radii, cfg, tolerance)));
        },
        py::arg("test_fn"), py::arg("coeffs"), py::arg("centers"), py::arg("radii"), py::arg("tolerance") = 1e-9,
        py::arg("cfg") = QuadratureConfig{});

    m.def(
        "u_check",
        [](const std::vector<double>& coeffs, const std::vector<Vec>& samples) {
            return to_py(to_json(u_transform_check(coeffs, samples)));
        },
        py::arg("coeffs"), py::arg("samples"));

    m.def(
        "cap_oracle_sphere",
        [](double a, double t, int n, const std::string& q) { return cap_oracle_sphere(a, t, n, parse_quantity(q)); },
        py::arg("a"), py::arg("t"), py::arg("n"), py::arg("quantity"));
    m.def(
        "paraboloid_alpha", [](const std::vector<double>& a) { return paraboloid_alpha(a); }, py::arg("coeffs"));
    m.def(
        "cap_oracle_paraboloid",
        [](const std::vector<double>& a, const Vec& x, const std::string& mode, double magnitude,
           const std::string& quantity) {
            return cap_oracle_paraboloid(a, x, make_spec(mode, magnitude), parse_quantity(quantity));
        },
        py::arg("coeffs"), py::arg("x0"), py::arg("mode"), py::arg("magnitude"), py::arg("quantity"));

    m.def(
        "run_suite",
        [](const QuadratureConfig& cfg) {
            py::list out;
            for (const auto& r : run_acceptance_battery(cfg)) out.append(to_py(to_json(r)));
            return out;
        },
        py::arg("cfg") = QuadratureConfig{});

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
