#include "hypersect/cli.hpp"

#include "hypersect/config.hpp"
#include "hypersect/error.hpp"
#include "hypersect/random.hpp"
#include "hypersect/suite.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

namespace hypersect::cli {

namespace {

const std::vector<std::string> kQuadKeys = {"radial-nodes", "directions", "mc-samples", "seed", "target-rel-err"};
const std::vector<std::string> kSurfaceKeys = {"kind", "coefficients", "radius", "dimension", "name"};

struct FlagSpec {
    std::string name;
    std::string help;
    bool is_flag = false;
};

const std::map<std::string, std::vector<FlagSpec>>& command_flags() {
    static const std::map<std::string, std::vector<FlagSpec>> flags = {
        {"section",
         {{"point", "base point x0, comma separated"},
          {"mode", "normal | vertical"},
          {"magnitude", "offset t (normal) or k (vertical)"},
          {"mc", "add a Monte Carlo cross-check", true}}},
        {"limits",
         {{"point", "base point x0"},
          {"quantity", "A | V | S | all"},
          {"rho", "ladder ratio"},
          {"rungs", "ladder length"},
          {"t0", "first rung; 0 picks a default"}}},
        {"scan",
         {{"condition", "A V S Vstar Astar Sstar Vss Ass"},
          {"points-file", "file with one point per line"},
          {"points", "points separated by ';'"},
          {"grid", "number of grid points"},
          {"box", "grid half-width"},
          {"offsets", "offsets, comma separated"},
          {"threshold", "spread threshold; 0 = automatic"}}},
        {"classify",
         {{"grid", "number of grid points"},
          {"box", "grid half-width"},
          {"threshold", "spread threshold"},
          {"measured", "use extrapolated area limits instead of analytic curvature", true}}},
        {"meanvalue",
         {{"test-fn", "w | affine | harmonic-quadratic"},
          {"coeffs", "paraboloid coefficients for w"},
          {"centers", "centers separated by ';'"},
          {"radii", "radii, comma separated"},
          {"tolerance", "harmonic tolerance"}}},
        {"ucheck", {{"coeffs", "paraboloid coefficients"}, {"samples", "sample count"}, {"box", "sample half-width"}}},
        {"suite", {}},
    };
    return flags;
}

double to_number(const std::string& key, const std::string& text) {
    const auto values = parse_doubles(text);
    if (values.size() != 1) throw Error(ErrorKind::InvalidParameter, "--" + key + " expects one number, got '" + text + "'");
    return values[0];
}

long long to_integer(const std::string& key, const std::string& text) {
    const std::string s = trim(text);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw Error(ErrorKind::InvalidParameter, "--" + key + " expects an integer, got '" + text + "'");
    return v;
}

bool to_bool(const std::string& key, const std::string& text) {
    const std::string s = trim(text);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw Error(ErrorKind::InvalidParameter, "--" + key + " expects true or false, got '" + text + "'");
}

class Params {
public:
    explicit Params(const std::map<std::string, std::string>& m) : m_(m) {}

    bool has(const std::string& k) const { return m_.count(k) != 0; }
    std::string str(const std::string& k, const std::string& fallback) const {
        auto it = m_.find(k);
        return it == m_.end() ? fallback : it->second;
    }
    std::string required(const std::string& k) const {
        auto it = m_.find(k);
        if (it == m_.end()) throw Error(ErrorKind::InvalidParameter, "--" + k + " is required");
        return it->second;
    }
    double num(const std::string& k, double fallback) const { return has(k) ? to_number(k, m_.at(k)) : fallback; }
    long long integer(const std::string& k, long long fallback) const {
        return has(k) ? to_integer(k, m_.at(k)) : fallback;
    }
    bool flag(const std::string& k) const { return has(k) && to_bool(k, m_.at(k)); }

private:
    const std::map<std::string, std::string>& m_;
};

struct Outcome {
    Json result;
    std::string csv;
    int exit_code = kExitOk;
};

ConvexSurface require_surface(const RunConfig& cfg) {
    if (cfg.surface.empty()) throw Error(ErrorKind::InvalidParameter, "--surface is required for " + cfg.command);
    return parse_surface(cfg.surface);
}

Vec require_point(const ConvexSurface& surface, const std::string& text) {
    Vec x = parse_point(text);
    if (x.size() != surface.dim())
        throw Error(ErrorKind::InvalidParameter, "point " + text + " has dimension " + std::to_string(x.size()) +
                                                     ", surface has " + std::to_string(surface.dim()));
    return x;
}

std::string csv_number(double v) { return format_double(v); }

std::string csv_coords_header(int dim) {
    std::string h;
    for (int i = 1; i <= dim; ++i) h += "x" + std::to_string(i) + ",";
    return h;
}

std::string csv_coords(const Vec& x) {
    std::string s;
    for (Eigen::Index i = 0; i < x.size(); ++i) s += csv_number(x[i]) + ",";
    return s;
}

Outcome cmd_section(const RunConfig& cfg) {
    const Params p(cfg.params);
    const ConvexSurface surface = require_surface(cfg);
    const SurfacePoint point = point_at(surface, require_point(surface, p.required("point")));
    const OffsetMode mode = parse_offset_mode(p.str("mode", "vertical"));
    const double magnitude = to_number("magnitude", p.required("magnitude"));
    const SectionSpec spec = mode == OffsetMode::Normal ? SectionSpec::normal(magnitude) : SectionSpec::vertical(magnitude);
    const SectionMeasure m = measure_section(surface, point, spec, cfg.quad);

    Outcome o;
    o.result = to_json(m);
    o.csv = "field,value,abs_err_est\n";
    const std::pair<const char*, const IntegralValue*> rows[] = {
        {"a_star", &m.a_star}, {"v_star", &m.v_star}, {"s_star", &m.s_star}, {"a_loc", &m.a_loc},
        {"v_loc", &m.v_loc},   {"s_loc", &m.s_loc},   {"n_loc", &m.n_loc}};
    for (const auto& [name, v] : rows) o.csv += std::string(name) + "," + csv_number(v->value) + "," + csv_number(v->abs_err_est) + "\n";

    if (p.flag("mc")) {
        const SectionRegion region = build_region(surface, point, spec);
        const double k = region.level();
        const auto mc = mc_integrate_region_multi(
            region, 3,
            [&](const Vec& u, std::span<double> out) {
                out[0] = point.w;
                out[1] = k - region.gauge(u);
                out[2] = std::sqrt(1.0 + surface.gradient(point.x0 + u).squaredNorm());
            },
            cfg.quad);
        o.result["monte_carlo"] = Json{{"a_star", to_json(mc[0])}, {"v_star", to_json(mc[1])}, {"s_star", to_json(mc[2])}};
        o.csv += "a_star_mc," + csv_number(mc[0].value) + "," + csv_number(mc[0].abs_err_est) + "\n";
        o.csv += "v_star_mc," + csv_number(mc[1].value) + "," + csv_number(mc[1].abs_err_est) + "\n";
        o.csv += "s_star_mc," + csv_number(mc[2].value) + "," + csv_number(mc[2].abs_err_est) + "\n";
    }
    return o;
}

Outcome cmd_limits(const RunConfig& cfg) {
    const Params p(cfg.params);
    const ConvexSurface surface = require_surface(cfg);
    const SurfacePoint point = point_at(surface, require_point(surface, p.required("point")));
    LadderConfig ladder;
    ladder.t0 = p.num("t0", ladder.t0);
    ladder.rho = p.num("rho", ladder.rho);
    ladder.rungs = static_cast<int>(p.integer("rungs", ladder.rungs));
    const std::string quantity = p.str("quantity", "all");

    std::vector<LimitEstimate> estimates;
    if (quantity == "all")
        estimates = lemma8_estimate_all(surface, point, ladder, cfg.quad);
    else
        estimates.push_back(lemma8_estimate(surface, point, parse_quantity(quantity), ladder, cfg.quad));

    Outcome o;
    Json list = Json::array();
    o.csv = "quantity,t,normalized\n";
    for (const auto& e : estimates) {
        list.push_back(to_json(e));
        for (const auto& [t, y] : e.ladder)
            o.csv += std::string(to_string(e.quantity)) + "," + csv_number(t) + "," + csv_number(y) + "\n";
    }
    o.result = Json{{"point", to_json(point)}, {"hessian_factor", to_json(hessian_sqrt_factor(point))}, {"estimates", std::move(list)}};
    return o;
}

std::vector<Vec> grid_points(const ConvexSurface& surface, const Params& p, std::size_t default_count) {
    const auto count = static_cast<std::size_t>(p.integer("grid", static_cast<long long>(default_count)));
    const double box = p.num("box", default_grid_half_width(surface));
    return default_grid(surface.dim(), count, box);
}

Outcome cmd_scan(const RunConfig& cfg) {
    const Params p(cfg.params);
    const ConvexSurface surface = require_surface(cfg);
    const Condition condition = parse_condition(p.required("condition"));

    std::vector<Vec> points;
    if (p.has("points-file"))
        points = read_points_file(p.str("points-file", ""));
    else if (p.has("points"))
        points = parse_points(p.str("points", ""));
    else
        points = grid_points(surface, p, 8);
    for (const Vec& x : points) {
        if (x.size() != surface.dim()) throw Error(ErrorKind::InvalidParameter, "scan point has the wrong dimension");
    }
    const std::vector<double> offsets = parse_doubles(p.str("offsets", "0.5,1"));
    ScanOptions opts;
    opts.quad = cfg.quad;
    opts.threshold = p.num("threshold", 0.0);

    const ScanReport scan = scan_condition(surface, condition, points, offsets, opts);
    Outcome o;
    o.result = Json{{"scan", to_json(scan)}};
    const bool invertible = condition == Condition::A || condition == Condition::V || condition == Condition::AStar ||
                            condition == Condition::VStar;
    if (invertible && scan.verdict == Verdict::Holds) o.result["inference"] = to_json(infer_curvature(scan));

    o.csv = csv_coords_header(surface.dim());
    for (std::size_t j = 0; j < offsets.size(); ++j) o.csv += "offset_" + csv_number(offsets[j]) + (j + 1 < offsets.size() ? "," : "\n");
    for (std::size_t i = 0; i < scan.points.size(); ++i) {
        o.csv += csv_coords(scan.points[i].x0);
        for (std::size_t j = 0; j < offsets.size(); ++j) o.csv += csv_number(scan.values[i][j]) + (j + 1 < offsets.size() ? "," : "\n");
    }
    o.exit_code = scan.verdict == Verdict::Holds ? kExitOk : scan.verdict == Verdict::Fails ? kExitFails : kExitInconclusive;
    return o;
}

Outcome cmd_classify(const RunConfig& cfg) {
    const Params p(cfg.params);
    const ConvexSurface surface = require_surface(cfg);
    ClassifyOptions opts;
    opts.grid_points = static_cast<std::size_t>(p.integer("grid", static_cast<long long>(opts.grid_points)));
    opts.half_width = p.num("box", 0.0);
    opts.threshold = p.num("threshold", opts.threshold);
    opts.source = p.flag("measured") ? CurvatureSource::Measured : CurvatureSource::Analytic;
    opts.quad = cfg.quad;
    const Classification c = classify(surface, opts);

    Outcome o;
    o.result = to_json(c);
    o.csv = csv_coords_header(surface.dim()) + "curvature,det_hessian\n";
    for (std::size_t i = 0; i < c.points.size(); ++i)
        o.csv += csv_coords(c.points[i].x0) + csv_number(c.curvature[i]) + "," + csv_number(c.det_hessian[i]) + "\n";
    return o;
}

Outcome cmd_meanvalue(const RunConfig& cfg) {
    const Params p(cfg.params);
    const std::string name = p.str("test-fn", "w");
    const std::vector<double> coeffs = parse_doubles(p.str("coeffs", "1,1"));
    const bool is_w = name == "w";

    std::vector<Vec> centers;
    if (p.has("centers")) {
        centers = parse_points(p.str("centers", ""));
    }
    const int dim = is_w ? static_cast<int>(coeffs.size()) : centers.empty() ? 2 : static_cast<int>(centers.front().size());
    if (centers.empty()) centers.push_back(Vec::Zero(dim));
    for (const Vec& q : centers) {
        if (q.size() != dim) throw Error(ErrorKind::InvalidParameter, "center has the wrong dimension");
    }
    const TestFunction fn = is_w ? w_integrand(coeffs) : registry_test_function(name, dim);
    const std::vector<double> radii = parse_doubles(p.str("radii", "0.05,0.1,0.2"));
    const MeanValueReport r = mean_value_scan(fn, centers, radii, cfg.quad, p.num("tolerance", 1e-9));

    Outcome o;
    o.result = to_json(r);
    o.csv = csv_coords_header(dim) + "r,ratio\n";
    for (std::size_t i = 0; i < centers.size(); ++i) {
        for (std::size_t j = 0; j < radii.size(); ++j)
            o.csv += csv_coords(centers[i]) + csv_number(radii[j]) + "," + csv_number(r.ratios[i][j]) + "\n";
    }
    if (!is_w && !r.harmonic_verdict) o.exit_code = kExitFails;
    return o;
}

Outcome cmd_ucheck(const RunConfig& cfg) {
    const Params p(cfg.params);
    const std::vector<double> coeffs = parse_doubles(p.str("coeffs", "1,1"));
    const long long count = p.integer("samples", 100);
    const double box = p.num("box", 1.0);
    if (count < 1) throw Error(ErrorKind::InvalidParameter, "--samples must be positive");
    if (!(box > 0.0)) throw Error(ErrorKind::InvalidParameter, "--box must be positive");
    const int dim = static_cast<int>(coeffs.size());
    Rng rng(cfg.quad.seed, 0x75);
    std::vector<Vec> samples;
    for (long long i = 0; i < count; ++i) {
        Vec x(dim);
        for (int d = 0; d < dim; ++d) x[d] = rng.uniform(-box, box);
        samples.push_back(std::move(x));
    }
    const UTransformCheck c = u_transform_check(coeffs, samples);

    Outcome o;
    o.result = to_json(c);
    o.csv = "field,value\nmax_u_residual," + csv_number(c.max_u_residual) + "\nmax_second_derivative_residual," +
            csv_number(c.max_second_derivative_residual) + "\nu_at_origin," + csv_number(c.u_at_origin) + "\n";
    const bool ok = c.max_residual() <= 1e-6 && c.origin_is_u_maximum && c.origin_is_v_minimum;
    o.exit_code = ok ? kExitOk : kExitFails;
    return o;
}

Outcome cmd_suite(const RunConfig& cfg, std::ostream& err) {
    Outcome o;
    Json list = Json::array();
    bool all = true;
    o.csv = "id,name,passed\n";
    for (const auto& c : acceptance_criteria()) {
        const CriterionResult r = c.run(cfg.quad);
        err << (r.passed ? "[PASS] " : "[FAIL] ") << std::setw(2) << r.id << "  " << c.name << "  " << r.name << "\n";
        err.flush();
        all = all && r.passed;
        o.csv += std::to_string(r.id) + "," + c.name + "," + (r.passed ? "true" : "false") + "\n";
        list.push_back(to_json(r));
    }
    err << (all ? "all criteria passed\n" : "some criteria failed\n");
    o.result = Json{{"passed", all}, {"criteria", std::move(list)}};
    o.exit_code = all ? kExitOk : kExitFails;
    return o;
}

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::InvalidParameter: return kExitUsage;
        case ErrorKind::Inconclusive: return kExitInconclusive;
        default: return kExitData;
    }
}

}  // namespace

Json to_json(const RunConfig& cfg) {
    Json params = Json::object();
    for (const auto& [k, v] : cfg.params) params[k] = v;
    return Json{{"command", cfg.command},
                {"surface", cfg.surface},
                {"quadrature", to_json(cfg.quad)},
                {"parameters", std::move(params)},
                {"format", cfg.format}};
}

std::string to_key_values(const RunConfig& cfg) {
    std::ostringstream s;
    s << std::setprecision(17);
    s << "command = " << cfg.command << "\n";
    if (!cfg.surface.empty()) s << "surface = " << cfg.surface << "\n";
    s << "radial-nodes = " << cfg.quad.radial_nodes << "\n";
    s << "directions = " << cfg.quad.directions << "\n";
    s << "mc-samples = " << cfg.quad.mc_samples << "\n";
    s << "seed = " << cfg.quad.seed << "\n";
    s << "target-rel-err = " << cfg.quad.target_rel_err << "\n";
    s << "format = " << cfg.format << "\n";
    for (const auto& [k, v] : cfg.params) s << k << " = " << v << "\n";
    return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cap sections of convex graph hypersurfaces", "hypersect"};
    app.fallthrough();
    app.require_subcommand(0, 1);

    std::map<std::string, std::string> given;
    std::map<std::string, bool> given_flags;
    std::string config_path;
    std::string save_path;
    app.add_option("--config", config_path, "key = value file; flags on the command line win");
    app.add_option("--save-config", save_path, "write the resolved configuration to this file");
    const std::pair<const char*, const char*> common[] = {
        {"surface", "kind:params, e.g. paraboloid:1,1 or sphere:1"},
        {"format", "json | csv"},
        {"output", "write the report here instead of stdout"},
        {"radial-nodes", "Gauss-Legendre nodes per ray"},
        {"directions", "direction count"},
        {"mc-samples", "Monte Carlo samples"},
        {"seed", "Monte Carlo seed"},
        {"target-rel-err", "deterministic refinement target"},
    };
    for (const auto& [name, help] : common) app.add_option(std::string("--") + name, given[name], help);

    std::map<std::string, CLI::App*> subs;
    for (const auto& [cmd, flags] : command_flags()) {
        static const std::map<std::string, std::string> about = {
            {"section", "measure one section: A*, V*, S* and the tangent-frame A, V, S, N"},
            {"limits", "small-offset limits of A, V, S against the curvature prediction"},
            {"scan", "test one constancy condition over base points and offsets"},
            {"classify", "sphere-like, paraboloid-like or neither on a sampled grid"},
            {"meanvalue", "ball-average ratios of the W integrand or a harmonic test function"},
            {"ucheck", "closed-form U and second derivatives of the W integrand against differences"},
            {"suite", "run the acceptance battery"}};
        CLI::App* sub = app.add_subcommand(cmd, about.at(cmd));
        subs[cmd] = sub;
        for (const auto& f : flags) {
            const std::string key = cmd + "/" + f.name;
            if (f.is_flag)
                sub->add_flag("--" + f.name, given_flags[key], f.help);
            else
                sub->add_option("--" + f.name, given[key], f.help);
        }
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    RunConfig cfg;
    try {
        std::map<std::string, std::string> merged;
        if (!config_path.empty()) merged = read_key_value_file(config_path);
        for (const auto& [name, help] : common) {
            if (app.get_option(std::string("--") + name)->count() > 0) merged[name] = given[name];
        }

        for (const auto& [cmd, sub] : subs) {
            if (sub->parsed()) cfg.command = cmd;
        }
        if (cfg.command.empty()) {
            auto it = merged.find("command");
            if (it == merged.end()) throw Error(ErrorKind::InvalidParameter, "no subcommand given\n" + app.help());
            cfg.command = trim(it->second);
            if (!command_flags().count(cfg.command))
                throw Error(ErrorKind::InvalidParameter, "unknown command '" + cfg.command + "'");
        }
        merged.erase("command");

        CLI::App* sub = subs.at(cfg.command);
        for (const auto& f : command_flags().at(cfg.command)) {
            const std::string key = cfg.command + "/" + f.name;
            if (sub->get_option("--" + f.name)->count() == 0) continue;
            merged[f.name] = f.is_flag ? (given_flags[key] ? "true" : "false") : given[key];
        }

        std::set<std::string> known(kQuadKeys.begin(), kQuadKeys.end());
        known.insert({"surface", "format", "output"});
        std::map<std::string, std::string> surface_entries;
        for (const auto& [k, v] : merged) {
            if (std::find(kSurfaceKeys.begin(), kSurfaceKeys.end(), k) != kSurfaceKeys.end()) {
                surface_entries[k] = v;
                continue;
            }
            if (known.count(k)) continue;
            bool is_param = false;
            for (const auto& f : command_flags().at(cfg.command)) is_param = is_param || f.name == k;
            if (!is_param) throw Error(ErrorKind::InvalidParameter, "'" + k + "' is not an option of " + cfg.command);
            cfg.params[k] = trim(v);
        }

        if (merged.count("surface"))
            cfg.surface = trim(merged["surface"]);
        else if (!surface_entries.empty())
            cfg.surface = surface_from_config(surface_entries).name();
        if (!cfg.surface.empty()) cfg.surface = parse_surface(cfg.surface).name();

        const Params p(merged);
        cfg.quad.radial_nodes = static_cast<int>(p.integer("radial-nodes", cfg.quad.radial_nodes));
        cfg.quad.directions = static_cast<int>(p.integer("directions", cfg.quad.directions));
        const long long mc = p.integer("mc-samples", static_cast<long long>(cfg.quad.mc_samples));
        if (mc < 1) throw Error(ErrorKind::InvalidParameter, "--mc-samples must be positive");
        cfg.quad.mc_samples = static_cast<std::size_t>(mc);
        const long long seed = p.integer("seed", static_cast<long long>(cfg.quad.seed));
        if (seed < 0) throw Error(ErrorKind::InvalidParameter, "--seed must be non-negative");
        cfg.quad.seed = static_cast<std::uint64_t>(seed);
        cfg.quad.target_rel_err = p.num("target-rel-err", cfg.quad.target_rel_err);
        cfg.quad.validate();
        cfg.format = trim(p.str("format", "json"));
        if (cfg.format != "json" && cfg.format != "csv")
            throw Error(ErrorKind::InvalidParameter, "--format must be json or csv");
        cfg.output = trim(p.str("output", ""));

        if (!save_path.empty()) {
            std::ofstream f(save_path);
            if (!f) throw Error(ErrorKind::InvalidParameter, "cannot write " + save_path);
            f << to_key_values(cfg);
        }

        Outcome o;
        if (cfg.command == "section") o = cmd_section(cfg);
        else if (cfg.command == "limits") o = cmd_limits(cfg);
        else if (cfg.command == "scan") o = cmd_scan(cfg);
        else if (cfg.command == "classify") o = cmd_classify(cfg);
        else if (cfg.command == "meanvalue") o = cmd_meanvalue(cfg);
        else if (cfg.command == "ucheck") o = cmd_ucheck(cfg);
        else o = cmd_suite(cfg, err);

        std::string text;
        if (cfg.format == "csv") {
            text = o.csv;
        } else {
            const Json report{{"schema_version", kSchemaVersion},
                              {"command", cfg.command},
                              {"generated_at", utc_timestamp()},
                              {"config", to_json(cfg)},
                              {"result", std::move(o.result)}};
            text = report.dump(2) + "\n";
        }
        if (cfg.output.empty()) {
            out << text;
            out.flush();
        } else {
            std::ofstream f(cfg.output);
            if (!f) throw Error(ErrorKind::Evaluation, "cannot write " + cfg.output);
            f << text;
        }
        return o.exit_code;
    } catch (const Error& e) {
        err << "hypersect: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "hypersect: " << e.what() << "\n";
        return kExitData;
    }
}

}  // namespace hypersect::cli
