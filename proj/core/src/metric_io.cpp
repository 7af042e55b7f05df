// Metric specs from JSON documents and the named zoo.
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "finsler/expression.hpp"
#include "finsler/metric.hpp"

namespace finsler {

namespace {

using nlohmann::json;

struct ExpressionF {
    Expr expr;
    template <class S>
    S operator()(const Vec<S>& x, const Vec<S>& y) const {
        return expr.eval(x, y);
    }
};

// Zermelo navigation with Euclidean ground and an expression wind field.
struct NavigationF {
    std::vector<Expr> wind;
    template <class S>
    S operator()(const Vec<S>& x, const Vec<S>& y) const {
        Vec<S> w(x.size());
        for (int i = 0; i < x.size(); ++i) w[i] = wind[i].eval(x, y);
        S lambda = S(1.0);
        S wy{}, y2{};
        for (int i = 0; i < x.size(); ++i) {
            lambda = lambda - w[i] * w[i];
            wy += w[i] * y[i];
            y2 += y[i] * y[i];
        }
        S root = sqrt(lambda * y2 + wy * wy);
        if (value(wy) <= 0.0) return (root - wy) / lambda;
        return y2 / (root + wy);
    }
};

VecD vec_from_json(const json& j, int dim, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw ParseError("metric-spec", std::string(what) + " must be an array of length dim");
    VecD v(dim);
    for (int i = 0; i < dim; ++i) v[i] = j[i].get<double>();
    return v;
}

ChartDomain domain_from_json(const json& params, int dim, double default_radius) {
    if (!params.contains("domain")) return ChartDomain::ball(dim, default_radius);
    const json& d = params.at("domain");
    std::string type = d.value("type", "ball");
    if (type == "ball") {
        double radius = d.value("radius", default_radius);
        VecD center = d.contains("center") ? vec_from_json(d["center"], dim, "domain.center")
                                           : VecD::zero(dim);
        return ChartDomain::ball(dim, radius, center);
    }
    if (type == "box")
        return ChartDomain::box(vec_from_json(d.at("lo"), dim, "domain.lo"),
                                vec_from_json(d.at("hi"), dim, "domain.hi"));
    throw ParseError("metric-spec", "unknown domain type '" + type + "'");
}

FinslerMetric from_json(const json& spec) {
    std::string kind = spec.value("kind", "");
    int dim = spec.value("dim", 0);
    std::string name = spec.value("name", kind);
    const json params = spec.value("params", json::object());

    if (kind == "euclidean") return make_euclidean(dim);
    if (kind == "sphere") return make_sphere(dim);
    if (kind == "hyperbolic") return make_hyperbolic(dim);
    if (kind == "funk") return make_funk(dim);
    if (kind == "berwald-moor") return make_berwald_moor(dim);
    if (kind == "fish-tank") return make_fish_tank(params.value("epsilon", 0.3));
    if (kind == "randers-flat") return make_randers_flat(dim, params.value("b", 0.5));
    if (kind == "randers-navigation") {
        if (dim < 2) throw ParseError("metric-spec", "randers-navigation requires dim >= 2");
        if (!params.contains("wind"))
            throw ParseError("metric-spec", "randers-navigation requires params.wind");
        std::vector<Expr> wind;
        for (const auto& w : params.at("wind"))
            wind.push_back(Expr::parse(w.get<std::string>(), dim, /*allow_y=*/false));
        if (static_cast<int>(wind.size()) != dim)
            throw ParseError("metric-spec", "wind must have dim components");
        return {name, dim, domain_from_json(params, dim, 1.0),
                make_kernel(NavigationF{std::move(wind)}),
                /*reversible=*/false, false,
                params.contains("K") ? std::optional<double>(params["K"].get<double>())
                                     : std::nullopt,
                params.contains("S") ? std::optional<double>(params["S"].get<double>())
                                     : std::nullopt};
    }
    if (kind == "custom-expression") {
        if (dim < 2) throw ParseError("metric-spec", "custom-expression requires dim >= 2");
        if (!params.contains("F"))
            throw ParseError("metric-spec", "custom-expression requires params.F");
        Expr expr = Expr::parse(params.at("F").get<std::string>(), dim);
        return {name, dim, domain_from_json(params, dim, 1.0),
                make_kernel(ExpressionF{std::move(expr)}),
                params.value("reversible", false), params.value("pseudo", false),
                params.contains("K") ? std::optional<double>(params["K"].get<double>())
                                     : std::nullopt,
                params.contains("S") ? std::optional<double>(params["S"].get<double>())
                                     : std::nullopt};
    }
    throw ParseError("metric-spec", "unknown metric kind '" + kind + "'");
}

}  // namespace

FinslerMetric metric_from_json_text(const std::string& text) {
    json spec;
    try {
        spec = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError("metric-spec", std::string("invalid JSON: ") + e.what());
    }
    try {
        return from_json(spec);
    } catch (const json::exception& e) {
        throw ParseError("metric-spec", std::string("bad metric spec: ") + e.what());
    }
}

FinslerMetric load_metric_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("metric-spec", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return metric_from_json_text(ss.str());
}

FinslerMetric make_zoo_metric(const std::string& name, int dim) {
    if (name == "euclidean") return make_euclidean(dim);
    if (name == "sphere") return make_sphere(dim);
    if (name == "hyperbolic") return make_hyperbolic(dim);
    if (name == "funk") return make_funk(dim);
    if (name == "randers-flat") return make_randers_flat(dim, 0.5);
    if (name == "fish-tank") return make_fish_tank();
    if (name == "berwald-moor") return make_berwald_moor(dim);
    if (name == "perturbed") return make_perturbed(dim);
    if (name == "randers-radial") {
        auto f = make_scalar_kernel([](const auto& r) { return 0.5 * r / (1.0 + r); });
        return make_radial_randers(dim, f, 0.5);
    }
    throw ParseError("zoo", "unknown zoo metric '" + name + "'");
}

}  // namespace finsler
