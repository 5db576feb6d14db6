#include "ellab/catalog.hpp"

#include <cmath>
#include <functional>
#include <nlohmann/json.hpp>

namespace ellab {

namespace {

using nlohmann::json;

Vec center_param(const json& params, int n) {
    if (!params.contains("center")) return Vec::Zero(n);
    const auto& c = params.at("center");
    if (static_cast<int>(c.size()) != n)
        throw std::invalid_argument("catalog: center dimension mismatch");
    Vec out(n);
    for (int i = 0; i < n; ++i) out[i] = c.at(i).get<double>();
    return out;
}

struct Entry {
    std::function<double(const Vec&)> f;
    // Nodes where the function is singular; these are flagged excluded.
    std::function<bool(const Vec&)> excluded = nullptr;
};

Entry make_entry(const std::string& id, const json& params, int n) {
    if (id == "constant") {
        const double c = params.at("value").get<double>();
        return {[c](const Vec&) { return c; }};
    }
    if (id == "monomial") {
        std::vector<int> a = params.at("alpha").get<std::vector<int>>();
        if (static_cast<int>(a.size()) != n)
            throw std::invalid_argument("catalog monomial: alpha dimension mismatch");
        return {[a](const Vec& x) {
            double v = 1.0;
            for (std::size_t i = 0; i < a.size(); ++i) v *= std::pow(x[static_cast<int>(i)], a[i]);
            return v;
        }};
    }
    if (id == "coordinate") {
        const int axis = params.at("axis").get<int>();
        return {[axis](const Vec& x) { return x[axis]; }};
    }
    if (id == "radial_power") {
        const double g = params.at("exponent").get<double>();
        const Vec c = center_param(params, n);
        Entry e;
        e.f = [g, c](const Vec& x) { return std::pow((x - c).norm(), g); };
        if (g < 0.0)
            e.excluded = [c](const Vec& x) { return (x - c).norm() < 1e-12; };
        return e;
    }
    if (id == "sign") {
        const int axis = params.at("axis").get<int>();
        return {[axis](const Vec& x) { return x[axis] > 0.0 ? 1.0 : (x[axis] < 0.0 ? -1.0 : 0.0); }};
    }
    if (id == "sin_cos") {
        if (n < 2) throw std::invalid_argument("catalog sin_cos: needs n >= 2");
        return {[](const Vec& x) { return std::sin(x[0]) * std::cos(x[1]); }};
    }
    if (id == "harmonic_quad") {
        if (n < 2) throw std::invalid_argument("catalog harmonic_quad: needs n >= 2");
        return {[](const Vec& x) { return x[0] * x[0] - x[1] * x[1]; }};
    }
    if (id == "bump") {
        const double R = params.at("radius").get<double>();
        const int k = params.value("power", 8);
        const Vec c = center_param(params, n);
        return {[R, k, c](const Vec& x) {
            const double t = (x - c).squaredNorm() / (R * R);
            return t >= 1.0 ? 0.0 : std::pow(1.0 - t, k);
        }};
    }
    if (id == "indicator_ball") {
        const double R = params.at("radius").get<double>();
        const Vec c = center_param(params, n);
        return {[R, c](const Vec& x) { return (x - c).norm() <= R ? 1.0 : 0.0; }};
    }
    if (id == "one_plus_sin") {
        const int axis = params.value("axis", 0);
        const double a = params.value("amplitude", 0.1);
        return {[axis, a](const Vec& x) { return 1.0 + a * std::sin(x[axis]); }};
    }
    throw std::invalid_argument("catalog: unknown id '" + id + "'");
}

}  // namespace

GridFunction sample(const std::string& catalog_id, const nlohmann::json& params, const Grid& grid) {
    const Entry e = make_entry(catalog_id, params, grid.dim());
    Eigen::MatrixXd vals(grid.size(), 1);
    Eigen::Array<bool, Eigen::Dynamic, 1> valid(grid.size());
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const Vec x = grid.coords(i);
        if (e.excluded && e.excluded(x)) {
            vals(i, 0) = 0.0;
            valid[i] = false;
            continue;
        }
        const double v = e.f(x);
        if (!std::isfinite(v))
            throw std::runtime_error("catalog '" + catalog_id + "': non-finite value at a node not flagged excluded");
        vals(i, 0) = v;
        valid[i] = true;
    }
    return GridFunction(grid, 1, std::move(vals), std::move(valid));
}

double catalog_eval(const std::string& catalog_id, const nlohmann::json& params, const Vec& x) {
    return make_entry(catalog_id, params, static_cast<int>(x.size())).f(x);
}

}  // namespace ellab
