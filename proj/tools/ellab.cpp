#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "ellab/catalog.hpp"
#include "ellab/classifier.hpp"
#include "ellab/harness.hpp"
#include "ellab/kernels.hpp"
#include "ellab/spaces.hpp"
#include "ellab/symbol.hpp"

using namespace ellab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitPropertyFailure = 2;

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    return json::parse(in);
}

/// Flag overrides config overrides default.
template <typename T>
T resolve(const CLI::Option* opt, const T& flag_value, const json& cfg, const char* key,
          const T& fallback) {
    if (opt && opt->count() > 0) return flag_value;
    if (cfg.contains(key)) return cfg.at(key).get<T>();
    return fallback;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << content;
}

void emit_json(const std::string& out_path, const json& doc) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

Multiindex parse_alpha(const std::string& text) {
    std::vector<int> entries;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) entries.push_back(std::stoi(tok));
    if (entries.empty()) throw std::runtime_error("empty multiindex");
    return Multiindex(entries);
}

Grid make_grid(int n, double h, double half) {
    return Grid(Region::box(Vec::Constant(n, -half), Vec::Constant(n, half)), h);
}

json verdict_to_json(const RegularityVerdict& v) {
    json j;
    switch (v.kind) {
        case RegularityCase::MorreyGain: j["case"] = "a"; break;
        case RegularityCase::BMO: j["case"] = "b"; break;
        case RegularityCase::Holder: j["case"] = "c"; break;
    }
    j["space"] = v.space_label;
    if (v.morrey_exponent) j["morrey_exponent"] = v.morrey_exponent->str();
    if (v.morrey_value) j["morrey_value"] = *v.morrey_value;
    if (v.sigma_value) j["sigma"] = *v.sigma_value;
    if (v.holder_degree) j["holder_degree"] = *v.holder_degree;
    if (v.proximity_warning) j["proximity_warning"] = true;
    return j;
}

CoefficientField make_operator(const std::string& family, int n, int b, int m) {
    if (family == "laplacian") return CoefficientField::laplacian(n);
    if (family == "polyharmonic") return CoefficientField::polyharmonic(n, b);
    if (family == "wave") return CoefficientField::wave(n);
    if (family == "diagonal") return CoefficientField::diagonal_laplacians(n, m);
    throw std::runtime_error("unknown operator family: " + family);
}

// ---------------------------------------------------------------------------
// classify

int run_classify(const json& cfg, int n, int b, int m, int s, const std::string& p_text,
                 const std::string& lambda_text, bool exact, bool low_order,
                 const std::string& out_path) {
    json doc;
    doc["config"] = {{"subcommand", "classify"}, {"n", n},      {"b", b},
                     {"m", m},                   {"s", s},      {"p", p_text},
                     {"lambda", lambda_text},    {"exact", exact}, {"low_order", low_order}};
    for (auto& [k, v] : cfg.items()) doc["config"].emplace(k, v);

    try {
        RegularityVerdict v;
        if (exact) {
            ProblemParams params;
            params.n = n;
            params.b = b;
            params.m = m;
            params.s = s;
            params.p = Rational::parse(p_text);
            params.lambda = Rational::parse(lambda_text);
            v = low_order ? low_order_holder(params) : classify(params);
        } else {
            if (low_order) throw std::runtime_error("--low-order requires --exact rationals");
            v = classify(n, b, s, std::stod(p_text), std::stod(lambda_text));
        }
        doc["verdict"] = verdict_to_json(v);
    } catch (const NoClaimError& e) {
        doc["verdict"] = {{"case", "no-claim"}, {"detail", e.what()}};
        if (e.suggested_s) doc["verdict"]["suggested_s"] = *e.suggested_s;
    }
    emit_json(out_path, doc);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// diagram

int run_diagram(int n, int b, const std::string& out_path, const std::string& query_text) {
    std::optional<std::pair<double, double>> query;
    if (!query_text.empty()) {
        const auto comma = query_text.find(',');
        if (comma == std::string::npos) throw std::runtime_error("--query expects p,lambda");
        query = {std::stod(query_text.substr(0, comma)), std::stod(query_text.substr(comma + 1))};
    }
    if (out_path.empty()) throw std::runtime_error("diagram requires --out");
    write_file(out_path, render_diagram_svg(n, b, query));

    std::string csv_path = out_path;
    const auto dot = csv_path.rfind('.');
    csv_path = (dot == std::string::npos ? csv_path : csv_path.substr(0, dot)) + ".csv";
    std::string csv = "# config: " +
                      json{{"subcommand", "diagram"}, {"n", n}, {"b", b},
                           {"query", query_text}}.dump() + "\n" + diagram_csv(n, b);
    if (query) {
        const auto c = diagram_point_c(n, query->first, query->second);
        csv += "C,," + fmt(c.first) + "," + fmt(c.second) + "\n";
        const auto loc = locate_in_diagram(n, b, query->first, query->second);
        if (loc && loc->kind == RegularityCase::Holder)
            csv += "CA_length," + std::to_string(loc->s) + "," +
                   fmt(segment_ca_length(n, b, loc->s, query->first, query->second)) + ",\n";
    }
    write_file(csv_path, csv);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// norm

int run_norm(const json& cfg, const std::string& kind, const std::string& u_id,
             const std::string& u_params_text, int n, double h, double half, double p,
             double lambda, double mu, double sigma, double radius_cap,
             const std::string& out_path) {
    const json u_params = u_params_text.empty() ? json::object() : json::parse(u_params_text);
    Grid grid = make_grid(n, h, half);
    GridFunction u = sample(u_id, u_params, grid);
    const Region& region = grid.region();
    const BallFamily balls = make_ball_family(grid, region, 1, radius_cap);

    double value = 0.0;
    if (kind == "lp")
        value = lp_norm(u, p, region);
    else if (kind == "morrey")
        value = morrey_norm(u, p, lambda, region, balls);
    else if (kind == "bmo")
        value = bmo_seminorm(u, region, balls);
    else if (kind == "vmo")
        value = vmo_modulus(u, radius_cap, region, balls);
    else if (kind == "campanato")
        value = campanato_seminorm(u, p, mu, region, balls);
    else if (kind == "holder")
        value = holder_seminorm(u, sigma, region, 200000);
    else
        throw std::runtime_error("unknown norm kind: " + kind);

    json doc;
    doc["config"] = {{"subcommand", "norm"}, {"kind", kind},     {"u", u_id},
                     {"u_params", u_params}, {"n", n},           {"h", h},
                     {"half", half},         {"p", p},           {"lambda", lambda},
                     {"mu", mu},             {"sigma", sigma},   {"radius_cap", radius_cap}};
    for (auto& [k, v] : cfg.items()) doc["config"].emplace(k, v);
    doc["value"] = value;
    emit_json(out_path, doc);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// symbol

int run_symbol(const std::string& family, int n, int b, int m, int sphere_samples,
               const std::string& out_path) {
    CoefficientField A = make_operator(family, n, b, m);
    auto rep = ellipticity_constant(A, nullptr, nullptr, sphere_samples);

    // Cofactor identity residual at a few fixed directions.
    double worst = 0.0;
    for (int axis = 0; axis < n; ++axis) {
        Vec xi = Vec::Zero(n);
        xi[axis] = 1.0;
        worst = std::max(worst, verify_cofactor_identity(A, 0, xi));
    }
    Vec diag = Vec::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    worst = std::max(worst, verify_cofactor_identity(A, 0, diag));

    json doc;
    doc["config"] = {{"subcommand", "symbol"}, {"family", family},
                     {"n", n},                 {"b", b},
                     {"m", m},                 {"sphere_samples", sphere_samples}};
    doc["ellipticity"] = {{"delta", rep.delta}, {"elliptic", rep.elliptic}};
    doc["cofactor_residual"] = worst;
    emit_json(out_path, doc);
    return rep.elliptic || family == "wave" ? kExitOk : kExitPropertyFailure;
}

// ---------------------------------------------------------------------------
// kernel-check

int run_kernel_check(const std::string& family, int n, int b, const std::string& alpha_text,
                     int sphere_samples, const std::string& out_path) {
    Kernel K = family == "laplace" ? Kernel::laplace(n) : Kernel::polyharmonic(n, b);
    const Multiindex alpha = parse_alpha(alpha_text);
    auto rep = cz_checks(K, alpha, sphere_samples);

    json doc;
    doc["config"] = {{"subcommand", "kernel-check"}, {"family", family},
                     {"n", n},                       {"b", b},
                     {"alpha", alpha_text},          {"sphere_samples", sphere_samples}};
    doc["homogeneity_residual"] = rep.homogeneity_residual;
    doc["mean_zero_residual"] = rep.mean_zero_residual;
    doc["sup_on_sphere"] = rep.sup_on_sphere;
    int s_axis = -1;
    for (int i = 0; i < n; ++i)
        if (alpha.entries()[i] >= 1) {
            s_axis = i;
            break;
        }
    if (s_axis >= 0) doc["surface_term"] = surface_term(K, alpha, s_axis, sphere_samples);
    emit_json(out_path, doc);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// represent

int run_represent(const json& cfg, const std::string& u_id, const std::string& u_params_text,
                  int n, double h, double half, const std::string& alpha_text, double eval_r,
                  const std::string& out_path) {
    const json u_params = u_params_text.empty() ? json::object() : json::parse(u_params_text);
    Grid grid = make_grid(n, h, half);
    GridFunction u = sample(u_id, u_params, grid);
    Kernel K = Kernel::laplace(n);
    CoefficientField A = CoefficientField::laplacian(n);
    const Multiindex alpha = parse_alpha(alpha_text);
    const Region eval_region = Region::ball(Vec::Zero(n), eval_r);
    const double residual = representation_check(u, A, K, alpha, eval_region);

    json doc;
    doc["config"] = {{"subcommand", "represent"}, {"u", u_id},   {"u_params", u_params},
                     {"n", n},                    {"h", h},      {"half", half},
                     {"alpha", alpha_text},       {"eval_r", eval_r}};
    for (auto& [k, v] : cfg.items()) doc["config"].emplace(k, v);
    doc["relative_residual"] = residual;
    emit_json(out_path, doc);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify suites

struct SuiteResult {
    std::string csv;
    json properties = json::object();
};

SuiteResult suite_commutator(const json& cfg) {
    const int n = cfg.value("n", 3);
    const std::string a_id = cfg.value("a", "coordinate");
    const json a_params = cfg.value("a_params", json{{"axis", 0}});
    const Multiindex alpha = parse_alpha(cfg.value("alpha", std::string("2,0,0")));
    const std::vector<double> radii = cfg.value("radii", std::vector<double>{0.4, 0.2, 0.1});
    const double p = cfg.value("p", 2.0), lambda = cfg.value("lambda", 1.0);
    const int cells = cfg.value("cells_per_radius", 8);
    const std::string expect = cfg.value("expect", std::string());

    Kernel K = Kernel::laplace(n);
    auto rows = commutator_smallness_scan(a_id, a_params, K, alpha, radii, p, lambda, cells);

    SuiteResult out;
    out.csv = "r,ratio,eta_a\n";
    for (const auto& row : rows)
        out.csv += fmt(row.r) + "," + fmt(row.ratio) + "," + fmt(row.eta_a) + "\n";
    if (!expect.empty() && rows.size() >= 2) {
        const double first = rows.front().ratio, last = rows.back().ratio;
        if (expect == "decay")
            out.properties["ratio_decays"] = first > 0.0 && last <= 0.5 * first;
        else if (expect == "no-decay")
            out.properties["ratio_persists"] = last >= 0.8 * first;
        else
            throw std::runtime_error("expect must be decay or no-decay");
    }
    return out;
}

Experiment experiment_from_config(const json& cfg) {
    const int n = cfg.value("n", 2);
    const int b = cfg.value("b", 1);
    const int m = cfg.value("m", 1);
    const double h = cfg.value("h", 0.05);
    const double half = cfg.value("half", 0.6);
    Grid grid = make_grid(n, h, half);
    GridFunction u = sample(cfg.value("u", std::string("sin_cos")),
                            cfg.value("u_params", json::object()), grid);
    Experiment e{make_operator(cfg.value("operator", std::string("laplacian")), n, b, m),
                 std::move(u),
                 Region::ball(Vec::Zero(n), cfg.value("inner_r", 0.2)),
                 Region::ball(Vec::Zero(n), cfg.value("outer_r", 0.4)),
                 Vec::Zero(n)};
    e.p = cfg.value("p", 2.0);
    e.lambda = cfg.value("lambda", 1.0);
    e.radii = cfg.value("radii", std::vector<double>{0.4, 0.2, 0.1});
    e.center_stride = cfg.value("center_stride", 1);
    return e;
}

SuiteResult suite_caccioppoli(const json& cfg) {
    Experiment e = experiment_from_config(cfg);
    SuiteResult out;
    out.csv = "r,lhs,f_part,u_part,implied_constant,trivial\n";
    double lo = 1e300, hi = 0.0;
    bool any = false;
    for (double r : e.radii) {
        auto rep = caccioppoli_check(e, r);
        out.csv += fmt(rep.r) + "," + fmt(rep.lhs) + "," + fmt(rep.f_part) + "," +
                   fmt(rep.u_part) + "," + fmt(rep.implied_constant) + "," +
                   (rep.trivial ? "1" : "0") + "\n";
        if (!rep.trivial) {
            lo = std::min(lo, rep.implied_constant);
            hi = std::max(hi, rep.implied_constant);
            any = true;
        }
    }
    out.properties["implied_constant_within_4x"] = any && lo > 0.0 && hi / lo <= 4.0;
    return out;
}

SuiteResult suite_interpolation(const json& cfg) {
    Experiment e = experiment_from_config(cfg);
    const double r = cfg.value("r", e.radii.front());
    const int s = cfg.value("s", 1);
    const std::vector<double> eps = cfg.value("eps", std::vector<double>{0.1, 0.5, 1.0, 1.9});
    auto rep = interpolation_check(e, r, s, eps);

    SuiteResult out;
    out.csv = "eps,c_min\n";
    double lo = 1e300, hi = 0.0;
    for (const auto& row : rep.rows) {
        out.csv += fmt(row.eps) + "," + fmt(row.c_min) + "\n";
        lo = std::min(lo, row.c_min);
        hi = std::max(hi, row.c_min);
    }
    out.properties["c_min_within_10x"] = hi == 0.0 || (lo > 0.0 && hi / lo <= 10.0);
    return out;
}

SuiteResult suite_regularity(const json& cfg) {
    Experiment e = experiment_from_config(cfg);
    const int s = cfg.value("s", 1);
    auto rep = regularity_experiment(e, s, cfg.value("pair_budget", std::int64_t{20000}));

    SuiteResult out;
    out.csv = "sigma,data_norm,holder_ratio,inflated_ratio,campanato\n";
    out.csv += fmt(rep.sigma) + "," + fmt(rep.data_norm) + "," + fmt(rep.holder_ratio) + "," +
               fmt(rep.inflated_ratio) + "," + fmt(rep.campanato) + "\n";
    out.properties["holder_ratio_finite"] = std::isfinite(rep.holder_ratio);
    out.properties["campanato_finite"] = std::isfinite(rep.campanato);
    return out;
}

int run_verify(const std::string& suite, const json& cfg, const std::string& out_prefix) {
    SuiteResult result;
    if (suite == "caccioppoli")
        result = suite_caccioppoli(cfg);
    else if (suite == "interpolation")
        result = suite_interpolation(cfg);
    else if (suite == "commutator")
        result = suite_commutator(cfg);
    else if (suite == "regularity")
        result = suite_regularity(cfg);
    else
        throw std::runtime_error("unknown suite: " + suite);

    json meta = {{"subcommand", "verify"}, {"suite", suite}, {"config", cfg}};
    bool all_pass = true;
    for (auto& [k, v] : result.properties.items()) all_pass = all_pass && v.get<bool>();

    const std::string prefix = out_prefix.empty() ? suite : out_prefix;
    write_file(prefix + ".csv", "# config: " + meta.dump() + "\n" + result.csv);
    json summary = meta;
    summary["properties"] = result.properties;
    summary["pass"] = all_pass;
    emit_json(prefix + ".json", summary);
    return all_pass ? kExitOk : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for Morrey-scale regularity of higher-order elliptic systems"};
    app.require_subcommand(1);

    std::string config_path, out_path, p_text = "2", lambda_text = "1";
    int n = 3, b = 1, m = 1, s = 1, sphere_samples = 4096;
    bool exact = false, low_order = false;

    auto* cls = app.add_subcommand("classify", "Classify D^s u per the regularity trichotomy");
    auto* on = cls->add_option("--n", n, "space dimension");
    auto* ob = cls->add_option("--b", b, "half-order of the operator");
    auto* om = cls->add_option("--m", m, "system size");
    auto* os_ = cls->add_option("--s", s, "derivative order");
    auto* op = cls->add_option("--p", p_text, "integrability exponent (rational with --exact)");
    auto* ol = cls->add_option("--lambda", lambda_text, "Morrey exponent");
    cls->add_flag("--exact", exact, "parse p and lambda as exact rationals");
    cls->add_flag("--low-order", low_order, "report the low-order Holder class of u");
    cls->add_option("--config", config_path, "JSON config (flags override)");
    cls->add_option("--out", out_path, "output JSON path (default stdout)");

    std::string query_text;
    auto* dia = app.add_subcommand("diagram", "Render the (p,lambda) phase diagram");
    dia->add_option("--n", n);
    dia->add_option("--b", b);
    dia->add_option("--out", out_path, "SVG output path; CSV written alongside")->required();
    dia->add_option("--query", query_text, "p,lambda point to mark");

    std::string kind = "morrey", u_id = "constant", u_params_text;
    double h = 0.05, half = 1.0, p_num = 2.0, lambda_num = 1.0, mu = 3.0, sigma = 0.5,
           radius_cap = 1.0;
    auto* nrm = app.add_subcommand("norm", "Function-space estimator of a catalog function");
    nrm->add_option("--kind", kind, "lp|morrey|bmo|vmo|campanato|holder");
    nrm->add_option("--u", u_id, "catalog id");
    nrm->add_option("--u-params", u_params_text, "catalog parameters as JSON");
    nrm->add_option("--n", n);
    nrm->add_option("--grid-h", h);
    nrm->add_option("--half", half, "grid box is [-half, half]^n");
    nrm->add_option("--p", p_num);
    nrm->add_option("--lambda", lambda_num);
    nrm->add_option("--mu", mu);
    nrm->add_option("--sigma", sigma);
    nrm->add_option("--radius-cap", radius_cap);
    nrm->add_option("--out", out_path);

    std::string family = "laplacian";
    auto* sym = app.add_subcommand("symbol", "Ellipticity and cofactor checks");
    sym->add_option("--family", family, "laplacian|polyharmonic|wave|diagonal");
    sym->add_option("--n", n);
    sym->add_option("--b", b);
    sym->add_option("--m", m);
    sym->add_option("--sphere-samples", sphere_samples);
    sym->add_option("--out", out_path);

    std::string alpha_text = "2,0,0", kernel_family = "laplace";
    auto* ker = app.add_subcommand("kernel-check", "Calderon-Zygmund checks for D^alpha Gamma");
    ker->add_option("--family", kernel_family, "laplace|polyharmonic");
    ker->add_option("--n", n);
    ker->add_option("--b", b);
    ker->add_option("--alpha", alpha_text, "comma-separated multiindex");
    ker->add_option("--sphere-samples", sphere_samples);
    ker->add_option("--out", out_path);

    double eval_r = 0.3;
    auto* rpr = app.add_subcommand("represent", "Representation-formula residual");
    rpr->add_option("--u", u_id);
    rpr->add_option("--u-params", u_params_text);
    rpr->add_option("--n", n);
    rpr->add_option("--grid-h", h);
    rpr->add_option("--half", half);
    rpr->add_option("--alpha", alpha_text);
    rpr->add_option("--eval-r", eval_r);
    rpr->add_option("--config", config_path);
    rpr->add_option("--out", out_path);

    std::string suite, out_prefix;
    auto* ver = app.add_subcommand("verify", "Run a verification suite");
    ver->add_option("--suite", suite, "caccioppoli|interpolation|commutator|regularity")
        ->required();
    ver->add_option("--config", config_path, "suite JSON config");
    ver->add_option("--out-prefix", out_prefix, "output prefix (default the suite name)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cls->parsed()) {
            const json cfg = load_config(config_path);
            return run_classify(cfg, resolve(on, n, cfg, "n", n), resolve(ob, b, cfg, "b", b),
                                resolve(om, m, cfg, "m", m), resolve(os_, s, cfg, "s", s),
                                resolve(op, p_text, cfg, "p", p_text),
                                resolve(ol, lambda_text, cfg, "lambda", lambda_text), exact,
                                low_order, out_path);
        }
        if (dia->parsed()) return run_diagram(n, b, out_path, query_text);
        if (nrm->parsed())
            return run_norm(json::object(), kind, u_id, u_params_text, n, h, half, p_num,
                            lambda_num, mu, sigma, radius_cap, out_path);
        if (sym->parsed()) return run_symbol(family, n, b, m, sphere_samples, out_path);
        if (ker->parsed())
            return run_kernel_check(kernel_family, n, b, alpha_text, sphere_samples, out_path);
        if (rpr->parsed())
            return run_represent(load_config(config_path), u_id, u_params_text, n, h, half,
                                 alpha_text, eval_r, out_path);
        if (ver->parsed()) return run_verify(suite, load_config(config_path), out_prefix);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
