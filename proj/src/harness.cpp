#include "ellab/harness.hpp"

#include <cmath>

#include "ellab/catalog.hpp"

namespace ellab {

namespace {

const std::vector<double>& theta_grid() {
    static const std::vector<double> g = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    return g;
}

/// General smoothstep S_N on [0,1]: degree 2N+1 polynomial with S(0)=0,
/// S(1)=1 and derivatives through order N vanishing at both ends.
double smoothstep(int N, double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double acc = 0.0;
    for (int k = 0; k <= N; ++k)
        acc += binomial(N + k, k) * binomial(2 * N + 1, N - k) * std::pow(-t, k);
    return std::pow(t, N + 1) * acc;
}

/// max |S_N'| on [0,1], by dense sampling (the maximum sits at t = 1/2).
double smoothstep_slope(int N) {
    double best = 0.0;
    const int kSamples = 4096;
    for (int i = 1; i < kSamples; ++i) {
        const double t = static_cast<double>(i) / kSamples;
        const double d = (smoothstep(N, t + 0.5 / kSamples) - smoothstep(N, t - 0.5 / kSamples)) *
                         kSamples;
        best = std::max(best, std::abs(d));
    }
    return best;
}

/// Component-sum Morrey norm of all order-k derivatives of u.
double derivative_morrey(const GridFunction& u, int k, double p, double lambda,
                         const Region& region, const BallFamily& balls) {
    if (k == 0) return morrey_norm(u, p, lambda, region, balls);
    double acc = 0.0;
    for (const auto& alpha : multiindices_of_length(u.grid().dim(), k))
        acc += morrey_norm(finite_difference(u, alpha), p, lambda, region, balls);
    return acc;
}

BallFamily experiment_balls(const Experiment& exp, const Region& region) {
    return make_ball_family(exp.u.grid(), region, exp.center_stride);
}

}  // namespace

double theta_prime(double theta) {
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("theta_prime: theta must lie in (0,1)");
    return theta * (3.0 - theta) / 2.0;
}

CutoffReport cutoff(const Grid& grid, const Vec& center, double r, double theta, int smooth) {
    if (smooth < 1) throw std::invalid_argument("cutoff: smooth order must be >= 1");
    const double tp = theta_prime(theta);
    const Region& box = grid.region();
    for (int i = 0; i < grid.dim(); ++i)
        if (center[i] - tp * r < box.lo()[i] || center[i] + tp * r > box.hi()[i])
            throw std::invalid_argument("cutoff: support ball B_{theta' r} exceeds the grid");

    const double width = (tp - theta) * r;  // = theta (1 - theta) r / 2
    Eigen::MatrixXd vals(grid.size(), 1);
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const double d = (grid.coords(i) - center).norm();
        vals(i, 0) = 1.0 - smoothstep(smooth, (d - theta * r) / width);
    }
    GridFunction phi(grid, 1, std::move(vals),
                     Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(grid.size(), true));

    const double envelope = 2.0 * smoothstep_slope(smooth) / (theta * (1.0 - theta) * r);
    double grad = 0.0;
    for (int axis = 0; axis < grid.dim(); ++axis) {
        auto d = finite_difference(phi, Multiindex::unit(grid.dim(), axis, 1));
        for (std::int64_t i = 0; i < grid.size(); ++i)
            if (d.is_valid(i)) grad = std::max(grad, std::abs(d.value(i)));
    }
    return CutoffReport{std::move(phi), tp, grad, envelope, grad / envelope};
}

CaccioppoliReport caccioppoli_check(const Experiment& exp, double r) {
    const int b = exp.A.order_half();
    const Region inner = Region::ball(exp.center, 0.5 * r);
    const Region outer = Region::ball(exp.center, r);
    const BallFamily inner_balls = experiment_balls(exp, inner);
    const BallFamily outer_balls = experiment_balls(exp, outer);

    CaccioppoliReport rep;
    rep.r = r;
    rep.lhs = derivative_morrey(exp.u, 2 * b, exp.p, exp.lambda, inner, inner_balls);
    const GridFunction f = apply_operator(exp.A, exp.u);
    rep.f_part = morrey_norm(f, exp.p, exp.lambda, outer, outer_balls);
    rep.u_part = std::pow(r, -2.0 * b) * morrey_norm(exp.u, exp.p, exp.lambda, outer, outer_balls);
    rep.trivial = rep.lhs == 0.0;
    const double rhs = rep.f_part + rep.u_part;
    rep.implied_constant = rhs > 0.0 ? rep.lhs / rhs : 0.0;
    return rep;
}

std::vector<double> theta_seminorms(const Experiment& exp, double r,
                                    const std::vector<int>& s_list) {
    std::vector<double> out;
    out.reserve(s_list.size());
    for (int s : s_list) {
        if (s < 0 || s > exp.A.order())
            throw std::invalid_argument("theta_seminorms: s must lie in [0, 2b]");
        double best = 0.0;
        for (double theta : theta_grid()) {
            const Region ball = Region::ball(exp.center, theta * r);
            const BallFamily balls = experiment_balls(exp, ball);
            const double norm = derivative_morrey(exp.u, s, exp.p, exp.lambda, ball, balls);
            best = std::max(best, std::pow(theta * (1.0 - theta) * r, s) * norm);
        }
        out.push_back(best);
    }
    return out;
}

InterpolationReport interpolation_check(const Experiment& exp, double r, int s,
                                        const std::vector<double>& eps_list) {
    const int b = exp.A.order_half();
    if (s < 1 || s > 2 * b - 1)
        throw std::invalid_argument("interpolation_check: s must lie in [1, 2b-1]");
    const auto thetas = theta_seminorms(exp, r, {0, s, 2 * b});

    InterpolationReport rep;
    rep.theta_0 = thetas[0];
    rep.theta_s = thetas[1];
    rep.theta_2b = thetas[2];
    if (rep.theta_0 == 0.0 && rep.theta_s > 0.0)
        throw std::domain_error("interpolation_check: Theta_0 = 0 with Theta_s > 0");

    const double expo = static_cast<double>(s) / (2 * b - s);
    for (double eps : eps_list) {
        if (!(eps > 0.0 && eps < 2.0))
            throw std::invalid_argument("interpolation_check: eps must lie in (0, 2)");
        InterpolationRow row;
        row.eps = eps;
        const double deficit = std::max(0.0, rep.theta_s - eps * rep.theta_2b);
        row.c_min = rep.theta_0 > 0.0 ? deficit * std::pow(eps, expo) / rep.theta_0 : 0.0;
        rep.max_c = std::max(rep.max_c, row.c_min);
        rep.rows.push_back(row);
    }
    return rep;
}

std::vector<CommutatorScanRow> commutator_smallness_scan(
    const std::string& a_id, const nlohmann::json& a_params, const Kernel& K,
    const Multiindex& alpha, const std::vector<double>& radii, double p, double lambda,
    int cells_per_radius) {
    const int n = K.dim();
    std::vector<CommutatorScanRow> out;
    for (double r : radii) {
        // The grid scales with r, so the discretizations at different radii
        // are geometrically similar and ratios reflect the continuum scaling.
        const double h = r / cells_per_radius;
        const Grid grid(Region::box(Vec::Constant(n, -1.5 * r), Vec::Constant(n, 1.5 * r)), h);
        const Region ball = Region::ball(Vec::Zero(n), r);
        const GridFunction a = sample(a_id, a_params, grid);
        const GridFunction f =
            sample("bump", nlohmann::json{{"radius", 0.5 * r}}, grid);
        const GridFunction c = commutator(K, alpha, a, f, ball);
        const BallFamily balls = make_ball_family(grid, ball, 2, r);

        CommutatorScanRow row;
        row.r = r;
        const double fnorm = morrey_norm(f, p, lambda, ball, balls);
        row.ratio = fnorm > 0.0 ? morrey_norm(c, p, lambda, ball, balls) / fnorm : 0.0;
        row.eta_a = vmo_modulus(a, r, ball, balls);
        out.push_back(row);
    }
    return out;
}

RegularityReport regularity_experiment(const Experiment& exp, int s, std::int64_t pair_budget) {
    const int n = exp.A.dim(), b = exp.A.order_half();
    auto verdict = classify(n, b, s, exp.p, exp.lambda);  // throws outside the stated ranges
    if (verdict.kind != RegularityCase::Holder)
        throw std::invalid_argument("regularity_experiment: (p,lambda,s) is not a case-c configuration");

    RegularityReport rep;
    rep.sigma = (2.0 * b - s) - (n - exp.lambda) / exp.p;

    const BallFamily outer_balls = experiment_balls(exp, exp.omega_second);
    const GridFunction f = apply_operator(exp.A, exp.u);
    rep.data_norm = morrey_norm(f, exp.p, exp.lambda, exp.omega_second, outer_balls) +
                    morrey_norm(exp.u, exp.p, exp.lambda, exp.omega_second, outer_balls);

    const BallFamily inner_balls = experiment_balls(exp, exp.omega_prime);
    const double mu = (2.0 * b - s) * exp.p + exp.lambda;
    double holder = 0.0, inflated = 0.0, camp = 0.0;
    for (const auto& alpha : multiindices_of_length(n, s)) {
        const GridFunction d = finite_difference(exp.u, alpha);
        holder += holder_seminorm(d, rep.sigma, exp.omega_prime, pair_budget);
        inflated += holder_seminorm(d, rep.sigma + 0.1, exp.omega_prime, pair_budget);
        camp += campanato_seminorm(d, exp.p, mu, exp.omega_prime, inner_balls);
    }
    if (rep.data_norm <= 0.0)
        throw std::domain_error("regularity_experiment: vanishing data norm");
    rep.holder_ratio = holder / rep.data_norm;
    rep.inflated_ratio = inflated / rep.data_norm;
    rep.campanato = camp;
    return rep;
}

}  // namespace ellab
