#include "ellab/kernels.hpp"

#include <cmath>
#include <numbers>

#include "ellab/spaces.hpp"
#include "ellab/sphere.hpp"

namespace ellab {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<KernelTerm> merge(std::vector<KernelTerm> terms) {
    std::map<std::tuple<std::vector<int>, int, int>, double> acc;
    for (const auto& t : terms) acc[{t.beta.entries(), t.rexp, t.logpow}] += t.coef;
    std::vector<KernelTerm> out;
    for (const auto& [key, c] : acc)
        if (c != 0.0) out.push_back({c, Multiindex(std::get<0>(key)), std::get<1>(key), std::get<2>(key)});
    return out;
}

}  // namespace

namespace {

double int_pow(double base, int e) {
    if (e < 0) return 1.0 / int_pow(base, -e);
    double r = 1.0;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

}  // namespace

double KernelField::eval(const Vec& x) const {
    const Vec z = lin_ ? Vec(*lin_ * x) : x;
    const double r = z.norm();
    const double logr = has_log() ? std::log(r) : 0.0;
    double v = 0.0;
    for (const auto& t : terms_) {
        // Odd negative exponents need one factor of r explicitly.
        double term = t.coef;
        if (t.rexp % 2 == 0)
            term *= int_pow(r * r, t.rexp / 2);
        else
            term *= int_pow(r * r, (t.rexp - 1) / 2) * r;
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < t.beta[i]; ++k) term *= z[i];
        for (int q = 0; q < t.logpow; ++q) term *= logr;
        v += term;
    }
    return v;
}

KernelField KernelField::derivative_axis(int axis) const {
    // d/dz_j of c z^beta r^e log^q r:
    //   c beta_j z^{beta-e_j} r^e log^q + c e z^{beta+e_j} r^{e-2} log^q
    //   + c q z^{beta+e_j} r^{e-2} log^{q-1}
    auto dz = [&](const std::vector<KernelTerm>& in, int j) {
        std::vector<KernelTerm> out;
        for (const auto& t : in) {
            if (t.beta[j] > 0) out.push_back({t.coef * t.beta[j], t.beta.minus(j), t.rexp, t.logpow});
            if (t.rexp != 0) out.push_back({t.coef * t.rexp, t.beta.plus(j), t.rexp - 2, t.logpow});
            if (t.logpow > 0) out.push_back({t.coef * t.logpow, t.beta.plus(j), t.rexp - 2, t.logpow - 1});
        }
        return out;
    };

    std::vector<KernelTerm> out;
    if (!lin_) {
        out = dz(terms_, axis);
    } else {
        // z = L x, so d/dx_i = sum_j L(j,i) d/dz_j.
        for (int j = 0; j < n_; ++j) {
            const double w = (*lin_)(j, axis);
            if (w == 0.0) continue;
            for (auto t : dz(terms_, j)) {
                t.coef *= w;
                out.push_back(t);
            }
        }
    }
    return KernelField(n_, merge(std::move(out)), lin_);
}

const KernelField& Kernel::derivative(const Multiindex& alpha) const {
    if (alpha.dim() != n_) throw std::invalid_argument("Kernel::derivative: dimension mismatch");
    if (alpha.order() > 2 * b_)
        throw std::invalid_argument("Kernel::derivative: |alpha| > 2b unsupported");
    auto it = cache_.find(alpha);
    if (it != cache_.end()) return it->second;
    KernelField f = gamma_;
    for (int axis = 0; axis < n_; ++axis)
        for (int k = 0; k < alpha[axis]; ++k) f = f.derivative_axis(axis);
    return cache_.emplace(alpha, std::move(f)).first->second;
}

Kernel Kernel::laplace(int n) {
    if (n < 2) throw std::invalid_argument("Kernel::laplace: n >= 2 required");
    if (n == 2) {
        // (1/2pi) log|x|; the homogeneous-plus-log special case.
        return Kernel(KernelFamily::Laplace, 2, 1,
                      KernelField(2, {{1.0 / (2.0 * kPi), Multiindex::zero(2), 0, 1}}));
    }
    const double c = -1.0 / ((n - 2) * sphere_area(n));
    return Kernel(KernelFamily::Laplace, n, 1,
                  KernelField(n, {{c, Multiindex::zero(n), 2 - n, 0}}));
}

Kernel Kernel::polyharmonic(int n, int b) {
    if (b < 1) throw std::invalid_argument("Kernel::polyharmonic: b >= 1 required");
    if (b == 1) return laplace(n);
    if (n < 3 || (2 * b - n >= 0 && (2 * b - n) % 2 == 0))
        throw std::invalid_argument(
            "Kernel::polyharmonic: unsupported (family, n) combination (log case)");
    // Delta (C_b |x|^{2b-n}) = C_b (2b-n)(2b-2) |x|^{2(b-1)-n}, so chain down
    // to the Laplace coefficient.
    double c = -1.0 / ((n - 2) * sphere_area(n));
    for (int j = 2; j <= b; ++j) c /= static_cast<double>((2 * j - n) * (2 * j - 2));
    return Kernel(KernelFamily::Polyharmonic, n, b,
                  KernelField(n, {{c, Multiindex::zero(n), 2 * b - n, 0}}));
}

Kernel Kernel::scaled_scalar(const Mat& Q) {
    const int n = static_cast<int>(Q.rows());
    if (n < 3) throw std::invalid_argument("Kernel::scaled_scalar: n >= 3 required");
    if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * Q.cwiseAbs().maxCoeff())
        throw std::invalid_argument("Kernel::scaled_scalar: Q must be symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(Q);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("Kernel::scaled_scalar: Q must be positive definite");
    const Mat inv_sqrt =
        es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
        es.eigenvectors().transpose();
    const double det_factor = 1.0 / std::sqrt(Q.determinant());
    const double c = -det_factor / ((n - 2) * sphere_area(n));
    return Kernel(KernelFamily::ScaledScalar, n, 1,
                  KernelField(n, {{c, Multiindex::zero(n), 2 - n, 0}}, inv_sqrt));
}

CZKernelReport cz_checks(const Kernel& K, const Multiindex& alpha, int sphere_samples) {
    if (K.log_family()) throw std::invalid_argument("cz_checks: log family excluded");
    if (alpha.order() != 2 * K.order_half())
        throw std::invalid_argument("cz_checks: |alpha| must equal 2b");
    const KernelField& D = K.derivative(alpha);

    const auto rule = sphere_quadrature(K.dim(), sphere_samples);
    CZKernelReport rep;
    double integral = 0.0;
    for (int i = 0; i < rule.points.rows(); ++i) {
        const Vec y = rule.points.row(i);
        const double v = D.eval(y);
        integral += rule.weights[i] * v;
        rep.sup_on_sphere = std::max(rep.sup_on_sphere, std::abs(v));
    }
    rep.mean_zero_residual = std::abs(integral);

    const int n = K.dim();
    const Eigen::MatrixXd pts = sphere_points(n, 64);
    for (int i = 0; i < pts.rows(); ++i) {
        const Vec y = pts.row(i);
        for (double t : {2.0, 0.5}) {
            const double res = std::abs(D.eval(t * y) - std::pow(t, -n) * D.eval(y));
            rep.homogeneity_residual =
                std::max(rep.homogeneity_residual, res / (rep.sup_on_sphere + 1.0));
        }
    }
    return rep;
}

namespace {

std::vector<std::int64_t> support_nodes(const GridFunction& f) {
    const Grid& g = f.grid();
    std::vector<std::int64_t> supp;
    for (std::int64_t i = 0; i < g.size(); ++i) {
        if (!f.is_valid(i) || f.values().row(i).cwiseAbs().maxCoeff() == 0.0) continue;
        const auto idx = g.unflat(i);
        for (int a = 0; a < g.dim(); ++a)
            if (idx[a] == 0 || idx[a] == g.count(a) - 1)
                throw std::invalid_argument("kernel operator: f support touches the grid margin");
        supp.push_back(i);
    }
    return supp;
}

std::vector<std::int64_t> eval_nodes(const Grid& g, const Region& region) {
    std::vector<std::int64_t> out;
    for (std::int64_t i = 0; i < g.size(); ++i)
        if (region.contains(g.coords(i))) out.push_back(i);
    return out;
}

/// Midpoint average over a sub-divided singular cell, sub x sub per axis.
double cell_average(const KernelField& k, const Grid& g, int sub) {
    const int n = g.dim();
    const double hs = g.spacing() / sub;
    std::vector<int> idx(n, 0);
    double acc = 0.0;
    int count = 0;
    while (true) {
        Vec d(n);
        for (int a = 0; a < n; ++a) d[a] = -g.spacing() / 2.0 + (idx[a] + 0.5) * hs;
        acc += k.eval(d);
        ++count;
        int a = n - 1;
        while (a >= 0) {
            if (++idx[a] < sub) break;
            idx[a] = 0;
            --a;
        }
        if (a < 0) break;
    }
    return acc / count;
}

}  // namespace

GridFunction newtonian_potential(const Kernel& K, const GridFunction& f, const Region& eval_region) {
    if (f.components() != 1) throw std::invalid_argument("newtonian_potential: scalar f only");
    const Grid& g = f.grid();
    const auto supp = support_nodes(f);
    const auto evals = eval_nodes(g, eval_region);
    const double vol = g.cell_volume();
    const double singular_avg = cell_average(K.derivative(Multiindex::zero(g.dim())), g, 4);

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(g.size(), 1);
    Eigen::Array<bool, Eigen::Dynamic, 1> valid =
        Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(g.size(), false);
    for (std::int64_t x : evals) {
        const Vec xc = g.coords(x);
        double acc = 0.0;
        for (std::int64_t y : supp) {
            if (y == x) {
                acc += singular_avg * f.value(y);
                continue;
            }
            acc += K.eval(xc - g.coords(y)) * f.value(y);
        }
        out(x, 0) = acc * vol;
        valid[x] = true;
    }
    return GridFunction(g, 1, std::move(out), std::move(valid));
}

GridFunction singular_operator(const Kernel& K, const Multiindex& alpha, const GridFunction& f,
                               const Region& eval_region, bool subcell_pv) {
    if (alpha.order() != 2 * K.order_half())
        throw std::invalid_argument("singular_operator: |alpha| must equal 2b");
    const KernelField& D = K.derivative(alpha);
    if (D.has_log()) throw std::invalid_argument("singular_operator: log-bearing kernel derivative");
    if (f.components() != 1) throw std::invalid_argument("singular_operator: scalar f only");

    const Grid& g = f.grid();
    const auto supp = support_nodes(f);
    const auto evals = eval_nodes(g, eval_region);
    const double vol = g.cell_volume();
    double singular_avg = 0.0;
    if (subcell_pv) singular_avg = cell_average(D, g, 2);

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(g.size(), 1);
    Eigen::Array<bool, Eigen::Dynamic, 1> valid =
        Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(g.size(), false);
    for (std::int64_t x : evals) {
        const Vec xc = g.coords(x);
        double acc = 0.0;
        for (std::int64_t y : supp) {
            if (y == x) {
                acc += singular_avg * f.value(y);
                continue;
            }
            acc += D.eval(xc - g.coords(y)) * f.value(y);
        }
        out(x, 0) = acc * vol;
        valid[x] = true;
    }
    return GridFunction(g, 1, std::move(out), std::move(valid));
}

GridFunction commutator(const Kernel& K, const Multiindex& alpha, const GridFunction& a,
                        const GridFunction& f, const Region& eval_region) {
    if (alpha.order() != 2 * K.order_half())
        throw std::invalid_argument("commutator: |alpha| must equal 2b");
    const KernelField& D = K.derivative(alpha);
    if (D.has_log()) throw std::invalid_argument("commutator: log-bearing kernel derivative");
    if (a.components() != 1 || f.components() != 1)
        throw std::invalid_argument("commutator: scalar fields only");
    if (!a.grid().same_layout(f.grid())) throw std::invalid_argument("commutator: grid mismatch");

    const Grid& g = f.grid();
    const auto supp = support_nodes(f);
    const auto evals = eval_nodes(g, eval_region);
    const double vol = g.cell_volume();

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(g.size(), 1);
    Eigen::Array<bool, Eigen::Dynamic, 1> valid =
        Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(g.size(), false);
    for (std::int64_t x : evals) {
        const Vec xc = g.coords(x);
        const double ax = a.value(x);
        double acc = 0.0;
        for (std::int64_t y : supp) {
            if (y == x) continue;  // integrand vanishes: a(x) - a(x) = 0
            acc += D.eval(xc - g.coords(y)) * (ax - a.value(y)) * f.value(y);
        }
        out(x, 0) = acc * vol;
        valid[x] = true;
    }
    return GridFunction(g, 1, std::move(out), std::move(valid));
}

double surface_term(const Kernel& K, const Multiindex& alpha, int s_axis, int sphere_samples) {
    if (alpha.order() != 2 * K.order_half())
        throw std::invalid_argument("surface_term: |alpha| must equal 2b");
    if (alpha[s_axis] < 1) throw std::invalid_argument("surface_term: alpha_s must be >= 1");
    const KernelField& D = K.derivative(alpha.minus(s_axis));
    const auto rule = sphere_quadrature(K.dim(), sphere_samples);
    double acc = 0.0;
    for (int i = 0; i < rule.points.rows(); ++i) {
        const Vec y = rule.points.row(i);
        acc += rule.weights[i] * D.eval(y) * y[s_axis];
    }
    return acc;
}

double representation_check(const GridFunction& v, const CoefficientField& A, const Kernel& K,
                            const Multiindex& alpha, const Region& eval_region,
                            const RepresentationOptions& opts) {
    if (A.system_size() != 1)
        throw std::invalid_argument("representation_check: scalar systems only");
    const GridFunction f = apply_operator(A, v);
    const GridFunction lhs = finite_difference(v, alpha);

    // Differentiation order: the surface term uses the first axis carrying a
    // derivative (any valid choice yields the same identity).
    int s_axis = 0;
    while (alpha[s_axis] == 0) ++s_axis;
    const double surf = surface_term(K, alpha, s_axis, opts.sphere_samples);

    GridFunction rhs = singular_operator(K, alpha, f, eval_region);
    for (const auto& [aprime, entry] : A.entries()) {
        if (!entry.modulation) continue;  // constant coefficient: commutator vanishes
        const GridFunction dav = finite_difference(v, aprime);
        const GridFunction scaled_mod(
            v.grid(), 1, entry.matrix(0, 0) * entry.modulation->values(), entry.modulation->valid());
        rhs = rhs.plus(commutator(K, alpha, scaled_mod, dav, eval_region));
    }

    Eigen::MatrixXd vals = rhs.values();
    Eigen::Array<bool, Eigen::Dynamic, 1> valid = rhs.valid() && f.valid() && lhs.valid();
    for (std::int64_t i = 0; i < v.grid().size(); ++i) {
        if (!valid[i]) {
            vals(i, 0) = 0.0;
            continue;
        }
        vals(i, 0) += surf * f.value(i);
        if (opts.freeze_scale) vals(i, 0) /= opts.freeze_scale->value(i);
        vals(i, 0) -= lhs.value(i);
    }
    const GridFunction diff(v.grid(), 1, std::move(vals), valid);
    Eigen::MatrixXd lhs_vals = lhs.values();
    for (std::int64_t i = 0; i < v.grid().size(); ++i)
        if (!valid[i]) lhs_vals(i, 0) = 0.0;
    const GridFunction lhs_masked(v.grid(), 1, std::move(lhs_vals), valid);
    const double num = lp_norm(diff, opts.p, eval_region);
    const double den = lp_norm(lhs_masked, opts.p, eval_region);
    return den > 0.0 ? num / den : num;
}

}  // namespace ellab
