#pragma once

#include <map>
#include <optional>

#include "ellab/grid.hpp"
#include "ellab/symbol.hpp"

namespace ellab {

/// One summand of a closed-form kernel: coef * z^beta * |z|^rexp * log^logpow |z|,
/// in the (possibly linearly transformed) variable z = L x. The family is
/// closed under differentiation, which is how all kernel derivatives up to
/// order 2b are produced analytically.
struct KernelTerm {
    double coef;
    Multiindex beta;
    int rexp;
    int logpow;
};

class KernelField {
public:
    KernelField(int n, std::vector<KernelTerm> terms,
                std::optional<Eigen::MatrixXd> lin = {})
        : n_(n), terms_(std::move(terms)), lin_(std::move(lin)) {}

    int dim() const { return n_; }
    const std::vector<KernelTerm>& terms() const { return terms_; }

    bool has_log() const {
        for (const auto& t : terms_)
            if (t.logpow > 0) return true;
        return false;
    }

    double eval(const Vec& x) const;

    /// d/dx_axis, staying inside the term family.
    KernelField derivative_axis(int axis) const;

private:
    int n_;
    std::vector<KernelTerm> terms_;
    std::optional<Eigen::MatrixXd> lin_;  // z = lin * x; empty = identity
};

enum class KernelFamily { Laplace, Polyharmonic, ScaledScalar };

/// Fundamental solution Gamma of a supported constant-coefficient scalar
/// operator, normalized so the Newtonian potential inverts the operator.
class Kernel {
public:
    KernelFamily family() const { return family_; }
    int dim() const { return n_; }
    int order_half() const { return b_; }
    /// Homogeneity degree of Gamma (2b - n); meaningless for the log family.
    int degree() const { return 2 * b_ - n_; }
    bool log_family() const { return gamma_.has_log(); }

    double eval(const Vec& x) const { return gamma_.eval(x); }

    /// Analytic D^alpha Gamma, |alpha| <= 2b; cached.
    const KernelField& derivative(const Multiindex& alpha) const;

    static Kernel laplace(int n);
    /// Delta^b; supported whenever 2b - n is not a non-negative even integer
    /// (that is the log case, which only Laplace n=2 covers).
    static Kernel polyharmonic(int n, int b);
    /// sum_ij Q_ij d_i d_j with Q symmetric positive definite, via the affine
    /// change of variables z = Q^{-1/2} x.
    static Kernel scaled_scalar(const Mat& Q);

private:
    Kernel(KernelFamily f, int n, int b, KernelField gamma)
        : family_(f), n_(n), b_(b), gamma_(std::move(gamma)) {}

    KernelFamily family_;
    int n_, b_;
    KernelField gamma_;
    mutable std::map<Multiindex, KernelField> cache_;
};

struct CZKernelReport {
    double homogeneity_residual = 0.0;
    double mean_zero_residual = 0.0;
    double sup_on_sphere = 0.0;
};

/// Calderon-Zygmund checks for D^alpha Gamma, |alpha| = 2b: relative residual
/// of K(t x) = t^{-n} K(x) for t in {2, 1/2}, and the absolute sphere
/// quadrature of K. Errors on the log family.
CZKernelReport cz_checks(const Kernel& K, const Multiindex& alpha, int sphere_samples);

/// v(x) = sum_cells Gamma(x - y) f(y) h^n on nodes of eval_region; the
/// singular cell is integrated by a 4^n sub-cell midpoint rule. f must vanish
/// on a one-node margin of the grid.
GridFunction newtonian_potential(const Kernel& K, const GridFunction& f, const Region& eval_region);

/// p.v. operator K_alpha f: cell sum of D^alpha Gamma(x-y) f(y) h^n with the
/// singular cell omitted (mean-zero kernel). With subcell_pv the singular
/// cell is instead refined 2^n-fold around its center.
GridFunction singular_operator(const Kernel& K, const Multiindex& alpha, const GridFunction& f,
                               const Region& eval_region, bool subcell_pv = false);

/// Commutator c_alpha[a, f]: cell sum of D^alpha Gamma(x-y) (a(x) - a(y)) f(y) h^n.
GridFunction commutator(const Kernel& K, const Multiindex& alpha, const GridFunction& a,
                        const GridFunction& f, const Region& eval_region);

/// Sphere quadrature of D^{beta^s} Gamma(y) nu_s, beta^s = alpha - e_s;
/// requires alpha_s >= 1.
double surface_term(const Kernel& K, const Multiindex& alpha, int s_axis, int sphere_samples);

struct RepresentationOptions {
    double p = 2.0;
    int sphere_samples = 4096;
    /// Scalar field a with L(x,D) = a(x) * L_K(D); the frozen-coefficient
    /// kernel at x is Gamma / a(x). Empty means a == 1.
    std::optional<GridFunction> freeze_scale;
};

/// Relative L^p residual of the representation of D^alpha v through the
/// p.v. operator, the coefficient commutators, and the surface term.
double representation_check(const GridFunction& v, const CoefficientField& A, const Kernel& K,
                            const Multiindex& alpha, const Region& eval_region,
                            const RepresentationOptions& opts = {});

}  // namespace ellab
