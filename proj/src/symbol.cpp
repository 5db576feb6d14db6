#include "ellab/symbol.hpp"

#include <cmath>

#include "ellab/sphere.hpp"

namespace ellab {

void CoefficientField::set(const Multiindex& alpha, Mat matrix, std::optional<GridFunction> modulation) {
    if (alpha.dim() != n_ || alpha.order() != 2 * b_)
        throw std::invalid_argument("CoefficientField::set: |alpha| must equal 2b");
    if (matrix.rows() != m_ || matrix.cols() != m_)
        throw std::invalid_argument("CoefficientField::set: matrix must be m x m");
    if (modulation && modulation->components() != 1)
        throw std::invalid_argument("CoefficientField::set: modulation must be scalar");
    entries_[alpha] = Entry{std::move(matrix), std::move(modulation)};
}

double CoefficientField::bound() const {
    double b = 0.0;
    for (const auto& [alpha, e] : entries_) {
        double mod = 1.0;
        if (e.modulation) mod = e.modulation->values().cwiseAbs().maxCoeff();
        b = std::max(b, mod * e.matrix.cwiseAbs().maxCoeff());
    }
    return b;
}

bool CoefficientField::has_variable_entries() const {
    for (const auto& [alpha, e] : entries_)
        if (e.modulation) return true;
    return false;
}

Mat CoefficientField::at(const Multiindex& alpha, std::int64_t node) const {
    auto it = entries_.find(alpha);
    if (it == entries_.end()) return Mat::Zero(m_, m_);
    const Entry& e = it->second;
    return e.modulation ? Mat(e.modulation->value(node) * e.matrix) : e.matrix;
}

CoefficientField CoefficientField::laplacian(int n) {
    CoefficientField A(n, 1, 1);
    for (int i = 0; i < n; ++i) A.set(Multiindex::unit(n, i, 2), Mat::Ones(1, 1));
    return A;
}

CoefficientField CoefficientField::polyharmonic(int n, int b) {
    CoefficientField A(n, 1, b);
    // (sum_i xi_i^2)^b = sum_{|beta|=b} b!/beta! xi^{2 beta}
    auto factorial = [](int k) {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };
    for (const auto& beta : multiindices_of_length(n, b)) {
        double c = factorial(b);
        std::vector<int> twice(n);
        for (int i = 0; i < n; ++i) {
            c /= factorial(beta[i]);
            twice[i] = 2 * beta[i];
        }
        A.set(Multiindex(twice), c * Mat::Ones(1, 1));
    }
    return A;
}

CoefficientField CoefficientField::wave(int n) {
    if (n < 2) throw std::invalid_argument("wave: n >= 2");
    CoefficientField A(n, 1, 1);
    A.set(Multiindex::unit(n, 0, 2), Mat::Ones(1, 1));
    A.set(Multiindex::unit(n, 1, 2), -Mat::Ones(1, 1));
    return A;
}

CoefficientField CoefficientField::diagonal_laplacians(int n, int m) {
    CoefficientField A(n, m, 1);
    for (int i = 0; i < n; ++i) A.set(Multiindex::unit(n, i, 2), Mat::Identity(m, m));
    return A;
}

CoefficientField CoefficientField::modulated_laplacian(GridFunction a) {
    const int n = a.grid().dim();
    CoefficientField A(n, 1, 1);
    for (int i = 0; i < n; ++i) A.set(Multiindex::unit(n, i, 2), Mat::Ones(1, 1), a);
    return A;
}

double monomial(const Vec& xi, const Multiindex& alpha) {
    double v = 1.0;
    for (int i = 0; i < alpha.dim(); ++i)
        for (int k = 0; k < alpha[i]; ++k) v *= xi[i];
    return v;
}

Mat symbol_at(const CoefficientField& A, std::int64_t node, const Vec& xi) {
    Mat S = Mat::Zero(A.system_size(), A.system_size());
    for (const auto& [alpha, e] : A.entries()) {
        const double mod = e.modulation ? e.modulation->value(node) : 1.0;
        S += mod * monomial(xi, alpha) * e.matrix;
    }
    return S;
}

double det_small(const Mat& S) {
    switch (S.rows()) {
        case 1: return S(0, 0);
        case 2: return S(0, 0) * S(1, 1) - S(0, 1) * S(1, 0);
        case 3:
            return S(0, 0) * (S(1, 1) * S(2, 2) - S(1, 2) * S(2, 1)) -
                   S(0, 1) * (S(1, 0) * S(2, 2) - S(1, 2) * S(2, 0)) +
                   S(0, 2) * (S(1, 0) * S(2, 1) - S(1, 1) * S(2, 0));
        default: return S.partialPivLu().determinant();
    }
}

double char_det(const CoefficientField& A, std::int64_t node, const Vec& xi) {
    return det_small(symbol_at(A, node, xi));
}

Mat cofactor_matrix(const Mat& S) {
    const int m = static_cast<int>(S.rows());
    if (m == 1) return Mat::Ones(1, 1);
    Mat C(m, m);
    Mat minor(m - 1, m - 1);
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
            for (int r = 0, mr = 0; r < m; ++r) {
                if (r == j) continue;
                for (int c = 0, mc = 0; c < m; ++c) {
                    if (c == k) continue;
                    minor(mr, mc++) = S(r, c);
                }
                ++mr;
            }
            C(j, k) = (((j + k) % 2) ? -1.0 : 1.0) * det_small(minor);
        }
    }
    return C;
}

double cofactor_identity_residual(const Mat& S) {
    const int m = static_cast<int>(S.rows());
    const Mat L = cofactor_matrix(S);
    const double det = det_small(S);
    double worst = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double s = 0.0;
            for (int k = 0; k < m; ++k) s += S(i, k) * L(j, k);
            worst = std::max(worst, std::abs(s - (i == j ? det : 0.0)));
        }
    return worst / (std::abs(det) + 1.0);
}

double verify_cofactor_identity(const CoefficientField& A, std::int64_t node, const Vec& xi) {
    return cofactor_identity_residual(symbol_at(A, node, xi));
}

EllipticityReport ellipticity_constant(const CoefficientField& A, const Grid* grid,
                                       const Region* region, int sphere_samples,
                                       int node_stride) {
    if (sphere_samples < 16)
        throw std::invalid_argument("ellipticity_constant: at least 16 sphere samples");
    const Eigen::MatrixXd xis = sphere_points(A.dim(), sphere_samples);

    std::vector<std::int64_t> nodes;
    if (A.has_variable_entries()) {
        if (!grid) throw std::invalid_argument("ellipticity_constant: variable coefficients need a grid");
        for (std::int64_t i = 0; i < grid->size(); i += node_stride)
            if (!region || region->contains(grid->coords(i))) nodes.push_back(i);
        if (nodes.empty()) throw std::invalid_argument("ellipticity_constant: no sample nodes in region");
    } else {
        nodes.push_back(0);
    }

    EllipticityReport rep;
    bool first = true;
    for (std::int64_t node : nodes) {
        for (int s = 0; s < xis.rows(); ++s) {
            const Vec xi = xis.row(s);
            const double d = char_det(A, node, xi);
            if (first || d < rep.delta) {
                rep.delta = d;
                rep.witness_node = node;
                rep.witness_xi = xi;
                first = false;
            }
        }
    }
    rep.elliptic = rep.delta > 0.0;
    return rep;
}

GridFunction apply_operator(const CoefficientField& A, const GridFunction& u) {
    if (u.components() != A.system_size())
        throw std::invalid_argument("apply_operator: component count mismatch");
    const Grid& g = u.grid();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(g.size(), A.system_size());
    Eigen::Array<bool, Eigen::Dynamic, 1> valid =
        Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(g.size(), true);
    for (const auto& [alpha, e] : A.entries()) {
        const GridFunction d = finite_difference(u, alpha);
        valid = valid && d.valid();
        for (std::int64_t i = 0; i < g.size(); ++i) {
            if (!d.is_valid(i)) continue;
            const double mod = e.modulation ? e.modulation->value(i) : 1.0;
            out.row(i) += (mod * e.matrix * d.values().row(i).transpose()).transpose();
        }
    }
    for (std::int64_t i = 0; i < g.size(); ++i)
        if (!valid[i]) out.row(i).setZero();
    return GridFunction(g, A.system_size(), std::move(out), std::move(valid));
}

}  // namespace ellab
