#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>

#include "ellab/grid.hpp"

namespace ellab {

using Mat = Eigen::MatrixXd;

/// Principal coefficients A_alpha of the 2b-order operator
/// L(x,D) u = sum_{|alpha|=2b} A_alpha(x) D^alpha u.
///
/// Each entry is a constant m x m matrix, optionally modulated by a scalar
/// grid field: A_alpha(x) = a_alpha(x) * M_alpha. Missing multiindices are the
/// zero matrix.
class CoefficientField {
public:
    struct Entry {
        Mat matrix;
        std::optional<GridFunction> modulation;  // scalar field; empty = constant
    };

    CoefficientField(int n, int m, int b) : n_(n), m_(m), b_(b) {
        if (n < 1 || m < 1 || b < 1) throw std::invalid_argument("CoefficientField: bad sizes");
    }

    int dim() const { return n_; }
    int system_size() const { return m_; }
    int order_half() const { return b_; }
    int order() const { return 2 * b_; }

    void set(const Multiindex& alpha, Mat matrix, std::optional<GridFunction> modulation = {});

    const std::map<Multiindex, Entry>& entries() const { return entries_; }

    /// Sup-norm bound over all matrix entries (measured on set entries).
    double bound() const;

    bool has_variable_entries() const;

    /// A_alpha evaluated at a node (node ignored for constant entries).
    Mat at(const Multiindex& alpha, std::int64_t node = 0) const;

    // Factories for the operator families used throughout.
    static CoefficientField laplacian(int n);
    static CoefficientField polyharmonic(int n, int b);  // Delta^b
    static CoefficientField wave(int n);                 // d1^2 - d2^2 (non-elliptic)
    static CoefficientField diagonal_laplacians(int n, int m);
    /// a(x) * Delta with a scalar modulation field.
    static CoefficientField modulated_laplacian(GridFunction a);

private:
    int n_, m_, b_;
    std::map<Multiindex, Entry> entries_;
};

/// xi^alpha with the 0^0 = 1 convention.
double monomial(const Vec& xi, const Multiindex& alpha);

/// sum_alpha A_alpha(x) xi^alpha; homogeneous of degree 2b in xi.
Mat symbol_at(const CoefficientField& A, std::int64_t node, const Vec& xi);

/// Determinant: direct expansion for m <= 3, LU with partial pivoting above.
double det_small(const Mat& S);

double char_det(const CoefficientField& A, std::int64_t node, const Vec& xi);

/// Matrix of signed minors L_jk with sum_k S_ik L_jk = delta_ij det S.
Mat cofactor_matrix(const Mat& S);

/// max_{i,j} |sum_k S_ik L_jk - delta_ij det S| / (|det S| + 1).
double verify_cofactor_identity(const CoefficientField& A, std::int64_t node, const Vec& xi);
double cofactor_identity_residual(const Mat& S);

struct EllipticityReport {
    double delta = 0.0;  // min over sampled (x, xi) of char_det
    bool elliptic = false;
    std::int64_t witness_node = 0;
    Vec witness_xi;
};

/// delta estimate by sampling xi over a quasi-uniform sphere point set and x
/// over region nodes of the given stride. grid may be null when every entry
/// is constant.
EllipticityReport ellipticity_constant(const CoefficientField& A, const Grid* grid,
                                       const Region* region, int sphere_samples,
                                       int node_stride = 1);

/// L u = sum_alpha A_alpha(x) D^alpha u, pointwise matrix-vector products on
/// the interior nodes where every stencil fits.
GridFunction apply_operator(const CoefficientField& A, const GridFunction& u);

}  // namespace ellab
