#include "ellab/grid.hpp"

namespace ellab {

namespace {

// Centered stencils of second-order accuracy, offsets -radius..radius.
std::vector<double> stencil_coeffs(int order, double h) {
    switch (order) {
        case 1: return {-0.5 / h, 0.0, 0.5 / h};
        case 2: return {1.0 / (h * h), -2.0 / (h * h), 1.0 / (h * h)};
        case 3: {
            const double h3 = h * h * h;
            return {-0.5 / h3, 1.0 / h3, 0.0, -1.0 / h3, 0.5 / h3};
        }
        case 4: {
            const double h4 = h * h * h * h;
            return {1.0 / h4, -4.0 / h4, 6.0 / h4, -4.0 / h4, 1.0 / h4};
        }
        default: throw std::invalid_argument("finite_difference: per-axis order > 4 unsupported");
    }
}

}  // namespace

GridFunction finite_difference(const GridFunction& u, const Multiindex& alpha) {
    const Grid& g = u.grid();
    if (alpha.dim() != g.dim())
        throw std::invalid_argument("finite_difference: multiindex dimension mismatch");
    if (alpha.order() == 0) return u;

    Eigen::MatrixXd vals = u.values();
    Eigen::Array<bool, Eigen::Dynamic, 1> valid = u.valid();

    for (int axis = 0; axis < g.dim(); ++axis) {
        const int ord = alpha[axis];
        if (ord == 0) continue;
        const int rad = stencil_radius(ord);
        if (g.count(axis) < 2 * rad + 1)
            throw std::invalid_argument("finite_difference: stencil does not fit on axis " +
                                        std::to_string(axis));
        const auto coeffs = stencil_coeffs(ord, g.spacing());
        const std::int64_t stride = g.stride(axis);

        Eigen::MatrixXd next = Eigen::MatrixXd::Zero(vals.rows(), vals.cols());
        Eigen::Array<bool, Eigen::Dynamic, 1> nvalid(valid.size());
        for (std::int64_t node = 0; node < g.size(); ++node) {
            const int k = static_cast<int>((node / stride) % g.count(axis));
            if (k < rad || k >= g.count(axis) - rad) {
                nvalid[node] = false;
                continue;
            }
            bool ok = true;
            for (int o = -rad; o <= rad; ++o) ok = ok && valid[node + o * stride];
            nvalid[node] = ok;
            if (!ok) continue;
            for (int o = -rad; o <= rad; ++o) {
                const double c = coeffs[static_cast<std::size_t>(o + rad)];
                if (c != 0.0) next.row(node) += c * vals.row(node + o * stride);
            }
        }
        vals = std::move(next);
        valid = std::move(nvalid);
    }

    if (!valid.any())
        throw std::runtime_error("finite_difference: stencil does not fit anywhere (grid too small)");
    return GridFunction(g, u.components(), std::move(vals), std::move(valid));
}

}  // namespace ellab
