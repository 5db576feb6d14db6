#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ellab/multiindex.hpp"

namespace ellab {

using Vec = Eigen::VectorXd;

/// Axis-aligned box or ball, optionally shrunk by a margin to model the
/// nested subdomains the interior estimates are stated on.
class Region {
public:
    enum class Shape { Box, Ball };

    static Region box(Vec lo, Vec hi, double margin = 0.0) {
        Region r;
        r.shape_ = Shape::Box;
        r.lo_ = std::move(lo);
        r.hi_ = std::move(hi);
        r.margin_ = margin;
        r.validate();
        return r;
    }

    static Region ball(Vec center, double radius, double margin = 0.0) {
        Region r;
        r.shape_ = Shape::Ball;
        r.center_ = std::move(center);
        r.radius_ = radius;
        r.lo_ = r.center_.array() - radius;
        r.hi_ = r.center_.array() + radius;
        r.margin_ = margin;
        r.validate();
        return r;
    }

    Shape shape() const { return shape_; }
    int dim() const { return static_cast<int>(lo_.size()); }
    const Vec& lo() const { return lo_; }
    const Vec& hi() const { return hi_; }
    double margin() const { return margin_; }
    const Vec& center() const { return center_; }
    double radius() const { return radius_; }

    /// Membership after shrinking by the margin.
    bool contains(const Vec& x) const {
        if (shape_ == Shape::Ball) return (x - center_).norm() <= radius_ - margin_ + 1e-12;
        for (int i = 0; i < dim(); ++i)
            if (x[i] < lo_[i] + margin_ - 1e-12 || x[i] > hi_[i] - margin_ + 1e-12) return false;
        return true;
    }

    Region shrunk(double extra_margin) const {
        Region r = *this;
        r.margin_ += extra_margin;
        r.validate();
        return r;
    }

    double diameter() const {
        if (shape_ == Shape::Ball) return 2.0 * (radius_ - margin_);
        return (hi_ - lo_).norm();
    }

    /// Geometric midpoint (center for balls).
    Vec midpoint() const {
        if (shape_ == Shape::Ball) return center_;
        return 0.5 * (lo_ + hi_);
    }

private:
    void validate() const {
        if (lo_.size() == 0 || lo_.size() != hi_.size())
            throw std::invalid_argument("Region: inconsistent bounds");
        double min_side = (shape_ == Shape::Ball) ? 2.0 * radius_ : (hi_ - lo_).minCoeff();
        if (margin_ < 0.0 || margin_ >= 0.5 * min_side)
            throw std::invalid_argument("Region: margin must be in [0, min_side/2)");
    }

    Shape shape_ = Shape::Box;
    Vec lo_, hi_;
    Vec center_;
    double radius_ = 0.0;
    double margin_ = 0.0;
};

/// Uniform lattice of pitch h spanning the bounding box of a region.
/// Every node owns a cube of volume h^n (midpoint-rule cells).
class Grid {
public:
    Grid(Region region, double h) : region_(std::move(region)), h_(h) {
        if (h <= 0.0) throw std::invalid_argument("Grid: h must be positive");
        const int n = region_.dim();
        counts_.resize(n);
        strides_.resize(n);
        std::int64_t total = 1;
        for (int i = 0; i < n; ++i) {
            // Round so that an exact multiple of h lands on the upper bound.
            counts_[i] = static_cast<int>(std::floor((region_.hi()[i] - region_.lo()[i]) / h + 0.5)) + 1;
            if (counts_[i] < 3) throw std::invalid_argument("Grid: need >= 3 nodes per axis");
        }
        for (int i = n - 1; i >= 0; --i) {
            strides_[i] = total;
            total *= counts_[i];
        }
        size_ = total;
    }

    int dim() const { return region_.dim(); }
    double spacing() const { return h_; }
    const Region& region() const { return region_; }
    std::int64_t size() const { return size_; }
    int count(int axis) const { return counts_[axis]; }
    double cell_volume() const { return std::pow(h_, dim()); }

    Vec coords(std::int64_t flat) const {
        Vec x(dim());
        for (int i = 0; i < dim(); ++i) {
            const std::int64_t k = flat / strides_[i];
            flat -= k * strides_[i];
            x[i] = region_.lo()[i] + static_cast<double>(k) * h_;
        }
        return x;
    }

    std::int64_t flat(const std::vector<int>& idx) const {
        std::int64_t f = 0;
        for (int i = 0; i < dim(); ++i) f += static_cast<std::int64_t>(idx[i]) * strides_[i];
        return f;
    }

    std::vector<int> unflat(std::int64_t flat) const {
        std::vector<int> idx(dim());
        for (int i = 0; i < dim(); ++i) {
            idx[i] = static_cast<int>(flat / strides_[i]);
            flat -= static_cast<std::int64_t>(idx[i]) * strides_[i];
        }
        return idx;
    }

    std::int64_t stride(int axis) const { return strides_[axis]; }

    /// Flat index of the node nearest to x (clamped to the lattice).
    std::int64_t nearest(const Vec& x) const {
        std::int64_t f = 0;
        for (int i = 0; i < dim(); ++i) {
            int k = static_cast<int>(std::floor((x[i] - region_.lo()[i]) / h_ + 0.5));
            k = std::max(0, std::min(counts_[i] - 1, k));
            f += static_cast<std::int64_t>(k) * strides_[i];
        }
        return f;
    }

    bool same_layout(const Grid& o) const {
        return counts_ == o.counts_ && h_ == o.h_ && (region_.lo() - o.region_.lo()).norm() < 1e-14;
    }

private:
    Region region_;
    double h_;
    std::vector<int> counts_;
    std::vector<std::int64_t> strides_;
    std::int64_t size_ = 0;
};

/// Immutable vector-valued samples on a grid. A node can be invalid either
/// because a singular catalog function was excluded there or because a
/// finite-difference stencil did not fit; invalid nodes carry zero quadrature
/// weight downstream.
class GridFunction {
public:
    GridFunction(Grid grid, int components, Eigen::MatrixXd values,
                 Eigen::Array<bool, Eigen::Dynamic, 1> valid)
        : grid_(std::move(grid)), m_(components), values_(std::move(values)), valid_(std::move(valid)) {
        if (values_.rows() != grid_.size() || values_.cols() != m_)
            throw std::invalid_argument("GridFunction: value shape mismatch");
        if (valid_.size() != grid_.size())
            throw std::invalid_argument("GridFunction: mask shape mismatch");
        for (std::int64_t i = 0; i < values_.rows(); ++i)
            if (valid_[i] && !values_.row(i).allFinite())
                throw std::invalid_argument("GridFunction: non-finite value at a valid node");
    }

    static GridFunction zeros(const Grid& g, int m = 1) {
        return GridFunction(g, m, Eigen::MatrixXd::Zero(g.size(), m),
                            Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(g.size(), true));
    }

    const Grid& grid() const { return grid_; }
    int components() const { return m_; }
    const Eigen::MatrixXd& values() const { return values_; }
    const Eigen::Array<bool, Eigen::Dynamic, 1>& valid() const { return valid_; }

    double value(std::int64_t node, int comp = 0) const { return values_(node, comp); }
    bool is_valid(std::int64_t node) const { return valid_[node]; }

    GridFunction scaled(double a) const {
        return GridFunction(grid_, m_, a * values_, valid_);
    }

    GridFunction plus(const GridFunction& o, double a = 1.0) const {
        if (!grid_.same_layout(o.grid_) || m_ != o.m_)
            throw std::invalid_argument("GridFunction::plus: layout mismatch");
        return GridFunction(grid_, m_, values_ + a * o.values_, valid_ && o.valid_);
    }

private:
    Grid grid_;
    int m_;
    Eigen::MatrixXd values_;
    Eigen::Array<bool, Eigen::Dynamic, 1> valid_;
};

/// Second-order-accurate centered difference D^alpha, composed per axis with
/// compact stencils (per-axis order up to 4). Defined on the interior
/// sub-grid where the full stencil fits; other nodes are marked invalid.
GridFunction finite_difference(const GridFunction& u, const Multiindex& alpha);

/// Stencil radius of the compact centered difference of the given per-axis order.
inline int stencil_radius(int order) {
    switch (order) {
        case 0: return 0;
        case 1:
        case 2: return 1;
        case 3:
        case 4: return 2;
        default: throw std::invalid_argument("finite_difference: per-axis order > 4 unsupported");
    }
}

}  // namespace ellab
