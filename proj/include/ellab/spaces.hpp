#pragma once

#include <optional>

#include "ellab/grid.hpp"

namespace ellab {

/// Discrete family of balls over which the sup in the Morrey / BMO / Campanato
/// estimators is taken: grid-node centers inside the (possibly shrunk) region
/// and a strictly increasing radius list, dyadic by default.
struct BallFamily {
    std::vector<Vec> centers;
    std::vector<double> radii;
};

/// Centers are lattice nodes inside `region` on a sub-lattice of the given
/// stride, anchored at the node nearest the region midpoint so that a
/// singularity placed at the midpoint is always a candidate center.
/// Radii default to {2h, 4h, 8h, ...} capped at min(cap, region diameter).
BallFamily make_ball_family(const Grid& grid, const Region& region, int center_stride = 1,
                            double radius_cap = 1.0, std::vector<double> radii = {});

struct BallResult {
    double value = 0.0;
    Vec center;
    double radius = 0.0;
};

/// Flat indices of the valid nodes whose cell center lies in ball(center, r)
/// intersected with `region`.
std::vector<std::int64_t> cells_in_ball(const GridFunction& u, const Vec& center, double r,
                                        const Region& region);

/// (sum_cells |u|^p h^n)^{1/p} over valid cells in region; vector values use
/// the component-sum convention.
double lp_norm(const GridFunction& u, double p, const Region& region);

/// Sum over all |alpha| <= order of lp_norm(D^alpha u).
double sobolev_norm(const GridFunction& u, int order, double p, const Region& region);

/// sup over the ball family of (r^{-lambda} sum_{B_r cap region} |u|^p h^n)^{1/p}.
BallResult morrey_norm_detail(const GridFunction& u, double p, double lambda, const Region& region,
                              const BallFamily& balls);
double morrey_norm(const GridFunction& u, double p, double lambda, const Region& region,
                   const BallFamily& balls);

double sobolev_morrey_norm(const GridFunction& u, int order, double p, double lambda,
                           const Region& region, const BallFamily& balls);

/// sup over balls of the mean oscillation (1/|B cap region|) sum |u - mean| h^n.
BallResult bmo_seminorm_detail(const GridFunction& u, const Region& region, const BallFamily& balls);
double bmo_seminorm(const GridFunction& u, const Region& region, const BallFamily& balls);

/// BMO sup restricted to radii <= R; nondecreasing in R by construction.
double vmo_modulus(const GridFunction& u, double R, const Region& region, const BallFamily& balls);

/// sup over balls of ((1/r^mu) sum_{B_r cap region} |u - mean|^p h^n)^{1/p}.
double campanato_seminorm(const GridFunction& u, double p, double mu, const Region& region,
                          const BallFamily& balls);

/// max over node pairs of |u(x)-u(x')| / |x-x'|^sigma. pair_budget = 0 means
/// all pairs; a positive budget examines a deterministic pseudo-random subset.
double holder_seminorm(const GridFunction& u, double sigma, const Region& region,
                       std::int64_t pair_budget = 0);

}  // namespace ellab
