#include "ellab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ellab {

namespace {

std::vector<std::int64_t> cells_in_region(const GridFunction& u, const Region& region) {
    std::vector<std::int64_t> out;
    for (std::int64_t i = 0; i < u.grid().size(); ++i)
        if (u.is_valid(i) && region.contains(u.grid().coords(i))) out.push_back(i);
    return out;
}

// Per-component p-mass over the given cells.
double p_mass(const GridFunction& u, const std::vector<std::int64_t>& cells, int comp, double p) {
    double s = 0.0;
    for (std::int64_t i : cells) s += std::pow(std::abs(u.value(i, comp)), p);
    return s * u.grid().cell_volume();
}

}  // namespace

BallFamily make_ball_family(const Grid& grid, const Region& region, int center_stride,
                            double radius_cap, std::vector<double> radii) {
    if (center_stride < 1) throw std::invalid_argument("make_ball_family: stride >= 1 required");
    BallFamily fam;
    const auto anchor = grid.unflat(grid.nearest(region.midpoint()));
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const auto idx = grid.unflat(i);
        bool on_sublattice = true;
        for (int a = 0; a < grid.dim(); ++a)
            on_sublattice = on_sublattice && ((idx[a] - anchor[a]) % center_stride == 0);
        if (on_sublattice && region.contains(grid.coords(i))) fam.centers.push_back(grid.coords(i));
    }
    if (fam.centers.empty()) throw std::invalid_argument("make_ball_family: no centers in region");

    if (radii.empty()) {
        const double cap = std::min(radius_cap, region.diameter());
        for (double r = 2.0 * grid.spacing(); r <= cap * (1.0 + 1e-12); r *= 2.0) radii.push_back(r);
        if (radii.empty()) radii.push_back(cap);
    }
    std::sort(radii.begin(), radii.end());
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (radii[i] <= radii[i - 1]) throw std::invalid_argument("make_ball_family: radii not strictly increasing");
    fam.radii = std::move(radii);
    return fam;
}

std::vector<std::int64_t> cells_in_ball(const GridFunction& u, const Vec& center, double r,
                                        const Region& region) {
    const Grid& g = u.grid();
    const int n = g.dim();
    std::vector<int> lo(n), hi(n);
    for (int a = 0; a < n; ++a) {
        lo[a] = std::max(0, static_cast<int>(std::ceil((center[a] - r - g.region().lo()[a]) / g.spacing() - 1e-12)));
        hi[a] = std::min(g.count(a) - 1,
                         static_cast<int>(std::floor((center[a] + r - g.region().lo()[a]) / g.spacing() + 1e-12)));
        if (lo[a] > hi[a]) return {};
    }
    std::vector<std::int64_t> out;
    std::vector<int> idx = lo;
    while (true) {
        const std::int64_t f = g.flat(idx);
        if (u.is_valid(f)) {
            const Vec x = g.coords(f);
            if ((x - center).norm() <= r + 1e-12 && region.contains(x)) out.push_back(f);
        }
        int a = n - 1;
        while (a >= 0) {
            if (++idx[a] <= hi[a]) break;
            idx[a] = lo[a];
            --a;
        }
        if (a < 0) break;
    }
    return out;
}

double lp_norm(const GridFunction& u, double p, const Region& region) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p >= 1 required");
    const auto cells = cells_in_region(u, region);
    if (cells.empty()) throw std::invalid_argument("lp_norm: empty region");
    double total = 0.0;
    for (int k = 0; k < u.components(); ++k) total += std::pow(p_mass(u, cells, k, p), 1.0 / p);
    return total;
}

double sobolev_norm(const GridFunction& u, int order, double p, const Region& region) {
    double total = 0.0;
    for (int s = 0; s <= order; ++s)
        for (const auto& alpha : multiindices_of_length(u.grid().dim(), s))
            total += lp_norm(s == 0 ? u : finite_difference(u, alpha), p, region);
    return total;
}

BallResult morrey_norm_detail(const GridFunction& u, double p, double lambda, const Region& region,
                              const BallFamily& balls) {
    if (balls.centers.empty() || balls.radii.empty())
        throw std::invalid_argument("morrey_norm: empty ball family");
    BallResult best;
    bool any = false;
    for (const Vec& c : balls.centers) {
        for (double r : balls.radii) {
            const auto cells = cells_in_ball(u, c, r, region);
            if (cells.empty()) continue;
            double v = 0.0;
            for (int k = 0; k < u.components(); ++k)
                v += std::pow(p_mass(u, cells, k, p) / std::pow(r, lambda), 1.0 / p);
            if (!any || v > best.value) {
                best = {v, c, r};
                any = true;
            }
        }
    }
    if (!any) throw std::invalid_argument("morrey_norm: no ball intersects the region");
    return best;
}

double morrey_norm(const GridFunction& u, double p, double lambda, const Region& region,
                   const BallFamily& balls) {
    return morrey_norm_detail(u, p, lambda, region, balls).value;
}

double sobolev_morrey_norm(const GridFunction& u, int order, double p, double lambda,
                           const Region& region, const BallFamily& balls) {
    double total = 0.0;
    for (int s = 0; s <= order; ++s)
        for (const auto& alpha : multiindices_of_length(u.grid().dim(), s))
            total += morrey_norm(s == 0 ? u : finite_difference(u, alpha), p, lambda, region, balls);
    return total;
}

namespace {

BallResult oscillation_sup(const GridFunction& u, const Region& region, const BallFamily& balls,
                           double max_radius, double p, bool campanato, double mu) {
    if (balls.centers.empty() || balls.radii.empty())
        throw std::invalid_argument("oscillation estimator: empty ball family");
    BallResult best;
    bool any = false;
    for (const Vec& c : balls.centers) {
        for (double r : balls.radii) {
            if (r > max_radius * (1.0 + 1e-12)) continue;
            const auto cells = cells_in_ball(u, c, r, region);
            if (cells.empty()) continue;
            double v = 0.0;
            const double vol = u.grid().cell_volume();
            for (int k = 0; k < u.components(); ++k) {
                double mean = 0.0;
                for (std::int64_t i : cells) mean += u.value(i, k);
                mean /= static_cast<double>(cells.size());
                double osc = 0.0;
                for (std::int64_t i : cells) osc += std::pow(std::abs(u.value(i, k) - mean), p);
                if (campanato)
                    v += std::pow(osc * vol / std::pow(r, mu), 1.0 / p);
                else
                    v += osc / static_cast<double>(cells.size());
            }
            if (!any || v > best.value) {
                best = {v, c, r};
                any = true;
            }
        }
    }
    if (!any) throw std::invalid_argument("oscillation estimator: no admissible ball");
    return best;
}

}  // namespace

BallResult bmo_seminorm_detail(const GridFunction& u, const Region& region, const BallFamily& balls) {
    return oscillation_sup(u, region, balls, balls.radii.back(), 1.0, false, 0.0);
}

double bmo_seminorm(const GridFunction& u, const Region& region, const BallFamily& balls) {
    return bmo_seminorm_detail(u, region, balls).value;
}

double vmo_modulus(const GridFunction& u, double R, const Region& region, const BallFamily& balls) {
    if (balls.radii.empty() || R < balls.radii.front())
        throw std::invalid_argument("vmo_modulus: no radius <= R in family");
    return oscillation_sup(u, region, balls, R, 1.0, false, 0.0).value;
}

double campanato_seminorm(const GridFunction& u, double p, double mu, const Region& region,
                          const BallFamily& balls) {
    return oscillation_sup(u, region, balls, balls.radii.back(), p, true, mu).value;
}

double holder_seminorm(const GridFunction& u, double sigma, const Region& region,
                       std::int64_t pair_budget) {
    if (sigma <= 0.0 || sigma > 1.0) throw std::invalid_argument("holder_seminorm: sigma in (0,1]");
    if (u.components() != 1) throw std::invalid_argument("holder_seminorm: scalar fields only");
    const auto nodes = cells_in_region(u, region);
    if (nodes.size() < 2) throw std::invalid_argument("holder_seminorm: fewer than 2 valid nodes");
    const Grid& g = u.grid();

    auto ratio = [&](std::int64_t a, std::int64_t b) {
        const double d = (g.coords(a) - g.coords(b)).norm();
        return std::abs(u.value(a) - u.value(b)) / std::pow(d, sigma);
    };

    double best = 0.0;
    if (pair_budget <= 0) {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (std::size_t j = i + 1; j < nodes.size(); ++j)
                best = std::max(best, ratio(nodes[i], nodes[j]));
    } else {
        std::mt19937_64 rng(0x5eed5eedULL);  // fixed seed: deterministic subset
        std::uniform_int_distribution<std::size_t> pick(0, nodes.size() - 1);
        for (std::int64_t k = 0; k < pair_budget; ++k) {
            const std::size_t i = pick(rng), j = pick(rng);
            if (i == j) continue;
            best = std::max(best, ratio(nodes[i], nodes[j]));
        }
    }
    return best;
}

}  // namespace ellab
