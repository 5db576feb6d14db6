#pragma once

#include <nlohmann/json.hpp>

#include "ellab/classifier.hpp"
#include "ellab/kernels.hpp"
#include "ellab/spaces.hpp"
#include "ellab/symbol.hpp"

namespace ellab {

/// One manufactured-solution experiment: the operator, the solution u (from
/// which f = L u is computed — nothing is ever solved), the nested regions the
/// interior estimates live on, and the space/radius parameters.
struct Experiment {
    CoefficientField A;
    GridFunction u;
    Region omega_prime;   // inner region, strictly inside omega_second
    Region omega_second;  // outer region, inside the grid
    Vec center;           // common center of the ball nest
    double p = 2.0;
    double lambda = 1.0;
    std::vector<double> radii;  // dyadic schedule {r0, r0/2, r0/4}
    double theta = 0.5;
    int center_stride = 1;  // sub-lattice stride for ball families
};

/// theta' = theta (3 - theta) / 2, strictly between theta and 1 on (0,1).
double theta_prime(double theta);

struct CutoffReport {
    GridFunction phi;
    double theta_prime = 0.0;
    double max_gradient = 0.0;  // max over nodes/axes of |discrete d_i phi|
    double envelope = 0.0;      // C(1) / [theta (1-theta) r], explicit C(1)
    double ratio = 0.0;         // max_gradient / envelope, expected <= 1
};

/// Radial polynomial-spline bump of smoothness order `smooth` (degree
/// 2*smooth+1 in the transition variable): 1 on B_{theta r}, 0 outside
/// B_{theta' r}. smooth >= b gives the degree >= 2b+1 profile.
CutoffReport cutoff(const Grid& grid, const Vec& center, double r, double theta, int smooth);

struct CaccioppoliReport {
    double r = 0.0;
    double lhs = 0.0;      // sum_{|alpha|=2b} Morrey norm of D^alpha u on B_{r/2}
    double f_part = 0.0;   // Morrey norm of f on B_r
    double u_part = 0.0;   // r^{-2b} Morrey norm of u on B_r
    double implied_constant = 0.0;  // lhs / (f_part + u_part)
    bool trivial = false;  // lhs == 0
};

CaccioppoliReport caccioppoli_check(const Experiment& exp, double r);

/// Theta_s = sup over theta in {0.1,...,0.9} of
/// [theta(1-theta) r]^s * sum_{|alpha|=s} Morrey norm of D^alpha u on B_{theta r}.
std::vector<double> theta_seminorms(const Experiment& exp, double r, const std::vector<int>& s_list);

struct InterpolationRow {
    double eps = 0.0;
    double c_min = 0.0;  // smallest C with Theta_s <= eps Theta_2b + C eps^{-s/(2b-s)} Theta_0
};

struct InterpolationReport {
    double theta_0 = 0.0, theta_s = 0.0, theta_2b = 0.0;
    std::vector<InterpolationRow> rows;
    double max_c = 0.0;
};

/// Errors when Theta_0 = 0 with Theta_s > 0 (degenerate configuration).
InterpolationReport interpolation_check(const Experiment& exp, double r, int s,
                                        const std::vector<double>& eps_list);

struct CommutatorScanRow {
    double r = 0.0;
    double ratio = 0.0;  // Morrey norm of c_alpha[a, f_r] / Morrey norm of f_r on B_r
    double eta_a = 0.0;  // VMO modulus of a at scale r
};

/// Fixed-test-function surrogate for the commutator operator norm: the test
/// density is a bump of radius r/2 and the grid pitch scales with r so every
/// row is computed on a geometrically similar discretization.
std::vector<CommutatorScanRow> commutator_smallness_scan(
    const std::string& a_id, const nlohmann::json& a_params, const Kernel& K,
    const Multiindex& alpha, const std::vector<double>& radii, double p, double lambda,
    int cells_per_radius = 8);

struct RegularityReport {
    double sigma = 0.0;           // sigma_s from the classifier (case c)
    double data_norm = 0.0;       // Morrey norm of f plus Morrey norm of u on omega_second
    double holder_ratio = 0.0;    // Holder seminorm of D^s u at sigma / data_norm
    double inflated_ratio = 0.0;  // same at sigma + 0.1
    double campanato = 0.0;       // Campanato seminorm of D^s u, mu = (2b-s)p + lambda
};

/// Compares the classifier's case-c prediction with measured seminorms;
/// errors when (p, lambda, s) is not a case-c configuration.
RegularityReport regularity_experiment(const Experiment& exp, int s,
                                       std::int64_t pair_budget = 20000);

}  // namespace ellab
