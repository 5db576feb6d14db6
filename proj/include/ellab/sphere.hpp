#pragma once

#include <Eigen/Dense>
#include <vector>

namespace ellab {

/// Quadrature rule on the unit sphere S^{n-1}; weights sum to its surface area.
/// n = 2: trapezoid rule on uniform angles (spectrally accurate).
/// n = 3: Gauss-Legendre in the polar cosine times uniform azimuth.
/// n >= 4 is not supported for quadrature (only point sampling below).
struct SphereRule {
    Eigen::MatrixXd points;  // rows are unit vectors
    Eigen::VectorXd weights;
};

SphereRule sphere_quadrature(int n, int samples);

/// Quasi-uniform point set on S^{n-1} for min/max sampling: uniform angles
/// (n=2), Fibonacci lattice (n=3), seeded normalized Gaussians (n>=4).
Eigen::MatrixXd sphere_points(int n, int samples);

/// Surface area of S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace ellab
