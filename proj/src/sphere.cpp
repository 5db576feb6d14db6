#include "ellab/sphere.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ellab {

namespace {
constexpr double kPi = std::numbers::pi;
}

double sphere_area(int n) {
    return 2.0 * std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, Newton on P_n.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

SphereRule sphere_quadrature(int n, int samples) {
    if (samples < 4) throw std::invalid_argument("sphere_quadrature: samples >= 4 required");
    SphereRule rule;
    if (n == 2) {
        rule.points.resize(samples, 2);
        rule.weights = Eigen::VectorXd::Constant(samples, 2.0 * kPi / samples);
        for (int i = 0; i < samples; ++i) {
            const double t = 2.0 * kPi * i / samples;
            rule.points.row(i) << std::cos(t), std::sin(t);
        }
        return rule;
    }
    if (n == 3) {
        const int nz = std::max(4, static_cast<int>(std::lround(std::sqrt(samples / 2.0))));
        const int nphi = 2 * nz;
        std::vector<double> z, wz;
        gauss_legendre(nz, z, wz);
        rule.points.resize(nz * nphi, 3);
        rule.weights.resize(nz * nphi);
        int r = 0;
        for (int i = 0; i < nz; ++i) {
            const double rho = std::sqrt(std::max(0.0, 1.0 - z[i] * z[i]));
            for (int j = 0; j < nphi; ++j, ++r) {
                const double phi = 2.0 * kPi * (j + 0.5) / nphi;
                rule.points.row(r) << rho * std::cos(phi), rho * std::sin(phi), z[i];
                rule.weights[r] = wz[i] * 2.0 * kPi / nphi;
            }
        }
        return rule;
    }
    throw std::invalid_argument("sphere_quadrature: only n = 2, 3 supported");
}

Eigen::MatrixXd sphere_points(int n, int samples) {
    if (n == 2) return sphere_quadrature(2, samples).points;
    Eigen::MatrixXd pts(samples, n);
    if (n == 3) {
        // Fibonacci lattice.
        const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
        for (int i = 0; i < samples; ++i) {
            const double z = 1.0 - (2.0 * i + 1.0) / samples;
            const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = 2.0 * kPi * i / golden;
            pts.row(i) << rho * std::cos(phi), rho * std::sin(phi), z;
        }
        return pts;
    }
    std::mt19937_64 rng(0xe11ab5eedULL);  // fixed seed: deterministic point set
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < samples; ++i) {
        Eigen::VectorXd v(n);
        do {
            for (int k = 0; k < n; ++k) v[k] = gauss(rng);
        } while (v.norm() < 1e-8);
        pts.row(i) = v.normalized();
    }
    return pts;
}

}  // namespace ellab
