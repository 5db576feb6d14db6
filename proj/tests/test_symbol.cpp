#include <doctest.h>

#include <random>

#include "ellab/symbol.hpp"

using namespace ellab;

namespace {

// Determinant by signed permutation expansion, for m <= 3 (test oracle).
double det_by_permutations(const Mat& S) {
    const int m = static_cast<int>(S.rows());
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i) perm[i] = i;
    double det = 0.0;
    do {
        int inversions = 0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (perm[i] > perm[j]) ++inversions;
        double term = (inversions % 2) ? -1.0 : 1.0;
        for (int i = 0; i < m; ++i) term *= S(i, perm[i]);
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

Vec xi2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST_CASE("monomial") {
    CHECK(monomial(xi2(2, 3), Multiindex({1, 1})) == 6.0);
    CHECK(monomial(xi2(5, -7), Multiindex({0, 0})) == 1.0);
    Vec v(3);
    v << 1, -1, 2;
    CHECK(monomial(v, Multiindex({0, 2, 1})) == 2.0);
    CHECK(monomial(Vec::Zero(2), Multiindex({0, 0})) == 1.0);  // 0^0 = 1
}

TEST_CASE("symbol_at on classic operators") {
    auto lap = CoefficientField::laplacian(2);
    CHECK(symbol_at(lap, 0, xi2(3, 4))(0, 0) == doctest::Approx(25.0));

    auto bih = CoefficientField::polyharmonic(2, 2);
    CHECK(symbol_at(bih, 0, xi2(3, 4))(0, 0) == doctest::Approx(625.0));  // |xi|^4

    auto diag = CoefficientField::diagonal_laplacians(2, 2);
    const Mat S = symbol_at(diag, 0, xi2(1, 2));
    CHECK(S(0, 0) == doctest::Approx(5.0));
    CHECK(S(1, 1) == doctest::Approx(5.0));
    CHECK(S(0, 1) == 0.0);
}

TEST_CASE("char_det") {
    CHECK(char_det(CoefficientField::laplacian(2), 0, xi2(3, 4)) == doctest::Approx(25.0));
    CHECK(char_det(CoefficientField::diagonal_laplacians(2, 2), 0, xi2(3, 4)) ==
          doctest::Approx(625.0));

    // Triangular m=2 symbol [[|xi|^2, xi1 xi2], [0, |xi|^2]] -> |xi|^4.
    CoefficientField tri(2, 2, 1);
    tri.set(Multiindex({2, 0}), Mat::Identity(2, 2));
    tri.set(Multiindex({0, 2}), Mat::Identity(2, 2));
    Mat off = Mat::Zero(2, 2);
    off(0, 1) = 1.0;
    tri.set(Multiindex({1, 1}), off);
    CHECK(char_det(tri, 0, xi2(1, 2)) == doctest::Approx(25.0));
}

TEST_CASE("symbol homogeneity") {
    auto bih = CoefficientField::polyharmonic(3, 2);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Vec xi(3);
        xi << U(rng), U(rng), U(rng);
        const double t = 0.5 + std::abs(U(rng));
        const Mat a = symbol_at(bih, 0, t * xi);
        const Mat b = std::pow(t, 4) * symbol_at(bih, 0, xi);
        CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12 * (b.cwiseAbs().maxCoeff() + 1.0));
        CHECK(char_det(bih, 0, t * xi) ==
              doctest::Approx(std::pow(t, 4) * char_det(bih, 0, xi)).epsilon(1e-12));
    }
}

TEST_CASE("ellipticity constant") {
    auto rep = ellipticity_constant(CoefficientField::laplacian(3), nullptr, nullptr, 400);
    CHECK(rep.elliptic);
    CHECK(rep.delta == doctest::Approx(1.0).epsilon(1e-9));

    rep = ellipticity_constant(CoefficientField::polyharmonic(3, 2), nullptr, nullptr, 400);
    CHECK(rep.delta == doctest::Approx(1.0).epsilon(1e-9));

    rep = ellipticity_constant(CoefficientField::diagonal_laplacians(2, 2), nullptr, nullptr, 400);
    CHECK(rep.delta == doctest::Approx(1.0).epsilon(1e-9));

    // Wave symbol xi1^2 - xi2^2: non-elliptic, witnessed near xi = (0, 1).
    rep = ellipticity_constant(CoefficientField::wave(2), nullptr, nullptr, 400);
    CHECK(!rep.elliptic);
    CHECK(rep.delta <= -1.0 + 1e-3);
}

TEST_CASE("cofactor matrix") {
    CHECK(cofactor_matrix(3.7 * Mat::Ones(1, 1))(0, 0) == 1.0);
    CHECK((cofactor_matrix(Mat::Identity(3, 3)) - Mat::Identity(3, 3)).norm() == 0.0);

    Mat S(2, 2);
    S << 1, 2, 3, 4;  // [[a,b],[c,d]] -> [[d,-c],[-b,a]]
    Mat L = cofactor_matrix(S);
    CHECK(L(0, 0) == 4.0);
    CHECK(L(0, 1) == -3.0);
    CHECK(L(1, 0) == -2.0);
    CHECK(L(1, 1) == 1.0);
}

TEST_CASE("cofactor identity") {
    // Any diagonal symbol: exact.
    CHECK(verify_cofactor_identity(CoefficientField::diagonal_laplacians(2, 3), 0, xi2(1, 2)) ==
          doctest::Approx(0.0));

    // Randomized m=3 symbols, determinant cross-checked against the
    // permutation-expansion oracle.
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        Mat S(3, 3);
        for (int i = 0; i < 9; ++i) S(i / 3, i % 3) = U(rng);
        CHECK(det_small(S) == doctest::Approx(det_by_permutations(S)).epsilon(1e-12));
        CHECK(cofactor_identity_residual(S) <= 1e-12);
    }
    // m = 4 via LU determinant.
    for (int trial = 0; trial < 100; ++trial) {
        Mat S(4, 4);
        for (int i = 0; i < 16; ++i) S(i / 4, i % 4) = U(rng);
        CHECK(cofactor_identity_residual(S) <= 1e-10);
    }

    // Singular symbol: both sides vanish, identity still holds.
    Mat S(2, 2);
    S << 1, 2, 2, 4;
    CHECK(cofactor_identity_residual(S) <= 1e-14);
}
