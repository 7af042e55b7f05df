#include <doctest.h>

#include "test_support.hpp"

using namespace finsler;
using namespace testsupport;

TEST_CASE("Euclidean spray vanishes") {
    FinslerMetric eu = make_euclidean(2);
    SprayValue sp = spray_coefficients(eu, VecD{0.5, -0.2}, VecD{1.0, 2.0}, true);
    CHECK(norm(sp.G) < 1e-12);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CHECK(std::fabs(sp.N(i, j)) < 1e-12);
            CHECK(std::fabs((*sp.dGdx)(i, j)) < 1e-12);
        }
}

TEST_CASE("Poincare-ball spray matches the Christoffel oracle") {
    // conformal metric e^{2phi} delta with phi = log(2/(1-|x|^2)):
    // Gamma^i_jk = d_j phi delta_ik + d_k phi delta_ij - d_i phi delta_jk
    FinslerMetric hyp = make_hyperbolic(2);
    VecD x{0.3, 0.0}, y{1.0, 0.0};
    SprayValue sp = spray_coefficients(hyp, x, y);
    double dphi1 = 2.0 * x[0] / (1.0 - dot(x, x));  // = 0.6/0.91
    double G1 = 0.5 * dphi1;                         // 1/2 Gamma^1_11
    CHECK(sp.G[0] == doctest::Approx(G1).epsilon(1e-6));
    CHECK(std::fabs(sp.G[1]) < 1e-10);

    // generic direction: G^i = 1/2 Gamma^i_jk y^j y^k with the full formula
    VecD x2{0.2, -0.3}, y2{0.7, 0.4};
    SprayValue sp2 = spray_coefficients(hyp, x2, y2);
    VecD dphi(2);
    for (int i = 0; i < 2; ++i) dphi[i] = 2.0 * x2[i] / (1.0 - dot(x2, x2));
    for (int i = 0; i < 2; ++i) {
        double acc = 0.0;
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                double gam = (i == k ? dphi[j] : 0.0) + (i == j ? dphi[k] : 0.0) -
                             (j == k ? dphi[i] : 0.0);
                acc += 0.5 * gam * y2[j] * y2[k];
            }
        CHECK(sp2.G[i] == doctest::Approx(acc).epsilon(1e-6));
    }
}

TEST_CASE("spray 2-homogeneity and connection 1-homogeneity") {
    std::mt19937 rng(31);
    for (const auto& entry : proper_zoo()) {
        const FinslerMetric& m = entry.metric;
        for (int it = 0; it < 10; ++it) {
            VecD x = random_point(rng, m.dim(), entry.sample_radius);
            VecD y = random_direction(rng, m.dim());
            SprayValue s1 = spray_coefficients(m, x, y);
            SprayValue s2 = spray_coefficients(m, x, y * 2.0);
            double scale = std::max(1.0, norm(s1.G));
            for (int i = 0; i < m.dim(); ++i)
                CHECK(std::fabs(s2.G[i] - 4.0 * s1.G[i]) <= 1e-8 * scale);
            for (int i = 0; i < m.dim(); ++i)
                for (int j = 0; j < m.dim(); ++j)
                    CHECK(std::fabs(s2.N(i, j) - 2.0 * s1.N(i, j)) <=
                          1e-7 * std::max(1.0, std::fabs(s1.N(i, j))));
        }
    }
}

TEST_CASE("spray x-derivatives match a central-difference oracle") {
    for (FinslerMetric m : {make_hyperbolic(2), make_fish_tank()}) {
        int n = m.dim();
        VecD x = VecD::zero(n);
        x[0] = 0.25;
        x[1] = -0.1;
        VecD y = VecD::zero(n);
        y[0] = 0.6;
        y[1] = 0.8;
        if (n > 2) y[2] = -0.3;
        SprayValue sp = spray_coefficients(m, x, y, true);
        REQUIRE(sp.dGdx.has_value());
        double h = 1e-6;
        for (int j = 0; j < n; ++j) {
            VecD xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            SprayValue p1 = spray_coefficients(m, xp, y);
            SprayValue m1 = spray_coefficients(m, xm, y);
            for (int i = 0; i < n; ++i)
                CHECK(std::fabs((p1.G[i] - m1.G[i]) / (2.0 * h) - (*sp.dGdx)(i, j)) < 1e-8);
        }
    }
}

TEST_CASE("N y = 2G on Riemannian members (Euler for quadratic sprays)") {
    std::mt19937 rng(32);
    for (FinslerMetric m : {make_sphere(2), make_hyperbolic(2), make_euclidean(3)}) {
        for (int it = 0; it < 20; ++it) {
            VecD x = random_point(rng, m.dim(), 0.7);
            VecD y = random_direction(rng, m.dim());
            SprayValue sp = spray_coefficients(m, x, y);
            VecD ny = sp.N * y;
            for (int i = 0; i < m.dim(); ++i)
                CHECK(std::fabs(ny[i] - 2.0 * sp.G[i]) <=
                      1e-8 * std::max(1.0, std::fabs(sp.G[i])));
        }
    }
}

TEST_CASE("Berwald verdicts: flat and Riemannian pass, Funk and fish tank fail") {
    BerwaldResult eu = berwald_tensor_norm(make_euclidean(2), VecD{0.1, 0.2}, VecD{0.6, 0.8});
    CHECK(eu.norm < 1e-5);
    CHECK(eu.is_berwald);

    BerwaldResult hyp =
        berwald_tensor_norm(make_hyperbolic(2), VecD{0.3, 0.0}, VecD{0.6, 0.8});
    CHECK(hyp.is_berwald);  // Riemannian metrics are Berwald

    BerwaldResult rf =
        berwald_tensor_norm(make_randers_flat(2, 0.5), VecD{0.1, 0.0}, VecD{0.6, 0.8});
    CHECK(rf.is_berwald);  // Minkowski metrics are Berwald

    BerwaldResult funk = berwald_tensor_norm(make_funk(2), VecD{0.2, 0.0}, VecD{0.6, 0.8});
    CHECK(funk.norm > 10.0 * funk.noise_floor);
    CHECK_FALSE(funk.is_berwald);

    BerwaldResult fish =
        berwald_tensor_norm(make_fish_tank(), VecD{0.3, 0.1, 0.2}, VecD{0.5, -0.3, 0.8});
    CHECK(fish.norm > 10.0 * fish.noise_floor);
    CHECK_FALSE(fish.is_berwald);
}
