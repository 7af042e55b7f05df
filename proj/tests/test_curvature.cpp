#include <doctest.h>

#include "test_support.hpp"

using namespace finsler;
using namespace testsupport;

TEST_CASE("Ricci: Euclidean 0, sphere (n-1)K, Funk -(n-1)/4") {
    auto eu = ricci(make_euclidean(2), VecD{0.2, 0.1}, VecD{0.6, 0.8});
    CHECK(std::fabs(eu.ricci) < 1e-9);

    auto sph = ricci(make_sphere(2), VecD{0.3, 0.1}, VecD{0.5, -0.2});
    CHECK(sph.ricci == doctest::Approx(1.0).epsilon(1e-4));
    REQUIRE(sph.flag_k.has_value());
    CHECK(*sph.flag_k == 1.0);

    auto hyp = ricci(make_hyperbolic(2), VecD{0.2, -0.3}, VecD{1.0, 0.4});
    CHECK(hyp.ricci == doctest::Approx(-1.0).epsilon(1e-4));

    auto funk = ricci(make_funk(2), VecD{0.0, 0.0}, VecD{1.0, 0.0});
    CHECK(funk.ricci == doctest::Approx(-0.25).epsilon(1e-3));
    auto funk2 = ricci(make_funk(2), VecD{0.25, -0.1}, VecD{0.3, 1.0});
    CHECK(funk2.ricci == doctest::Approx(-0.25).epsilon(1e-3));
}

TEST_CASE("Ricci is 0-homogeneous after unit normalization") {
    FinslerMetric funk = make_funk(2);
    VecD x{0.2, 0.1};
    auto a = ricci(funk, x, VecD{0.6, 0.8});
    auto b = ricci(funk, x, VecD{1.2, 1.6});
    CHECK(a.ricci == doctest::Approx(b.ricci).epsilon(1e-10));
}

TEST_CASE("constant-K metrics have Ric = (n-1)K over random samples") {
    std::mt19937 rng(61);
    struct Case {
        FinslerMetric m;
        double radius;
    };
    for (auto& [m, radius] : std::vector<Case>{{make_sphere(2), 1.0},
                                               {make_hyperbolic(2), 0.6},
                                               {make_funk(2), 0.5},
                                               {make_fish_tank(), 1.5},
                                               {make_randers_flat(2, 0.5), 1.0}}) {
        REQUIRE(m.known_flag_curvature().has_value());
        double expect = (m.dim() - 1) * *m.known_flag_curvature();
        for (int it = 0; it < 10; ++it) {
            VecD x = random_point(rng, m.dim(), radius);
            VecD y = random_direction(rng, m.dim());
            auto s = ricci(m, x, y);
            CHECK(std::fabs(s.ricci - expect) <= std::max(1e-3, s.noise_floor));
        }
    }
}

TEST_CASE("Taylor-fit Ricci agrees with the spray-trace route") {
    // Euclidean: both zero
    CHECK(std::fabs(ricci_from_jacobi(make_euclidean(2), VolumeFormKind::BH, VecD{0.0, 0.0},
                                      VecD{1.0, 0.0})) < 1e-3);
    // Funk: -1/4 within 5e-3
    double rj =
        ricci_from_jacobi(make_funk(2), VolumeFormKind::BH, VecD{0.0, 0.0}, VecD{1.0, 0.0});
    CHECK(rj == doctest::Approx(-0.25).epsilon(2e-2));
    CHECK(std::fabs(rj - (-0.25)) < 5e-3);

    std::mt19937 rng(62);
    for (FinslerMetric m : {make_sphere(2), make_hyperbolic(2), make_fish_tank()}) {
        VecD x = random_point(rng, m.dim(), 0.4);
        VecD y = random_direction(rng, m.dim());
        y = y * (1.0 / m.F(x, y));
        double a = ricci(m, x, y).ricci;
        double b = ricci_from_jacobi(m, VolumeFormKind::BH, x, y);
        CHECK(std::fabs(a - b) < 1e-2);
    }

    // inhomogeneous metrics exercise the S and S-dot terms of the relation
    for (auto name : {"randers-radial", "perturbed"}) {
        FinslerMetric m = make_zoo_metric(name, 2);
        for (VecD x : {VecD{0.3, 0.1}, VecD{0.0, 0.5}}) {
            VecD y{0.8, -0.5};
            y = y * (1.0 / m.F(x, y));
            double a = ricci(m, x, y).ricci;
            double b = ricci_from_jacobi(m, VolumeFormKind::BH, x, y);
            CHECK(std::fabs(a - b) < 1e-2);
        }
    }
}

TEST_CASE("s_dot matches the second distortion difference along the geodesic") {
    FinslerMetric m = make_zoo_metric("randers-radial", 2);
    VecD x{0.3, 0.1};
    VecD y{0.8, -0.5};
    y = y * (1.0 / m.F(x, y));
    const double h = 2e-2;
    auto tau_at = [&](double t) {
        GeodesicState s = flow_geodesic(m, x, y, t, {1e-12, 1e-12, 0.02});
        return distortion(m, VolumeFormKind::BH, s.x, s.v);
    };
    double oracle = (tau_at(h) - 2.0 * tau_at(0.0) + tau_at(-h)) / (h * h);
    CHECK(s_dot(m, VolumeFormKind::BH, x, y) == doctest::Approx(oracle).epsilon(2e-3));
}

TEST_CASE("degenerate fit grids are rejected") {
    CHECK_THROWS_AS((void)ricci_from_jacobi(make_euclidean(2), VolumeFormKind::BH,
                                            VecD{0.0, 0.0}, VecD{1.0, 0.0}, {0.1, 0.2}),
                    FitIllConditioned);
}

TEST_CASE("the Laplacian cross-check gate triggers at zero tolerance") {
    FinslerMetric eu = make_euclidean(2);
    CHECK_THROWS_AS((void)shen_laplacian_of_distance(eu, VolumeFormKind::BH, VecD::zero(2),
                                                     VecD{1.5, 0.0}, 0.0),
                    CrossCheckFailure);
}

TEST_CASE("AHF Ricci bound arithmetic") {
    CHECK(ahf_ricci_bound(0.0, 0.0, 3) == 0.0);
    CHECK(ahf_ricci_bound(-2.0, 0.0, 5) == doctest::Approx(-1.0));
    // Funk constants: h = -1, c = 3/2, n = 2 reproduce its Ricci curvature
    double bound = ahf_ricci_bound(-1.0, 1.5, 2);
    CHECK(bound == doctest::Approx(-0.25));
    auto funk = ricci(make_funk(2), VecD{0.1, 0.0}, VecD{1.0, 0.0});
    CHECK(std::fabs(funk.ricci - bound) < 1e-2);
    CHECK_THROWS_AS((void)ahf_ricci_bound(1.0, 0.0, 1), DomainViolation);
}
