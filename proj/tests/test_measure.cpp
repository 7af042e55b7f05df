#include <doctest.h>

#include "test_support.hpp"

using namespace finsler;
using namespace testsupport;

TEST_CASE("unit ball volumes from the closed form") {
    CHECK(unit_ball_volume(2) == doctest::Approx(M_PI));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0));
    CHECK(unit_ball_volume(4) == doctest::Approx(M_PI * M_PI / 2.0));
}

TEST_CASE("sigma_BH: Euclidean, flat Randers closed form, self-convergence") {
    CHECK(sigma_bh(make_euclidean(2), VecD{0.1, 0.2}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sigma_bh(make_euclidean(3), VecD{0.1, 0.2, 0.0}) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // (1 - b^2)^{(n+1)/2} for n = 2, b = 0.5
    FinslerMetric rf = make_randers_flat(2, 0.5);
    CHECK(sigma_bh(rf, VecD{0.0, 0.0}) ==
          doctest::Approx(std::pow(0.75, 1.5)).epsilon(1e-10));

    // doubling the quadrature order moves the value by < 1e-8
    std::mt19937 rng(51);
    for (const auto& entry : proper_zoo()) {
        VecD x = random_point(rng, entry.metric.dim(), 0.5 * entry.sample_radius);
        double a = sigma_bh(entry.metric, x, 48);
        double b = sigma_bh(entry.metric, x, 96);
        CHECK(std::fabs(a - b) < 1e-8 * std::max(1.0, std::fabs(a)));
    }
}

TEST_CASE("sigma_HT: Euclidean, Randers coincidence, Monte-Carlo oracle") {
    CHECK(sigma_ht(make_euclidean(2), VecD{0.3, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
    // dV_HT of any Randers equals dV_alpha
    CHECK(sigma_ht(make_randers_flat(2, 0.5), VecD{0.0, 0.0}) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sigma_ht(make_randers_flat(2, 0.8), VecD{0.0, 0.0}) ==
          doctest::Approx(1.0).epsilon(1e-9));

    // Funk at x = 0 and x = (0.3, 0): positive, matching a Monte-Carlo
    // estimate of (1/(n Vol B)) * int det g F^{-n} within 3 standard errors
    FinslerMetric funk = make_funk(2);
    std::mt19937 rng(52);
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    for (VecD x : {VecD{0.0, 0.0}, VecD{0.3, 0.0}}) {
        double got = sigma_ht(funk, x);
        CHECK(got > 0.0);
        const int N = 1000000;
        double sum = 0.0, sum2 = 0.0;
        for (int k = 0; k < N; ++k) {
            double t = u(rng);
            VecD dir{std::cos(t), std::sin(t)};
            double f = funk.eval(x, dir);
            double dg = value(det(detail::metric_tensor(funk, x, dir)));
            double val = dg / (f * f);
            sum += val;
            sum2 += val * val;
        }
        double mean = sum / N;
        double se = std::sqrt((sum2 / N - mean * mean) / N);
        double mc = mean * 2.0 * M_PI / (2.0 * unit_ball_volume(2));
        double se_mc = se * 2.0 * M_PI / (2.0 * unit_ball_volume(2));
        CHECK(std::fabs(got - mc) < 3.0 * se_mc + 1e-9);
    }
}

TEST_CASE("extreme densities: Euclidean and flat Randers") {
    FinslerMetric eu = make_euclidean(2);
    CHECK(sigma_extreme(eu, VecD{0.0, 0.0}, VolumeFormKind::Max) == doctest::Approx(1.0));
    CHECK(sigma_extreme(eu, VecD{0.0, 0.0}, VolumeFormKind::Min) == doctest::Approx(1.0));

    // extremum of sqrt(det g) over the indicatrix: (1 +- b)^{(n+1)/2}
    FinslerMetric rf = make_randers_flat(2, 0.5);
    CHECK(sigma_extreme(rf, VecD{0.0, 0.0}, VolumeFormKind::Max) ==
          doctest::Approx(std::pow(1.5, 1.5)).epsilon(1e-8));
    CHECK(sigma_extreme(rf, VecD{0.0, 0.0}, VolumeFormKind::Min) ==
          doctest::Approx(std::pow(0.5, 1.5)).epsilon(1e-8));
}

TEST_CASE("volume ordering chain min <= BH <= HT <= max on zoo samples") {
    std::mt19937 rng(53);
    for (const auto& entry : proper_zoo()) {
        const FinslerMetric& m = entry.metric;
        for (int it = 0; it < 5; ++it) {
            VecD x = random_point(rng, m.dim(), 0.6 * entry.sample_radius);
            double smin = sigma_extreme(m, x, VolumeFormKind::Min);
            double sbh = sigma_bh(m, x);
            double sht = sigma_ht(m, x);
            double smax = sigma_extreme(m, x, VolumeFormKind::Max);
            CHECK(smin <= sbh * (1.0 + 1e-9));
            CHECK(sbh <= sht * (1.0 + 1e-9));
            CHECK(sht <= smax * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("distortion: Euclidean zero, Riemannian zero everywhere, Randers value") {
    CHECK(distortion(make_euclidean(2), VolumeFormKind::BH, VecD{0.2, 0.1},
                     VecD{0.3, -1.0}) == doctest::Approx(0.0).epsilon(1e-12));

    std::mt19937 rng(54);
    for (FinslerMetric m : {make_sphere(2), make_hyperbolic(2)}) {
        for (VolumeFormKind kind : {VolumeFormKind::BH, VolumeFormKind::HT,
                                    VolumeFormKind::Max, VolumeFormKind::Min}) {
            VecD x = random_point(rng, 2, 0.6);
            VecD y = random_direction(rng, 2);
            CHECK(std::fabs(distortion(m, kind, x, y)) < 1e-8);
        }
    }

    // flat Randers with the HT measure: tau = 1/2 log det g since sigma = 1
    FinslerMetric rf = make_randers_flat(2, 0.5);
    VecD x{0.0, 0.0}, y{0.3, 0.9};
    double dg = fundamental_tensor(rf, x, y).det_g;
    double tau = distortion(rf, VolumeFormKind::HT, x, y);
    CHECK(tau == doctest::Approx(0.5 * std::log(dg)).epsilon(1e-9));
    CHECK(tau != doctest::Approx(0.0));
    // 0-homogeneity in y
    CHECK(distortion(rf, VolumeFormKind::HT, x, y * 3.7) ==
          doctest::Approx(tau).epsilon(1e-10));
}

TEST_CASE("S-curvature: Euclidean 0, Funk (n+1)/2, fish tank 0, Randers Killing 0") {
    VecD e1{1.0, 0.0};
    auto eu = s_curvature(make_euclidean(2), VolumeFormKind::BH, VecD{0.1, 0.3}, e1);
    CHECK(std::fabs(eu.value) < 1e-9);

    FinslerMetric funk = make_funk(2);
    for (VecD x : {VecD{0.0, 0.0}, VecD{0.2, 0.1}}) {
        VecD y{0.7, -0.4};
        y = y * (1.0 / funk.F(x, y));
        auto s = s_curvature(funk, VolumeFormKind::BH, x, y);
        CHECK(s.value == doctest::Approx(1.5).epsilon(1e-5));
        CHECK(std::fabs(s.local_route - s.geodesic_route) < 1e-4);
    }

    FinslerMetric fish = make_fish_tank();
    VecD xf{0.3, 0.1, 0.2}, yf{0.5, -0.3, 0.8};
    yf = yf * (1.0 / fish.F(xf, yf));
    auto sf = s_curvature(fish, VolumeFormKind::BH, xf, yf);
    CHECK(std::fabs(sf.value) < 1e-4);

    // constant beta is a Killing form of constant length: S_BH = 0
    FinslerMetric rf = make_randers_flat(2, 0.5);
    VecD xr{0.4, -0.2}, yr{0.3, 0.8};
    yr = yr * (1.0 / rf.F(xr, yr));
    auto sr = s_curvature(rf, VolumeFormKind::BH, xr, yr);
    CHECK(std::fabs(sr.value) < 1e-6);
}

TEST_CASE("both S-curvature routes agree across the zoo") {
    std::mt19937 rng(55);
    for (const auto& entry : proper_zoo()) {
        const FinslerMetric& m = entry.metric;
        VecD x = random_point(rng, m.dim(), 0.4 * entry.sample_radius);
        VecD y = random_direction(rng, m.dim());
        y = y * (1.0 / m.F(x, y));
        auto s = s_curvature(m, VolumeFormKind::BH, x, y);  // throws on disagreement
        CHECK(std::fabs(s.local_route - s.geodesic_route) < 1e-4);
    }
}

TEST_CASE("S-curvature routes agree for the non-BH measures too") {
    FinslerMetric funk = make_funk(2);
    VecD x{0.2, 0.1};
    VecD y{0.7, -0.4};
    y = y * (1.0 / funk.F(x, y));
    for (VolumeFormKind kind : {VolumeFormKind::HT, VolumeFormKind::Max, VolumeFormKind::Min}) {
        auto s = s_curvature(funk, kind, x, y);
        CHECK(std::fabs(s.local_route - s.geodesic_route) < 1e-4);
    }
}

TEST_CASE("dimension-4 quadrature branch") {
    FinslerMetric eu = make_euclidean(4);
    VecD x = VecD::zero(4);
    CHECK(sigma_bh(eu, x) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sigma_ht(eu, x) == doctest::Approx(1.0).epsilon(1e-9));
    FinslerMetric rf = make_randers_flat(4, 0.3);
    // (1 - b^2)^{(n+1)/2} with n = 4
    CHECK(sigma_bh(rf, x) == doctest::Approx(std::pow(0.91, 2.5)).epsilon(1e-7));
    CHECK(sigma_ht(rf, x) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("degenerate metrics trip the quadrature divergence gate") {
    // F vanishes on the direction (1, 0)
    FinslerMetric degenerate = metric_from_json_text(R"({
        "name": "degenerate", "dim": 2, "kind": "custom-expression",
        "params": {"F": "sqrt(y[0]^2 + y[1]^2) - y[0]", "pseudo": true,
                   "domain": {"type": "ball", "radius": 2.0}}
    })");
    CHECK_THROWS_AS((void)sigma_bh(degenerate, VecD{0.0, 0.0}), QuadratureDivergence);
}

TEST_CASE("s_curvature rejects non-unit directions") {
    CHECK_THROWS_AS(
        (void)s_curvature(make_euclidean(2), VolumeFormKind::BH, VecD{0.0, 0.0},
                          VecD{2.0, 0.0}),
        DomainViolation);
}
