#include <doctest.h>

#include <sstream>

#include "test_support.hpp"

using namespace finsler;
using namespace testsupport;

namespace {

// embedding oracle for the stereographic chart of the unit sphere:
// chart -> R^3, great circle, -> chart
VecD sphere_chart_to_embedding(const VecD& x) {
    double s = dot(x, x);
    return VecD{2.0 * x[0] / (1.0 + s), 2.0 * x[1] / (1.0 + s), (1.0 - s) / (1.0 + s)};
}
VecD sphere_embedding_to_chart(const VecD& P) {
    return VecD{P[0] / (1.0 + P[2]), P[1] / (1.0 + P[2])};
}

}  // namespace

TEST_CASE("Euclidean geodesics are straight lines, exactly") {
    FinslerMetric eu = make_euclidean(2);
    VecD p{0.2, -0.1}, y{0.6, 0.8};
    GeodesicTrace tr = integrate_geodesic(eu, p, y, 3.0, 0.25);
    REQUIRE(tr.states.size() == 13);
    CHECK_FALSE(tr.exited);
    for (const auto& st : tr.states) {
        VecD expect = p + y * st.t;
        CHECK(dist(st.x, expect) < 1e-10);
        CHECK(std::fabs(eu.F(st.x, st.v) - 1.0) < 1e-12);
    }
}

TEST_CASE("sphere chart geodesic follows the embedded great circle") {
    FinslerMetric sph = make_sphere(2);
    VecD p{0.3, 0.0};
    VecD y{0.0, 1.0};
    y = y * (1.0 / sph.F(p, y));

    // embedded circle: P cos t + T sin t with T the embedded unit tangent
    VecD P = sphere_chart_to_embedding(p);
    double h = 1e-6;
    VecD Pp = sphere_chart_to_embedding(p + y * h);
    VecD Pm = sphere_chart_to_embedding(p - y * h);
    VecD T = (Pp - Pm) * (1.0 / (2.0 * h));
    T = T * (1.0 / norm(T));

    GeodesicTrace tr = integrate_geodesic(sph, p, y, M_PI, M_PI / 8.0);
    for (const auto& st : tr.states) {
        VecD Q = P * std::cos(st.t) + T * std::sin(st.t);
        VecD chart = sphere_embedding_to_chart(Q);
        CHECK(dist(st.x, chart) < 1e-6);
    }
    // the antipodal chart image is reached at t = pi
    VecD anti = sphere_embedding_to_chart(-P);
    CHECK(dist(tr.states.back().x, anti) < 1e-6);
}

TEST_CASE("unit-speed conservation for the Funk metric at t = 10") {
    FinslerMetric funk = make_funk(2);
    GeodesicState st = flow_geodesic(funk, VecD{0.0, 0.0}, VecD{0.6, 0.8}, 10.0);
    CHECK(std::fabs(funk.F(st.x, st.v) - 1.0) < 1e-8);
}

TEST_CASE("unit-speed drift across the zoo stays below 1e-7") {
    std::mt19937 rng(41);
    for (const auto& entry : proper_zoo()) {
        const FinslerMetric& m = entry.metric;
        VecD p = random_point(rng, m.dim(), 0.3 * entry.sample_radius);
        VecD y = random_direction(rng, m.dim());
        y = y * (1.0 / m.F(p, y));
        GeodesicTrace tr = integrate_geodesic(m, p, y, 1.5, 0.1);
        for (const auto& st : tr.states)
            CHECK(std::fabs(m.F(st.x, st.v) - 1.0) < 1e-7);
    }
}

TEST_CASE("exponential map: trivial and hyperbolic closed form") {
    FinslerMetric eu = make_euclidean(2);
    VecD p{0.3, 0.4};
    CHECK(dist(exponential_map(eu, p, VecD::zero(2)), p) == 0.0);
    VecD q = exponential_map(eu, p, VecD{1.0, 2.0});
    CHECK(dist(q, p + VecD{1.0, 2.0}) < 1e-9);

    FinslerMetric hyp = make_hyperbolic(2);
    VecD w{0.5, 0.0};
    double r = hyp.F(VecD::zero(2), w);  // = 1
    VecD e = exponential_map(hyp, VecD::zero(2), w);
    CHECK(e[0] == doctest::Approx(std::tanh(0.5 * r)).epsilon(1e-7));
    CHECK(std::fabs(e[1]) < 1e-9);
}

TEST_CASE("geodesics exiting the chart report the boundary") {
    FinslerMetric funk = make_funk(2);
    CHECK_THROWS_AS((void)flow_geodesic(funk, VecD{0.0, 0.0}, VecD{1.0, 0.0}, 40.0),
                    DomainExit);

    // integrate_geodesic truncates with the exit flag instead of throwing
    GeodesicTrace tr = integrate_geodesic(funk, VecD{0.0, 0.0}, VecD{1.0, 0.0}, 40.0, 1.0);
    CHECK(tr.exited);
    CHECK(tr.exit_t < 40.0);
    CHECK(tr.states.back().t <= tr.exit_t + 1e-9);
}

TEST_CASE("forward distance: trivial cases and the Funk quadrature oracle") {
    FinslerMetric eu = make_euclidean(2);
    VecD p{0.1, 0.2}, q{1.1, -0.3};
    CHECK(forward_distance(eu, p, q) == doctest::Approx(dist(p, q)).epsilon(1e-9));
    CHECK(forward_distance(eu, p, p) == 0.0);

    // Funk is projectively flat: chart segments are geodesics, so the
    // distance from the origin is the line integral of F along the segment
    FinslerMetric funk = make_funk(2);
    VecD q2{0.5, 0.0};
    double oracle = integrate_adaptive(
        [&](double s) {
            VecD x = q2 * s;
            return funk.eval(x, q2);
        },
        0.0, 1.0, 24, 1e-12);
    double got = forward_distance(funk, VecD::zero(2), q2);
    CHECK(got == doctest::Approx(oracle).epsilon(1e-5));
    CHECK(got == doctest::Approx(std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("Finsler distance is asymmetric for the Funk metric") {
    FinslerMetric funk = make_funk(2);
    VecD q{0.5, 0.0};
    double fwd = forward_distance(funk, VecD::zero(2), q);
    double bwd = forward_distance(funk, q, VecD::zero(2));
    CHECK(std::fabs(fwd - bwd) > 1e-2);
}

TEST_CASE("shooting consistency: d(p, exp_p(r y)) = r") {
    std::mt19937 rng(42);
    for (FinslerMetric m : {make_funk(2), make_hyperbolic(2), make_fish_tank()}) {
        for (int it = 0; it < 5; ++it) {
            VecD p = random_point(rng, m.dim(), 0.2);
            VecD y = random_direction(rng, m.dim());
            y = y * (1.0 / m.F(p, y));
            double r = 0.4 + 0.2 * it;
            VecD q = exponential_map(m, p, y * r);
            CHECK(forward_distance(m, p, q) == doctest::Approx(r).epsilon(1e-5));
        }
    }
}

TEST_CASE("shooting finds the short arc when the chart distorts the aim") {
    // targets far out in the stereographic chart used to pull Newton onto
    // the complementary great-circle arc (2 pi - r)
    FinslerMetric sph = make_sphere(2);
    std::mt19937 rng(44);
    for (int it = 0; it < 6; ++it) {
        VecD p = random_point(rng, 2, 0.45);
        VecD y = random_direction(rng, 2);
        y = y * (1.0 / sph.F(p, y));
        double r = 1.5 + 0.1 * it;  // below the conjugate radius pi
        VecD q = exponential_map(sph, p, y * r);
        CHECK(forward_distance(sph, p, q) == doctest::Approx(r).epsilon(1e-6));
    }
}

TEST_CASE("Jacobi norms reproduce t, sin t, sinh t") {
    // Euclidean: J_i(t) = t e_i exactly
    {
        FinslerMetric eu = make_euclidean(3);
        VecD p{0.0, 0.0, 0.0}, y{1.0, 0.0, 0.0};
        std::vector<double> radii = {0.5, 1.0, 1.7};
        JacobiTrace tr = propagate_jacobi_frame(eu, p, y, radii);
        for (size_t j = 0; j < radii.size(); ++j)
            for (int k = 0; k < 2; ++k)
                CHECK(std::sqrt(tr.frames[j].gram(k, k)) ==
                      doctest::Approx(radii[j]).epsilon(1e-10));
    }
    // sphere: ||J|| = sin t; hyperbolic: ||J|| = sinh t
    {
        FinslerMetric sph = make_sphere(2);
        VecD p{0.2, 0.1};
        VecD y{1.0, -0.3};
        y = y * (1.0 / sph.F(p, y));
        std::vector<double> radii = {0.4, 0.9, 1.6, 2.5};
        JacobiTrace tr = propagate_jacobi_frame(sph, p, y, radii);
        for (size_t j = 0; j < radii.size(); ++j)
            CHECK(std::sqrt(tr.frames[j].gram(0, 0)) ==
                  doctest::Approx(std::sin(radii[j])).epsilon(1e-6));
    }
    {
        FinslerMetric hyp = make_hyperbolic(2);
        VecD p{0.0, 0.0}, y{0.5, 0.0};
        std::vector<double> radii = {0.4, 1.0, 2.0, 3.0};
        JacobiTrace tr = propagate_jacobi_frame(hyp, p, y, radii);
        for (size_t j = 0; j < radii.size(); ++j)
            CHECK(std::sqrt(tr.frames[j].gram(0, 0)) ==
                  doctest::Approx(std::sinh(radii[j])).epsilon(1e-6));
    }
}

TEST_CASE("Jacobi initial conditions and Gram symmetry") {
    std::mt19937 rng(43);
    FinslerMetric fish = make_fish_tank();
    VecD p = random_point(rng, 3, 0.5);
    VecD y = random_direction(rng, 3);
    y = y * (1.0 / fish.F(p, y));
    std::vector<double> radii = {1e-9, 0.5, 1.0, 2.0};
    JacobiTrace tr = propagate_jacobi_frame(fish, p, y, radii);
    // J(0) = 0, dJ(0) = e_i
    for (int k = 0; k < 2; ++k) {
        CHECK(norm(tr.frames[0].J[k]) < 1e-8);
        CHECK(dist(tr.frames[0].dJ[k], tr.basis[k]) < 1e-8);
    }
    // frame is g_y-orthonormal at p
    MatD g = fundamental_tensor(fish, p, y).g;
    for (int a = 0; a < 2; ++a) {
        CHECK(dot(g * tr.basis[a], y) == doctest::Approx(0.0).epsilon(1e-10));
        for (int b = 0; b < 2; ++b)
            CHECK(dot(g * tr.basis[a], tr.basis[b]) ==
                  doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-10));
    }
    for (const auto& f : tr.frames)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                CHECK(std::fabs(f.gram(a, b) - f.gram(b, a)) <= 1e-10);
}

TEST_CASE("first conjugate radius: pi on the sphere, absent elsewhere") {
    FinslerMetric sph = make_sphere(2);
    VecD p{0.3, 0.0};
    VecD y{0.0, 1.0};
    auto r = first_conjugate_radius(sph, p, y * (1.0 / sph.F(p, y)), 4.0);
    REQUIRE(r.has_value());
    CHECK(*r == doctest::Approx(M_PI).epsilon(1e-3));

    CHECK_FALSE(
        first_conjugate_radius(make_euclidean(2), VecD{0.0, 0.0}, VecD{1.0, 0.0}, 10.0));
    CHECK_FALSE(
        first_conjugate_radius(make_hyperbolic(2), VecD{0.0, 0.0}, VecD{0.5, 0.0}, 10.0));
    CHECK_FALSE(first_conjugate_radius(make_funk(2), VecD{0.0, 0.0}, VecD{1.0, 0.0}, 10.0));
}

TEST_CASE("trajectory CSV has the documented columns") {
    FinslerMetric eu = make_euclidean(2);
    std::vector<double> radii = {0.5, 1.0};
    JacobiTrace tr = propagate_jacobi_frame(eu, VecD{0.0, 0.0}, VecD{1.0, 0.0}, radii);
    std::ostringstream os;
    write_trajectory_csv(os, tr);
    std::string csv = os.str();
    CHECK(csv.find("t,x1,x2,v1,v2,detJacobiGram") == 0);
    CHECK(csv.find("\n0.5,") != std::string::npos);
}
