#include <doctest.h>

#include <cmath>

#include "finsler/dual.hpp"
#include "finsler/smallvec.hpp"

using namespace finsler;

TEST_CASE("dual numbers differentiate elementary expressions exactly") {
    // f(t) = sin(t) * exp(t^2) / sqrt(1 + t^2)
    auto f = [](auto t) {
        return sin(t) * exp(t * t) / sqrt(1.0 + t * t);
    };
    double t0 = 0.7;
    D1 r = f(D1{t0, 1.0});
    double h = 1e-6;
    double fd = (f(t0 + h) - f(t0 - h)) / (2 * h);
    CHECK(r.v == doctest::Approx(f(t0)).epsilon(1e-14));
    CHECK(r.d == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("nested duals produce exact second and third derivatives") {
    auto f = [](auto t) { return cosh(t) * log(2.0 + sin(t)); };
    double t0 = 0.3;
    D2 r = f(D2{D1{t0, 1.0}, D1{1.0, 0.0}});
    double h = 1e-5;
    double fdd = (f(t0 + h) - 2.0 * f(t0) + f(t0 - h)) / (h * h);
    CHECK(r.d.d == doctest::Approx(fdd).epsilon(1e-5));

    // third derivative of t^5 at t=2 is 60 t^2 = 240
    auto p = [](auto t) { return t * t * t * t * t; };
    D3 q = p(D3{D2{D1{2.0, 1.0}, D1{1.0, 0.0}}, D2{D1{1.0, 0.0}, D1{0.0, 0.0}}});
    CHECK(q.d.d.d == doctest::Approx(240.0).epsilon(1e-13));
}

TEST_CASE("pow handles fractional exponents") {
    D1 x{2.0, 1.0};
    D1 y = pow(x, 1.5);
    CHECK(y.v == doctest::Approx(std::pow(2.0, 1.5)));
    CHECK(y.d == doctest::Approx(1.5 * std::pow(2.0, 0.5)));
}

TEST_CASE("LU solve, determinant and inverse on small matrices") {
    MatD a(3);
    double vals[3][3] = {{4, 1, 2}, {1, 3, 0}, {2, 0, 5}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = vals[i][j];
    // det by cofactor: 4(15-0) - 1(5-0) + 2(0-6) = 60 - 5 - 12 = 43
    CHECK(det(a) == doctest::Approx(43.0).epsilon(1e-14));

    VecD b{1.0, 2.0, 3.0};
    VecD x(3);
    REQUIRE(solve(a, b, x));
    VecD r = a * x - b;
    CHECK(norm(r) < 1e-13);

    MatD inv(3);
    REQUIRE(invert(a, inv));
    MatD prod = a * inv;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(prod(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
}

TEST_CASE("LU works on dual scalars and differentiates the solve") {
    // A(t) x = b with A(t) = [[2+t, 1], [1, 3]]; dx/dt from duals vs FD
    auto solve_at = [](auto t) {
        using S = decltype(t);
        Mat<S> a(2);
        a(0, 0) = 2.0 + t;
        a(0, 1) = S(1.0);
        a(1, 0) = S(1.0);
        a(1, 1) = S(3.0);
        Vec<S> b{S(1.0), S(2.0)};
        Vec<S> x(2);
        REQUIRE(solve(a, b, x));
        return x;
    };
    Vec<D1> xd = solve_at(D1{0.5, 1.0});
    double h = 1e-7;
    Vec<double> xp = solve_at(0.5 + h), xm = solve_at(0.5 - h);
    for (int i = 0; i < 2; ++i)
        CHECK(xd[i].d == doctest::Approx((xp[i] - xm[i]) / (2 * h)).epsilon(1e-6));
}
