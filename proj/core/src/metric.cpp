#include "finsler/metric.hpp"

#include <cmath>

namespace finsler {

namespace {

// Euclidean norm and inner product usable at any dual depth.
template <class S>
S sdot(const Vec<S>& a, const Vec<S>& b) {
    S s{};
    for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct EuclideanF {
    template <class S>
    S operator()(const Vec<S>& x, const Vec<S>& y) const {
        (void)x;
        return sqrt(sdot(y, y));
    }
};

// conformal round metrics: F = 2|y| / (1 + sgn |x|^2)
struct ConformalBallF {
    double sgn;  // +1 sphere (stereographic), -1 Poincare ball
    template <class S>
    S operator()(const Vec<S>& x, const Vec<S>& y) const {
        return 2.0 * sqrt(sdot(y, y)) / (1.0 + sgn * sdot(x, x));
    }
};

// Funk metric of the unit ball. The naive formula cancels catastrophically
// for <x,y> < 0 deep in the ball; both algebraic branches below are the
// same analytic function.
struct FunkF {
    template <class S>
    S operator()(const Vec<S>& x, const Vec<S>& y) const {
        S s = 1.0 - sdot(x, x);
        S c = sdot(x, y);
        S y2 = sdot(y, y);
        S root = sqrt(s * y2 + c * c);
        if (value(c) >= 0.0) return (root + c) / s;
        return y2 / (root - c);
    }
};

struct RandersFlatF {
    double b;
    template <class S>
    S operator()(const Vec<S>& x, const Vec<S>& y) const {
        (void)x;
        return sqrt(sdot(y, y)) + b * y[0];
    }
};

// Zermelo navigation on flat ground with rigid rotation wind
// W = eps (-x2, x1, 0, ...).
struct FishTankF {
    double eps;
    template <class S>
    S operator()(const Vec<S>& x, const Vec<S>& y) const {
        Vec<S> w = Vec<S>::zero(x.size());
        w[0] = -eps * x[1];
        w[1] = eps * x[0];
        S lambda = 1.0 - sdot(w, w);
        S wy = sdot(w, y);
        S y2 = sdot(y, y);
        S root = sqrt(lambda * y2 + wy * wy);
        if (value(wy) <= 0.0) return (root - wy) / lambda;
        return y2 / (root + wy);
    }
};

struct BerwaldMoorF {
    int n;
    template <class S>
    S operator()(const Vec<S>& x, const Vec<S>& y) const {
        (void)x;
        for (int i = 0; i < n; ++i)
            if (value(y[i]) <= 0.0)
                throw DomainViolation("berwald-moor", "direction outside the positive cone");
        S s{};
        for (int i = 0; i < n; ++i) s += log(y[i]);
        return exp(s * (1.0 / n));
    }
};

struct PerturbedF {
    double eps;
    template <class S>
    S operator()(const Vec<S>& x, const Vec<S>& y) const {
        return sqrt(sdot(y, y)) + eps * x[0] * y[0];
    }
};

// F = |y| + h(rho) <x,y> with h = f(rho)/rho. The tiny guard keeps the
// sqrt differentiable at the chart center, where the limit value is exact.
struct RadialRandersF {
    std::shared_ptr<const ScalarKernel> f;
    template <class S>
    S operator()(const Vec<S>& x, const Vec<S>& y) const {
        S rho = sqrt(sdot(x, x) + 1e-60);
        S h = f->eval(rho) / rho;
        return sqrt(sdot(y, y)) + h * sdot(x, y);
    }
};

}  // namespace

FinslerMetric make_euclidean(int n) {
    return {"euclidean", n, ChartDomain::ball(n, 100.0), make_kernel(EuclideanF{}), true,
            false, 0.0, 0.0};
}

FinslerMetric make_sphere(int n) {
    // stereographic chart; the antipode of the chart center sits at infinity
    return {"sphere", n, ChartDomain::ball(n, 100.0), make_kernel(ConformalBallF{+1.0}), true,
            false, 1.0, 0.0};
}

FinslerMetric make_hyperbolic(int n) {
    return {"hyperbolic", n, ChartDomain::ball(n, 1.0 - 1e-10),
            make_kernel(ConformalBallF{-1.0}), true, false, -1.0, 0.0};
}

FinslerMetric make_funk(int n) {
    return {"funk", n, ChartDomain::ball(n, 1.0 - 1e-10), make_kernel(FunkF{}), false,
            false, -0.25, 0.5 * (n + 1)};
}

FinslerMetric make_randers_flat(int n, double b) {
    if (std::fabs(b) >= 1.0)
        throw BetaTooLong("randers-flat", "|b| must be < 1");
    return {"randers-flat", n, ChartDomain::ball(n, 100.0), make_kernel(RandersFlatF{b}),
            b == 0.0, false, 0.0, 0.0};
}

FinslerMetric make_fish_tank(double eps) {
    // |W| = eps * rho_12 must stay below 1
    double radius = 0.96 / std::fabs(eps);
    return {"fish-tank", 3, ChartDomain::ball(3, radius), make_kernel(FishTankF{eps}), false,
            false, 0.0, 0.0};
}

FinslerMetric make_berwald_moor(int n) {
    VecD lo = VecD::zero(n), hi = VecD::zero(n);
    for (int i = 0; i < n; ++i) {
        lo[i] = -10.0;
        hi[i] = 10.0;
    }
    return {"berwald-moor", n, ChartDomain::box(lo, hi), make_kernel(BerwaldMoorF{n}), false,
            true, 0.0, {}};
}

FinslerMetric make_perturbed(int n, double eps) {
    VecD lo = VecD::zero(n), hi = VecD::zero(n);
    for (int i = 0; i < n; ++i) {
        lo[i] = -4.0;
        hi[i] = 4.0;
    }
    return {"perturbed", n, ChartDomain::box(lo, hi), make_kernel(PerturbedF{eps}), false,
            false, {}, {}};
}

FinslerMetric make_radial_randers(int n, std::shared_ptr<const ScalarKernel> f,
                                  double sup_bound, std::string name) {
    if (sup_bound >= 1.0)
        throw BetaTooLong("randers-radial", "sup ||beta||_alpha must be < 1");
    return {std::move(name), n, ChartDomain::ball(n, 50.0),
            make_kernel(RadialRandersF{std::move(f)}), false, false, {}, {}};
}

}  // namespace finsler
