// Pointwise tensor quantities derived from F by differentiation in y:
// fundamental tensor, dual norm, Legendre transformation and its inverse,
// and the Finsler gradient.
#pragma once

#include <functional>
#include <optional>

#include "finsler/metric.hpp"

namespace finsler {

struct FundamentalTensor {
    VecD x;
    VecD y;
    MatD g;
    double det_g = 0.0;
};

namespace detail {

template <class S>
Vec<Dual<S>> lift(const Vec<S>& v) {
    Vec<Dual<S>> r(v.size());
    for (int i = 0; i < v.size(); ++i) r[i] = Dual<S>(v[i]);
    return r;
}

template <class S>
Vec<Dual<S>> seed_axis(const Vec<S>& v, int axis) {
    Vec<Dual<S>> r = lift(v);
    r[axis].d = S(1.0);
    return r;
}

template <class S>
Vec<Dual<S>> seed_dir(const Vec<S>& v, const Vec<S>& dir) {
    Vec<Dual<S>> r(v.size());
    for (int i = 0; i < v.size(); ++i) r[i] = Dual<S>(v[i], dir[i]);
    return r;
}

template <class S>
S f_squared(const FinslerMetric& m, const Vec<S>& x, const Vec<S>& y) {
    S f = m.eval(x, y);
    return f * f;
}

// g_ij(x,y) = 1/2 d^2(F^2)/dy_i dy_j, exact via nested duals
template <class S>
Mat<S> metric_tensor(const FinslerMetric& m, const Vec<S>& x, const Vec<S>& y) {
    int n = x.size();
    Mat<S> g(n);
    auto xs = lift(lift(x));
    for (int i = 0; i < n; ++i) {
        auto yi = seed_axis(y, i);  // inner seed e_i
        for (int j = i; j < n; ++j) {
            auto ys = seed_axis(yi, j);  // outer seed e_j
            Dual<Dual<S>> f2 = f_squared(m, xs, ys);
            g(i, j) = 0.5 * f2.d.d;
            g(j, i) = g(i, j);
        }
    }
    return g;
}

}  // namespace detail

// Throws NonPositiveDefinite unless the metric is flagged pseudo-Finsler.
FundamentalTensor fundamental_tensor(const FinslerMetric& m, const VecD& x, const VecD& y);

// F*(x, alpha) = sup { alpha(xi) : xi on the indicatrix }
double dual_norm(const FinslerMetric& m, const VecD& x, const VecD& alpha);

// Legendre transformation J(x,y)_j = g_ij(x,y) y^i, with J(0) = 0
VecD legendre(const FinslerMetric& m, const VecD& x, const VecD& y);

// J*: solves g(x,y) y = alpha by damped Newton (the Jacobian is exactly
// g(x,y) since the Cartan tensor contracted with y vanishes)
VecD legendre_inverse(const FinslerMetric& m, const VecD& x, const VecD& alpha);

// Scalar field with optional analytic differential; when absent the
// differential is taken by central differences.
struct ScalarField {
    std::function<double(const VecD&)> value;
    std::function<VecD(const VecD&)> differential;  // may be empty
    double fd_step = 1e-6;
};

// nabla f(x) = J*(x, df(x)); returns zero when df(x) = 0
VecD gradient(const FinslerMetric& m, const ScalarField& f, const VecD& x);

}  // namespace finsler
