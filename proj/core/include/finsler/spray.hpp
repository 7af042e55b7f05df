// Geodesic spray G^i, nonlinear connection N^i_j, spray x-derivatives, and
// the numerical Berwald test.
#pragma once

#include <optional>

#include "finsler/tensor.hpp"

namespace finsler {

struct SprayValue {
    VecD x;
    VecD y;
    VecD G;                    // spray coefficients, 2-homogeneous in y
    MatD N;                    // N^i_j = dG^i/dy^j
    std::optional<MatD> dGdx;  // dG^i/dx^j, on demand
};

namespace detail {

// G^i = 1/4 g^{ij} { y^l d_l dy_j(F^2) - d_j(F^2) }
template <class S>
Vec<S> spray_vector(const FinslerMetric& m, const Vec<S>& x, const Vec<S>& y) {
    int n = x.size();
    Mat<S> g = metric_tensor(m, x, y);
    Vec<S> bracket(n);
    // mixed term: x-directional derivative along y, then y-partial e_j
    auto xs_dir = lift(seed_dir(x, y));
    for (int j = 0; j < n; ++j) {
        auto ys = seed_axis(lift(y), j);
        Dual<Dual<S>> f2 = f_squared(m, xs_dir, ys);
        S mixed = f2.d.d;  // outer seed e_j on y, inner seed along y on x
        S dxj = f_squared(m, seed_axis(x, j), lift(y)).d;
        bracket[j] = mixed - dxj;
    }
    Vec<S> w(n);
    if (!solve(g, bracket, w)) throw SingularMetric("sprayCoefficients", "fundamental tensor not invertible");
    Vec<S> G(n);
    for (int i = 0; i < n; ++i) G[i] = 0.25 * w[i];
    return G;
}

// N^i_j = dG^i/dy^j by seeding y
template <class S>
Mat<S> spray_connection(const FinslerMetric& m, const Vec<S>& x, const Vec<S>& y) {
    int n = x.size();
    Mat<S> N(n);
    auto xs = lift(x);
    for (int j = 0; j < n; ++j) {
        Vec<Dual<S>> G = spray_vector(m, xs, seed_axis(y, j));
        for (int i = 0; i < n; ++i) N(i, j) = G[i].d;
    }
    return N;
}

// dG^i/dx^j by seeding x
template <class S>
Mat<S> spray_x_derivative(const FinslerMetric& m, const Vec<S>& x, const Vec<S>& y) {
    int n = x.size();
    Mat<S> D(n);
    auto ys = lift(y);
    for (int j = 0; j < n; ++j) {
        Vec<Dual<S>> G = spray_vector(m, seed_axis(x, j), ys);
        for (int i = 0; i < n; ++i) D(i, j) = G[i].d;
    }
    return D;
}

}  // namespace detail

SprayValue spray_coefficients(const FinslerMetric& m, const VecD& x, const VecD& y,
                              bool with_dGdx = false);

struct BerwaldResult {
    double norm = 0.0;         // max-abs entry of the third y-derivative of G
    double noise_floor = 0.0;  // |value(h) - value(h/2)| of the stencil
    bool is_berwald = false;   // norm < max(1e-5, 10 * noise_floor)
};

BerwaldResult berwald_tensor_norm(const FinslerMetric& m, const VecD& x, const VecD& y);

}  // namespace finsler
