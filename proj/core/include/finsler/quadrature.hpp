// Gauss-Legendre rules, sphere quadrature over indicatrix integrands, and
// low-discrepancy direction sets.
#pragma once

#include <functional>
#include <vector>

#include "finsler/smallvec.hpp"

namespace finsler {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// cached Newton-computed rule
const GaussRule& gauss_legendre(int order);

// integral over [a,b] with one panel of the given order
double integrate_panel(const std::function<double(double)>& f, double a, double b, int order);

// adaptive composite Gauss-Legendre; refines panels until the local
// order-vs-double-order disagreement is below tol (relative to the whole)
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          int order, double rel_tol = 1e-12, int max_depth = 13);

// Integral of f(u) du over the Euclidean unit sphere S^{n-1}. The base rule
// is a product Gauss-Legendre of `order` in the polar angles; panels are
// refined adaptively so sharply anisotropic indicatrices (Funk near the
// chart boundary) stay resolved.
double integrate_sphere(int n, int order, const std::function<double(const VecD&)>& f);

// surface measure of S^{n-1} and volume of the unit ball B^n
double sphere_area(int n);
double unit_ball_volume(int n);

// m quasi-uniform directions on S^{n-1} (equal angles for n = 2, Fibonacci
// spiral for n = 3, R2-sequence angles above)
std::vector<VecD> fibonacci_directions(int n, int m);

}  // namespace finsler
