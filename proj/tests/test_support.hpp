// Shared fixtures for the unit suites: the metric zoo with sampling boxes,
// seeded generators, and independent finite-difference oracles.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "finsler/finsler.hpp"

namespace testsupport {

using namespace finsler;

struct ZooEntry {
    FinslerMetric metric;
    double sample_radius;  // random x stay inside this ball
};

// metrics with positive-definite g everywhere on their sampling region
inline std::vector<ZooEntry> proper_zoo() {
    std::vector<ZooEntry> zoo;
    zoo.push_back({make_euclidean(2), 2.0});
    zoo.push_back({make_euclidean(3), 2.0});
    zoo.push_back({make_sphere(2), 1.5});
    zoo.push_back({make_hyperbolic(2), 0.8});
    zoo.push_back({make_funk(2), 0.95});
    zoo.push_back({make_randers_flat(2, 0.5), 2.0});
    zoo.push_back({make_randers_flat(3, 0.3), 2.0});
    zoo.push_back({make_fish_tank(), 2.0});
    zoo.push_back({make_zoo_metric("randers-radial", 2), 2.0});
    zoo.push_back({make_perturbed(2), 2.0});
    return zoo;
}

inline VecD random_point(std::mt19937& rng, int dim, double radius) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.05, 0.95);
    VecD x(dim);
    for (int i = 0; i < dim; ++i) x[i] = g(rng);
    return x * (radius * u(rng) / norm(x));
}

inline VecD random_direction(std::mt19937& rng, int dim) {
    std::normal_distribution<double> g;
    VecD y(dim);
    double len = 0.0;
    while (len < 1e-3) {
        for (int i = 0; i < dim; ++i) y[i] = g(rng);
        len = norm(y);
    }
    return y * (1.0 / len);
}

// independent oracle: g_ij = 1/2 d2(F^2)/dyi dyj by central differences
inline MatD fd_metric_tensor(const FinslerMetric& m, const VecD& x, const VecD& y, double h) {
    int n = m.dim();
    auto f2 = [&](const VecD& yy) {
        double f = m.eval(x, yy);
        return f * f;
    };
    MatD g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            VecD ypp = y, ypm = y, ymp = y, ymm = y;
            ypp[i] += h; ypp[j] += h;
            ypm[i] += h; ypm[j] -= h;
            ymp[i] -= h; ymp[j] += h;
            ymm[i] -= h; ymm[j] -= h;
            g(i, j) = 0.5 * (f2(ypp) - f2(ypm) - f2(ymp) + f2(ymm)) / (4.0 * h * h);
        }
    return g;
}

}  // namespace testsupport
