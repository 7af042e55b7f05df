// Ricci curvature from the spray Riemann operator, the independent
// density-Taylor route, and the AHF Ricci bound.
#pragma once

#include <optional>
#include <vector>

#include "finsler/measure.hpp"
#include "finsler/metric.hpp"

namespace finsler {

struct CurvatureSample {
    VecD x;
    VecD y;                        // unit direction
    double ricci = 0.0;            // trace of the spray Riemann operator
    std::optional<double> flag_k;  // metric-declared constant K, if any
    double noise_floor = 0.0;      // step-halving estimate of the x-FD noise
};

// Ric(y) = R^k_k with
// R^i_k = 2 d_k G^i - y^j d_j(dy_k G^i) + 2 G^j dy_j(dy_k G^i)
//         - (dy_j G^i)(dy_k G^j).
// y-derivatives are exact (duals); x-derivatives use central differences
// with one Richardson pass.
CurvatureSample ricci(const FinslerMetric& m, const VecD& x, const VecD& y);

// Reads Ric off the r^2 coefficient of the volume-density Taylor expansion:
// fits psi = sigma_bar / r^{n-1} on the radius grid and solves using S and
// S-dot from the measure module. Default grid 0.02..0.2.
double ricci_from_jacobi(const FinslerMetric& m, VolumeFormKind kind, const VecD& x,
                         const VecD& y, std::vector<double> radii = {});

// Ric upper bound -(h+c)^2/(n-1) for AHF manifolds with constant
// S-curvature c and horosphere mean curvature h; c = 0 gives the Berwald
// case bound -h^2/(n-1).
double ahf_ricci_bound(double h, double c, int n);

}  // namespace finsler
