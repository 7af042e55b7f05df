// The four canonical Finsler volume densities, the distortion, and the
// S-curvature (computed by two independent routes).
#pragma once

#include <string>

#include "finsler/metric.hpp"

namespace finsler {

enum class VolumeFormKind { BH, HT, Max, Min };

const char* to_string(VolumeFormKind k);
VolumeFormKind volume_form_from_string(const std::string& s);  // "bh","ht","max","min"

struct MeasureOptions {
    int quad_order = 0;  // 0 = default for the dimension (48 for n <= 3, 24 above)
};

// sigma_BH(x) = Vol(B^n(1)) / Vol(B_F(x,1)), the F-ball volume computed as
// (1/n) * integral of F(x,u)^{-n} over the unit sphere
double sigma_bh(const FinslerMetric& m, const VecD& x, int quad_order = 0);

// sigma_HT(x) = (1 / Vol(B^n(1))) * (1/n) * integral of det g(x,u) F(x,u)^{-n}
double sigma_ht(const FinslerMetric& m, const VecD& x, int quad_order = 0);

// extremum of sqrt(det g(x,y)) over the indicatrix
double sigma_extreme(const FinslerMetric& m, const VecD& x, VolumeFormKind kind);

double sigma(const FinslerMetric& m, VolumeFormKind kind, const VecD& x, int quad_order = 0);

// tau_mu(x,y) = log( sqrt(det g(x,y)) / sigma_mu(x) ), 0-homogeneous in y
double distortion(const FinslerMetric& m, VolumeFormKind kind, const VecD& x, const VecD& y,
                  int quad_order = 0);

struct SCurvatureResult {
    double value = 0.0;           // the local-formula route (returned value)
    double local_route = 0.0;     // trace N - y^i d_i log sigma
    double geodesic_route = 0.0;  // d tau / dt along the geodesic through (x,y)
};

// Computed both ways; throws CrossCheckFailure when the routes disagree by
// more than 1e-4.
SCurvatureResult s_curvature(const FinslerMetric& m, VolumeFormKind kind, const VecD& x,
                             const VecD& y, int quad_order = 0);

// dS/dt along the geodesic through (x,y), by central differences of the
// local formula
double s_dot(const FinslerMetric& m, VolumeFormKind kind, const VecD& x, const VecD& y,
             int quad_order = 0);

}  // namespace finsler
