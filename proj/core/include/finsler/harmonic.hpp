// Polar volume-density profiles, Finsler mean curvature of geodesic
// spheres, the Shen-Laplacian cross-check, horosphere limits, and the
// harmonicity verdicts.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "finsler/measure.hpp"
#include "finsler/metric.hpp"

namespace finsler {

struct ProfileOptions {
    int quad_order = 0;   // measure quadrature order (0 = dimension default)
    int threads = 0;      // 0 = decide from FINSLER_LAB_THREADS / hardware
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
};

// sigma_bar_p(r, y) sampled over a radius grid and a direction set. The
// Jacobi frame is g_y-orthonormalized at p and the distortion is taken
// relative to the base point, so psi = sigma_bar / r^{n-1} -> 1 as r -> 0.
struct DensityProfile {
    std::string metric_name;
    VolumeFormKind kind = VolumeFormKind::BH;
    VecD p;
    std::vector<VecD> directions;            // unit F-directions at p
    std::vector<double> radii;               // strictly increasing
    std::vector<std::vector<double>> sigma_bar;  // [direction][radius]
    std::vector<std::vector<double>> psi;        // sigma_bar / r^{n-1}
    int dim = 0;
};

DensityProfile density_profile(const FinslerMetric& m, VolumeFormKind kind, const VecD& p,
                               const std::vector<VecD>& directions,
                               const std::vector<double>& radii,
                               const ProfileOptions& opts = {});

// default direction set: m quasi-uniform indicatrix directions at p
std::vector<VecD> indicatrix_directions(const FinslerMetric& m, const VecD& p, int count);

// Pi(r_j, y_k) = d/dr log sigma_bar by 4th-order differences on a uniform
// radius grid (one-sided at the ends). Throws GridTooCoarse for N < 5.
std::vector<std::vector<double>> mean_curvature_profile(const DensityProfile& profile);

// -c + (n-1) sqrt(K) cot(sqrt(K) r)        for K > 0 (pole at r = pi/sqrt(K))
// -c + (n-1) / r                            for K = 0
// -c + (n-1) sqrt(-K) coth(sqrt(-K) r)      for K < 0
double closed_form_mean_curvature(double K, double c, int n, double r);

struct ShenLaplacianResult {
    double laplacian = 0.0;         // Delta r at x
    double mean_curvature = 0.0;    // Pi from the density profile at (r(x), y)
    double eikonal_residual = 0.0;  // |F*(x, dr) - 1| with dr by differences
    double r = 0.0;                 // d_F(p, x)
};

// Builds the distance field around x by shooting and evaluates Shen's
// Laplacian by finite differences; checks Delta r = Pi. Throws
// CrossCheckFailure when the two routes disagree beyond tol.
ShenLaplacianResult shen_laplacian_of_distance(const FinslerMetric& m, VolumeFormKind kind,
                                               const VecD& p, const VecD& x,
                                               double cross_check_tol = 1e-2);

struct HorosphereResult {
    double h = 0.0;
    double tail_slope = 0.0;
    std::string model;  // "exp-tail" or "algebraic-tail"
};

// lim_{r->inf} Pi(r) estimated by fitting the tail third of the profile
// with h + A exp(-lambda r) and h + B / r, keeping the better model.
// Throws NotConverging when neither fits.
HorosphereResult horosphere_mean_curvature(const FinslerMetric& m, VolumeFormKind kind,
                                           const VecD& p, const VecD& y, double r_large,
                                           const ProfileOptions& opts = {});

struct HarmonicityReport {
    std::string metric_name;
    std::string measure;
    VecD p;
    std::vector<double> radii;
    std::vector<double> spread_by_radius;       // max/min of sigma_bar - 1 per radius
    std::vector<double> mean_curv_spread;       // max - min of Pi per radius
    bool locally_harmonic = false;              // spread < tol at every tested radius
    double passing_prefix_r = 0.0;              // largest prefix radius with spread < tol
    bool mean_curvature_radial = false;         // the Pi-based verdict (must agree)
    bool verdicts_agree = false;
    std::vector<bool> local_at_decade;          // verdict at tol 1e-2, 1e-3, 1e-4
    std::vector<double> c1, c2;                 // per-direction Taylor coefficients
    double c1_spread = 0.0, c2_spread = 0.0;
    bool infinitesimally_harmonic = false;      // c1 and c2 spreads < tol
    std::optional<double> ahf_h;                // filled by the CLI when computed
    std::string ahf_method;                     // tail model used for the estimate
    double tol_spread = 1e-3;
};

// The quartic fit for c1 = S(y) and c2 uses the profile radii <= fit_rmax;
// grids reaching into [0.02, 0.2] give coefficient accuracy ~1e-4.
HarmonicityReport harmonicity_report(const DensityProfile& profile, double tol_spread,
                                     double fit_rmax = 0.25);

// max over r of |sigma_bar_{p1}(r) - sigma_bar_{p2}(r)| / sigma_bar_{p1}(r)
// for a reversible harmonic metric; throws NotHarmonic otherwise.
double base_point_independence_check(const FinslerMetric& m, VolumeFormKind kind,
                                     const VecD& p1, const VecD& p2,
                                     const std::vector<double>& radii,
                                     const ProfileOptions& opts = {});

// CSV: measure,kind,p,y_index,r,sigmaBar,psi,meanCurvature
void write_profile_csv(std::ostream& os, const DensityProfile& profile);

std::string report_to_json(const HarmonicityReport& report);

}  // namespace finsler
