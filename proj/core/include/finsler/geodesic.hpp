// Unit-speed geodesics, Jacobi frames, exponential map, forward distance by
// shooting, and first-conjugate-radius detection.
#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "finsler/metric.hpp"
#include "finsler/ode.hpp"

namespace finsler {

struct GeodesicState {
    double t = 0.0;  // arc length
    VecD x;
    VecD v;  // F(x, v) = 1 along the trajectory
};

struct GeodesicTrace {
    std::vector<GeodesicState> states;
    bool exited = false;
    double exit_t = 0.0;
};

struct GeodesicOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double h_max = 0.05;
};

// States at t = 0, dt, 2dt, ..., r_max solving xdd = -2G(x, xd).
GeodesicTrace integrate_geodesic(const FinslerMetric& m, const VecD& p, const VecD& y,
                                 double r_max, double dt, const GeodesicOptions& opts = {});

// gamma_{w/F(p,w)}(F(p,w)); exp_p(0) = p. Throws DomainExit if the chart is left.
VecD exponential_map(const FinslerMetric& m, const VecD& p, const VecD& w,
                     const GeodesicOptions& opts = {});

// State of the geodesic through (p, y) at signed parameter t; t < 0 extends
// the solution of the spray ODE backwards through the base point.
GeodesicState flow_geodesic(const FinslerMetric& m, const VecD& p, const VecD& y, double t,
                            const GeodesicOptions& opts = {});

// g_y-orthonormal basis of T_y I_pM (tangent to the indicatrix at y),
// oriented so that det[e_1, ..., e_{n-1}, y] > 0.
std::vector<VecD> indicatrix_frame(const FinslerMetric& m, const VecD& p, const VecD& y);

struct JacobiFrame {
    double t = 0.0;
    VecD x;
    VecD v;
    std::vector<VecD> J;   // n-1 normal Jacobi fields, J_i(0) = 0
    std::vector<VecD> dJ;  // their derivatives, dJ_i(0) = e_i
    MatD gram;             // g_v(J_i, J_j)
    double signed_det = 0.0;  // det[J_1..J_{n-1}, v]_chart * sqrt(det g(x,v))
    double det_g = 0.0;       // det g(x, v) in chart coordinates
};

struct JacobiTrace {
    VecD p;
    VecD y;
    std::vector<VecD> basis;  // the initial frame e_i
    std::vector<JacobiFrame> frames;
    bool exited = false;
    double exit_t = 0.0;
};

// Co-integrates the variational equations dJ'' = -2(dG/dx)J - 2(dG/dy)J'
// along the geodesic and samples at the requested radii (ascending).
JacobiTrace propagate_jacobi_frame(const FinslerMetric& m, const VecD& p, const VecD& y,
                                   const std::vector<double>& radii,
                                   const GeodesicOptions& opts = {});

// Smallest r <= r_max where the Jacobi frame degenerates. Sign changes of
// the signed frame determinant are bracketed and bisected; even-order
// touches (e.g. spheres in odd frame dimension) are caught by a minimum
// scan. Returns nullopt when no zero occurs in range.
std::optional<double> first_conjugate_radius(const FinslerMetric& m, const VecD& p,
                                             const VecD& y, double r_max,
                                             const GeodesicOptions& opts = {});

struct ShootingOptions {
    double residual_tol = 1e-11;
    int max_newton = 40;
    int extra_starts = 8;  // started directions: 2n + extra_starts
    GeodesicOptions ode{1e-12, 1e-12, 0.05};
};

struct ShootingResult {
    double distance = 0.0;
    VecD initial_dir;       // y on the indicatrix at p
    VecD arrival_velocity;  // unit tangent of the minimal geodesic at q
};

// d_F(p, q) by multi-start shooting; throws NotReached when no geodesic
// from p hits q inside the chart.
ShootingResult forward_distance_detail(const FinslerMetric& m, const VecD& p, const VecD& q,
                                       const ShootingOptions& opts = {},
                                       const ShootingResult* warm_start = nullptr);
double forward_distance(const FinslerMetric& m, const VecD& p, const VecD& q);

// CSV export: t, x1..xn, v1..vn, detJacobiGram
void write_trajectory_csv(std::ostream& os, const JacobiTrace& trace);

}  // namespace finsler
