#include "finsler/measure.hpp"

#include <algorithm>
#include <cmath>

#include "finsler/geodesic.hpp"
#include "finsler/quadrature.hpp"
#include "finsler/spray.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

const char* to_string(VolumeFormKind k) {
    switch (k) {
        case VolumeFormKind::BH: return "bh";
        case VolumeFormKind::HT: return "ht";
        case VolumeFormKind::Max: return "max";
        case VolumeFormKind::Min: return "min";
    }
    return "?";
}

VolumeFormKind volume_form_from_string(const std::string& s) {
    if (s == "bh" || s == "BH") return VolumeFormKind::BH;
    if (s == "ht" || s == "HT") return VolumeFormKind::HT;
    if (s == "max" || s == "MAX") return VolumeFormKind::Max;
    if (s == "min" || s == "MIN") return VolumeFormKind::Min;
    throw ParseError("measure", "unknown volume form '" + s + "' (expected bh|ht|max|min)");
}

namespace {

int default_order(int n) { return n <= 3 ? 48 : 24; }

double det_g(const FinslerMetric& m, const VecD& x, const VecD& u) {
    return value(det(detail::metric_tensor(m, x, u)));
}

}  // namespace

double sigma_bh(const FinslerMetric& m, const VecD& x, int quad_order) {
    m.require_inside(x, "sigmaBH");
    int n = m.dim();
    int order = quad_order > 0 ? quad_order : default_order(n);
    double integral = integrate_sphere(n, order, [&](const VecD& u) {
        double f = m.eval(x, u);
        if (!(f > 1e-12))
            throw QuadratureDivergence("sigmaBH", "F(x,u) vanishes on a quadrature direction");
        return std::pow(f, -n);
    });
    // Vol(B_F(1)) = integral / n
    return unit_ball_volume(n) * n / integral;
}

double sigma_ht(const FinslerMetric& m, const VecD& x, int quad_order) {
    m.require_inside(x, "sigmaHT");
    int n = m.dim();
    int order = quad_order > 0 ? quad_order : default_order(n);
    double integral = integrate_sphere(n, order, [&](const VecD& u) {
        double f = m.eval(x, u);
        if (!(f > 1e-12))
            throw QuadratureDivergence("sigmaHT", "F(x,u) vanishes on a quadrature direction");
        return det_g(m, x, u) * std::pow(f, -n);
    });
    return integral / (n * unit_ball_volume(n));
}

double sigma_extreme(const FinslerMetric& m, const VecD& x, VolumeFormKind kind) {
    m.require_inside(x, "sigmaExtreme");
    int n = m.dim();
    double sign = kind == VolumeFormKind::Max ? 1.0 : -1.0;
    auto objective = [&](const VecD& u) { return sign * std::sqrt(det_g(m, x, u)); };

    int coarse = n == 2 ? 256 : 1024;
    auto dirs = fibonacci_directions(n, coarse);
    VecD best = dirs[0];
    double fbest = objective(best);
    for (const auto& u : dirs) {
        double f = objective(u);
        if (f > fbest) {
            fbest = f;
            best = u;
        }
    }
    if (n == 2) {
        double theta = std::atan2(best[1], best[0]);
        double a = theta - 2.0 * M_PI / coarse, b = theta + 2.0 * M_PI / coarse;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        auto at = [&](double t) { return objective(VecD{std::cos(t), std::sin(t)}); };
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = at(c), fd = at(d);
        for (int it = 0; it < 70; ++it) {
            if (fc > fd) {
                b = d; d = c; fd = fc;
                c = b - gr * (b - a); fc = at(c);
            } else {
                a = c; c = d; fc = fd;
                d = a + gr * (b - a); fd = at(d);
            }
        }
        fbest = std::max(fbest, at(0.5 * (a + b)));
    } else {
        // shrinking tangent-step ascent
        double step = 2.0 / std::sqrt(static_cast<double>(coarse));
        for (int it = 0; it < 300 && step > 1e-9; ++it) {
            bool improved = false;
            for (int i = 0; i < n; ++i) {
                for (double s : {step, -step}) {
                    VecD u = best;
                    u[i] += s;
                    u = u * (1.0 / norm(u));
                    double f = objective(u);
                    if (f > fbest) {
                        fbest = f;
                        best = u;
                        improved = true;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
    }
    return sign * fbest;
}

double sigma(const FinslerMetric& m, VolumeFormKind kind, const VecD& x, int quad_order) {
    switch (kind) {
        case VolumeFormKind::BH: return sigma_bh(m, x, quad_order);
        case VolumeFormKind::HT: return sigma_ht(m, x, quad_order);
        default: return sigma_extreme(m, x, kind);
    }
}

double distortion(const FinslerMetric& m, VolumeFormKind kind, const VecD& x, const VecD& y,
                  int quad_order) {
    if (norm(y) == 0.0) throw DomainViolation("distortion", "y must be nonzero");
    double dg = det_g(m, x, y);
    return 0.5 * std::log(dg) - std::log(sigma(m, kind, x, quad_order));
}

namespace {

// y^i d_i log sigma by central differences
double radial_log_sigma_derivative(const FinslerMetric& m, VolumeFormKind kind, const VecD& x,
                                   const VecD& y, int quad_order) {
    double h = 1e-4 * m.domain().scale();
    double yn = norm(y);
    VecD dir = y * (1.0 / yn);
    VecD xp = x + dir * h, xm = x - dir * h;
    double lp = std::log(sigma(m, kind, xp, quad_order));
    double lm = std::log(sigma(m, kind, xm, quad_order));
    return yn * (lp - lm) / (2.0 * h);
}

}  // namespace

SCurvatureResult s_curvature(const FinslerMetric& m, VolumeFormKind kind, const VecD& x,
                             const VecD& y, int quad_order) {
    m.require_inside(x, "sCurvature");
    double f = m.F(x, y);
    if (std::fabs(f - 1.0) > 1e-6)
        throw DomainViolation("sCurvature", "y must be a unit vector (F(x,y)=1)");

    SCurvatureResult r;
    SprayValue sp = spray_coefficients(m, x, y);
    r.local_route = trace(sp.N) - radial_log_sigma_derivative(m, kind, x, y, quad_order);

    // independent route: 4th-order difference of the distortion along the
    // geodesic through (x, y); the backward arc solves the same spray ODE
    const double h = 1e-2;
    GeodesicOptions go{1e-12, 1e-12, 0.02};
    auto tau_at = [&](double t) {
        GeodesicState s = flow_geodesic(m, x, y, t, go);
        return distortion(m, kind, s.x, s.v, quad_order);
    };
    r.geodesic_route =
        (tau_at(-2.0 * h) - 8.0 * tau_at(-h) + 8.0 * tau_at(h) - tau_at(2.0 * h)) / (12.0 * h);

    r.value = r.local_route;
    if (std::fabs(r.local_route - r.geodesic_route) >= 1e-4)
        throw CrossCheckFailure(
            "sCurvature", "local formula " + std::to_string(r.local_route) +
                              " vs geodesic distortion rate " + std::to_string(r.geodesic_route));
    return r;
}

double s_dot(const FinslerMetric& m, VolumeFormKind kind, const VecD& x, const VecD& y,
             int quad_order) {
    const double h = 1e-2;
    GeodesicOptions go{1e-12, 1e-12, 0.02};
    auto s_at = [&](double t) {
        GeodesicState s = flow_geodesic(m, x, y, t, go);
        SprayValue sp = spray_coefficients(m, s.x, s.v);
        return trace(sp.N) - radial_log_sigma_derivative(m, kind, s.x, s.v, quad_order);
    };
    return (s_at(h) - s_at(-h)) / (2.0 * h);
}

}  // namespace finsler
