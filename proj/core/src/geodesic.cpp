#include "finsler/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "finsler/quadrature.hpp"
#include "finsler/spray.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

namespace {

OdeOptions to_ode(const GeodesicOptions& g) {
    OdeOptions o;
    o.abs_tol = g.abs_tol;
    o.rel_tol = g.rel_tol;
    o.h_max = g.h_max;
    return o;
}

// state: [x (n), v (n)]
OdeRhs geodesic_rhs(const FinslerMetric& m) {
    int n = m.dim();
    return [&m, n](double, const double* s, double* ds) {
        VecD x(n), v(n);
        for (int i = 0; i < n; ++i) {
            x[i] = s[i];
            v[i] = s[n + i];
        }
        VecD G = detail::spray_vector(m, x, v);
        for (int i = 0; i < n; ++i) {
            ds[i] = v[i];
            ds[n + i] = -2.0 * G[i];
        }
    };
}

// state: [x (n), v (n), J_1 (n), dJ_1 (n), ..., J_{n-1} (n), dJ_{n-1} (n)]
OdeRhs jacobi_rhs(const FinslerMetric& m) {
    int n = m.dim();
    return [&m, n](double, const double* s, double* ds) {
        VecD x(n), v(n);
        for (int i = 0; i < n; ++i) {
            x[i] = s[i];
            v[i] = s[n + i];
        }
        VecD G(n);
        MatD dGdx(n), N(n);
        for (int j = 0; j < n; ++j) {
            Vec<D1> Gx = detail::spray_vector(m, detail::seed_axis(x, j), detail::lift(v));
            for (int i = 0; i < n; ++i) dGdx(i, j) = Gx[i].d;
            if (j == 0)
                for (int i = 0; i < n; ++i) G[i] = Gx[i].v;
            Vec<D1> Gy = detail::spray_vector(m, detail::lift(x), detail::seed_axis(v, j));
            for (int i = 0; i < n; ++i) N(i, j) = Gy[i].d;
        }
        for (int i = 0; i < n; ++i) {
            ds[i] = v[i];
            ds[n + i] = -2.0 * G[i];
        }
        for (int k = 0; k < n - 1; ++k) {
            const double* J = s + 2 * n + 2 * n * k;
            const double* dJ = J + n;
            double* dsJ = ds + 2 * n + 2 * n * k;
            double* dsdJ = dsJ + n;
            for (int i = 0; i < n; ++i) {
                dsJ[i] = dJ[i];
                double acc = 0.0;
                for (int j = 0; j < n; ++j) acc += dGdx(i, j) * J[j] + N(i, j) * dJ[j];
                dsdJ[i] = -2.0 * acc;
            }
        }
    };
}

VecD unit_direction(const FinslerMetric& m, const VecD& p, const VecD& y, const char* op) {
    double f = m.F(p, y);
    if (!(f > 0.0)) throw DomainViolation(op, "initial direction must be nonzero");
    return y * (1.0 / f);
}

OdeGuard domain_guard(const FinslerMetric& m) {
    int n = m.dim();
    return [&m, n](const double* s) {
        VecD x(n);
        for (int i = 0; i < n; ++i) x[i] = s[i];
        return m.domain().contains(x);
    };
}

GeodesicState state_from(const DenseOde& ode, int n, double t) {
    std::vector<double> buf = ode.eval(t);
    GeodesicState st;
    st.t = t;
    st.x = VecD(n);
    st.v = VecD(n);
    for (int i = 0; i < n; ++i) {
        st.x[i] = buf[i];
        st.v[i] = buf[n + i];
    }
    return st;
}

}  // namespace

GeodesicTrace integrate_geodesic(const FinslerMetric& m, const VecD& p, const VecD& y,
                                 double r_max, double dt, const GeodesicOptions& opts) {
    m.require_inside(p, "integrateGeodesic");
    if (!(r_max > 0.0) || !(dt > 0.0))
        throw DomainViolation("integrateGeodesic", "rMax and dt must be positive");
    int n = m.dim();
    VecD y0 = unit_direction(m, p, y, "integrateGeodesic");

    std::vector<double> s0(2 * n);
    for (int i = 0; i < n; ++i) {
        s0[i] = p[i];
        s0[n + i] = y0[i];
    }
    DenseOde ode = DenseOde::integrate(2 * n, geodesic_rhs(m), s0, r_max, to_ode(opts),
                                       domain_guard(m), "integrateGeodesic");
    GeodesicTrace trace;
    trace.exited = ode.exited();
    trace.exit_t = ode.exit_t();
    double t_cov = ode.exited() ? ode.exit_t() : ode.t_end();
    long last = std::lround(std::floor(r_max / dt + 1e-9));
    for (long i = 0; i <= last; ++i) {
        double t = std::min(i * dt, r_max);
        if (t > t_cov + 1e-12) break;
        trace.states.push_back(state_from(ode, n, std::min(t, t_cov)));
    }
    return trace;
}

GeodesicState flow_geodesic(const FinslerMetric& m, const VecD& p, const VecD& y, double t,
                            const GeodesicOptions& opts) {
    m.require_inside(p, "flowGeodesic");
    int n = m.dim();
    VecD y0 = unit_direction(m, p, y, "flowGeodesic");
    if (t == 0.0) return {0.0, p, y0};
    std::vector<double> s0(2 * n);
    for (int i = 0; i < n; ++i) {
        s0[i] = p[i];
        s0[n + i] = y0[i];
    }
    DenseOde ode = DenseOde::integrate(2 * n, geodesic_rhs(m), s0, t, to_ode(opts),
                                       domain_guard(m), "flowGeodesic");
    if (ode.exited()) throw DomainExit("flowGeodesic", ode.exit_t());
    return state_from(ode, n, t);
}

VecD exponential_map(const FinslerMetric& m, const VecD& p, const VecD& w,
                     const GeodesicOptions& opts) {
    m.require_inside(p, "exponentialMap");
    double r = m.F(p, w);
    if (r == 0.0) return p;
    GeodesicState st = flow_geodesic(m, p, w * (1.0 / r), r, opts);
    return st.x;
}

std::vector<VecD> indicatrix_frame(const FinslerMetric& m, const VecD& p, const VecD& y) {
    int n = m.dim();
    MatD g = detail::metric_tensor(m, p, y);
    VecD gy = g * y;
    double gyy = dot(gy, y);

    // axis seeds, least aligned with y first
    std::vector<int> axes(n);
    for (int i = 0; i < n; ++i) axes[i] = i;
    std::sort(axes.begin(), axes.end(),
              [&](int a, int b) { return std::fabs(y[a]) < std::fabs(y[b]); });

    std::vector<VecD> frame;
    for (int idx : axes) {
        if (static_cast<int>(frame.size()) == n - 1) break;
        VecD w = VecD::axis(n, idx);
        w -= y * (dot(gy, w) / gyy);  // project out y under g_y
        for (const VecD& e : frame) w -= e * dot(g * e, w);
        double len = std::sqrt(std::max(dot(g * w, w), 0.0));
        if (len < 1e-10) continue;
        frame.push_back(w * (1.0 / len));
    }
    if (static_cast<int>(frame.size()) != n - 1)
        throw SingularMetric("indicatrixFrame", "could not span the indicatrix tangent");

    // orient the full frame [e_1, ..., e_{n-1}, y] positively
    MatD fr(n);
    for (int j = 0; j < n - 1; ++j)
        for (int i = 0; i < n; ++i) fr(i, j) = frame[j][i];
    for (int i = 0; i < n; ++i) fr(i, n - 1) = y[i];
    if (det(fr) < 0.0) frame[0] = -frame[0];
    return frame;
}

namespace {

JacobiFrame frame_from_state(const FinslerMetric& m, int n, double t,
                             const std::vector<double>& buf) {
    JacobiFrame f;
    f.t = t;
    f.x = VecD(n);
    f.v = VecD(n);
    for (int i = 0; i < n; ++i) {
        f.x[i] = buf[i];
        f.v[i] = buf[n + i];
    }
    f.J.resize(n - 1, VecD(n));
    f.dJ.resize(n - 1, VecD(n));
    for (int k = 0; k < n - 1; ++k)
        for (int i = 0; i < n; ++i) {
            f.J[k][i] = buf[2 * n + 2 * n * k + i];
            f.dJ[k][i] = buf[2 * n + 2 * n * k + n + i];
        }
    MatD g = detail::metric_tensor(m, f.x, f.v);
    f.gram = MatD(n - 1);
    for (int a = 0; a < n - 1; ++a) {
        VecD gJ = g * f.J[a];
        for (int b = 0; b < n - 1; ++b) f.gram(a, b) = dot(gJ, f.J[b]);
    }
    MatD fr(n);
    for (int j = 0; j < n - 1; ++j)
        for (int i = 0; i < n; ++i) fr(i, j) = f.J[j][i];
    for (int i = 0; i < n; ++i) fr(i, n - 1) = f.v[i];
    f.det_g = det(g);
    f.signed_det = det(fr) * std::sqrt(std::max(f.det_g, 0.0));
    return f;
}

struct JacobiOde {
    DenseOde ode;
    std::vector<VecD> basis;
    VecD y0;
};

JacobiOde integrate_jacobi(const FinslerMetric& m, const VecD& p, const VecD& y, double r_max,
                           const GeodesicOptions& opts, const char* op) {
    m.require_inside(p, op);
    int n = m.dim();
    VecD y0 = unit_direction(m, p, y, op);
    std::vector<VecD> basis = indicatrix_frame(m, p, y0);
    std::vector<double> s0(2 * n * n, 0.0);
    for (int i = 0; i < n; ++i) {
        s0[i] = p[i];
        s0[n + i] = y0[i];
    }
    for (int k = 0; k < n - 1; ++k)
        for (int i = 0; i < n; ++i) s0[2 * n + 2 * n * k + n + i] = basis[k][i];
    DenseOde ode = DenseOde::integrate(2 * n * n, jacobi_rhs(m), s0, r_max, to_ode(opts),
                                       domain_guard(m), op);
    return {std::move(ode), std::move(basis), y0};
}

}  // namespace

JacobiTrace propagate_jacobi_frame(const FinslerMetric& m, const VecD& p, const VecD& y,
                                   const std::vector<double>& radii,
                                   const GeodesicOptions& opts) {
    if (radii.empty())
        throw DomainViolation("propagateJacobiFrame", "empty radius grid");
    int n = m.dim();
    JacobiOde jac =
        integrate_jacobi(m, p, y, radii.back(), opts, "propagateJacobiFrame");
    JacobiTrace trace;
    trace.p = p;
    trace.y = jac.y0;
    trace.basis = jac.basis;
    trace.exited = jac.ode.exited();
    trace.exit_t = jac.ode.exit_t();
    double t_cov = trace.exited ? trace.exit_t : jac.ode.t_end();
    for (double r : radii) {
        if (r > t_cov + 1e-12) break;
        trace.frames.push_back(frame_from_state(m, n, r, jac.ode.eval(std::min(r, t_cov))));
    }
    return trace;
}

std::optional<double> first_conjugate_radius(const FinslerMetric& m, const VecD& p,
                                             const VecD& y, double r_max,
                                             const GeodesicOptions& opts) {
    int n = m.dim();
    JacobiOde jac = integrate_jacobi(m, p, y, r_max, opts, "firstConjugateRadius");
    double t_cov = jac.ode.exited() ? jac.ode.exit_t() : jac.ode.t_end();

    auto D = [&](double t) { return frame_from_state(m, n, t, jac.ode.eval(t)).signed_det; };

    // sample on step endpoints plus interior points
    std::vector<double> times = jac.ode.step_times();
    std::vector<double> ts;
    for (size_t i = 0; i + 1 < times.size(); ++i) {
        if (times[i] >= t_cov) break;
        double a = times[i], b = std::min(times[i + 1], t_cov);
        for (int k = 0; k < 4; ++k) ts.push_back(a + (b - a) * k / 4.0);
    }
    ts.push_back(t_cov);

    double scale = 0.0;
    double prev_t = 0.0, prev_d = 0.0;
    bool have_prev = false;
    // skip the degenerate start: D ~ t^{n-1} near 0
    for (double t : ts) {
        if (t < 1e-6) continue;
        double d = D(t);
        scale = std::max(scale, std::fabs(d));
        if (have_prev && prev_d > 0.0 && d <= 0.0) {
            // bracketing: bisect the sign change
            double lo = prev_t, hi = t;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                if (D(mid) > 0.0) lo = mid;
                else hi = mid;
            }
            return 0.5 * (lo + hi);
        }
        // even-order touch: scan local minima of |D|
        if (have_prev && scale > 0.0 && d > 0.0 && std::fabs(d) < 1e-6 * scale) {
            // golden-section minimum refinement around t
            double a = prev_t, b = std::min(t + (t - prev_t), t_cov);
            const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
            double c = b - gr * (b - a), e = a + gr * (b - a);
            double fc = std::fabs(D(c)), fe = std::fabs(D(e));
            for (int it = 0; it < 60; ++it) {
                if (fc < fe) {
                    b = e; e = c; fe = fc;
                    c = b - gr * (b - a); fc = std::fabs(D(c));
                } else {
                    a = c; c = e; fc = fe;
                    e = a + gr * (b - a); fe = std::fabs(D(e));
                }
            }
            double tm = 0.5 * (a + b);
            if (std::fabs(D(tm)) < 1e-5 * scale) return tm;
        }
        prev_t = t;
        prev_d = d;
        have_prev = true;
    }
    return std::nullopt;
}

ShootingResult forward_distance_detail(const FinslerMetric& m, const VecD& p, const VecD& q,
                                       const ShootingOptions& opts,
                                       const ShootingResult* warm_start) {
    m.require_inside(p, "forwardDistance");
    m.require_inside(q, "forwardDistance");
    int n = m.dim();
    double qdist = dist(p, q);
    if (qdist == 0.0) return {0.0, VecD::zero(n), VecD::zero(n)};

    double tol = opts.residual_tol * std::max(1.0, qdist);

    std::vector<std::pair<VecD, double>> starts;
    if (warm_start) starts.push_back({warm_start->initial_dir, warm_start->distance});
    {
        VecD u = (q - p) * (1.0 / qdist);
        starts.push_back({u * (1.0 / m.eval(p, u)), qdist * m.eval(p, u)});
        for (const VecD& d : fibonacci_directions(n, 2 * n + opts.extra_starts)) {
            double f = m.eval(p, d);
            starts.push_back({d * (1.0 / f), qdist * f});
        }
    }

    // each direction seeds its Newton radius from a coarse scan of the
    // chart distance to q along its own geodesic; a plain chart-length
    // estimate can overshoot conjugate points on curved charts
    auto scanned_radius = [&](const VecD& y, double r_guess) {
        double r_scan = std::min(std::max(2.0 * r_guess, 1.0), 3.0 * r_guess + 2.0);
        std::vector<double> s0(2 * n);
        for (int i = 0; i < n; ++i) {
            s0[i] = p[i];
            s0[n + i] = y[i];
        }
        DenseOde ode;
        try {
            ode = DenseOde::integrate(2 * n, geodesic_rhs(m), s0, r_scan, to_ode(opts.ode),
                                      domain_guard(m), "forwardDistance");
        } catch (const Error&) {
            return r_guess;
        }
        double t_cov = ode.exited() ? ode.exit_t() : ode.t_end();
        double best_t = r_guess, best_d = 1e300;
        std::vector<double> buf(2 * n);
        std::vector<double> times = ode.step_times();
        for (size_t i = 0; i + 1 < times.size(); ++i) {
            for (int k = 0; k < 4; ++k) {
                double t = times[i] + (std::min(times[i + 1], t_cov) - times[i]) * k / 4.0;
                if (t <= 0.0 || t > t_cov) continue;
                ode.eval(t, buf.data());
                double d2 = 0.0;
                for (int j = 0; j < n; ++j) d2 += (buf[j] - q[j]) * (buf[j] - q[j]);
                if (d2 < best_d) {
                    best_d = d2;
                    best_t = t;
                }
            }
        }
        return best_t;
    };

    std::optional<ShootingResult> best;
    for (size_t si = 0; si < starts.size(); ++si) {
        VecD y = starts[si].first;
        double r = std::max(starts[si].second, 1e-6);
        if (!(warm_start && si == 0)) r = std::max(scanned_radius(y, r), 1e-6);
        double prev_res = 1e300;
        for (int it = 0; it < opts.max_newton; ++it) {
            JacobiOde jac;
            try {
                jac = integrate_jacobi(m, p, y, r, opts.ode, "forwardDistance");
            } catch (const Error&) {
                break;
            }
            double t_cov = jac.ode.exited() ? jac.ode.exit_t() : jac.ode.t_end();
            if (t_cov < r) {
                r = 0.9 * t_cov;
                if (r < 1e-8) break;
                continue;
            }
            JacobiFrame f = frame_from_state(m, n, r, jac.ode.eval(r));
            VecD residual = f.x - q;
            double res = norm(residual);
            if (res < tol) {
                ShootingResult sr{r, y, f.v};
                if (!best || sr.distance < best->distance) best = sr;
                break;
            }
            // Newton step in (indicatrix angles, r)
            MatD Jm(n);
            for (int j = 0; j < n - 1; ++j)
                for (int i = 0; i < n; ++i) Jm(i, j) = f.J[j][i];
            for (int i = 0; i < n; ++i) Jm(i, n - 1) = f.v[i];
            VecD delta(n);
            if (!solve(Jm, residual, delta)) break;
            // trust region
            double limit = std::max({std::fabs(delta[n - 1]) / std::max(0.5 * r, 0.1), 1.0});
            for (int i = 0; i < n - 1; ++i)
                limit = std::max(limit, std::fabs(delta[i]) / 0.7);
            double damp = 1.0 / limit;
            if (res > prev_res) damp *= 0.5;
            VecD w = y;
            for (int i = 0; i < n - 1; ++i) w -= jac.basis[i] * (damp * delta[i]);
            double fw = m.eval(p, w);
            if (!(fw > 0.0)) break;
            y = w * (1.0 / fw);
            r = std::max(r - damp * delta[n - 1], 0.05 * r);
            prev_res = res;
        }
    }
    if (!best)
        throw NotReached("forwardDistance", "no shooting solution reached the target in-chart");
    return *best;
}

double forward_distance(const FinslerMetric& m, const VecD& p, const VecD& q) {
    return forward_distance_detail(m, p, q).distance;
}

void write_trajectory_csv(std::ostream& os, const JacobiTrace& trace) {
    int n = trace.p.size();
    os << "t";
    for (int i = 1; i <= n; ++i) os << ",x" << i;
    for (int i = 1; i <= n; ++i) os << ",v" << i;
    os << ",detJacobiGram\n";
    char buf[40];
    auto put = [&](double v) {
        snprintf(buf, sizeof buf, "%.17g", v);
        os << buf;
    };
    for (const auto& f : trace.frames) {
        put(f.t);
        for (int i = 0; i < n; ++i) {
            os << ",";
            put(f.x[i]);
        }
        for (int i = 0; i < n; ++i) {
            os << ",";
            put(f.v[i]);
        }
        os << ",";
        put(det(f.gram));
        os << "\n";
    }
}

}  // namespace finsler
