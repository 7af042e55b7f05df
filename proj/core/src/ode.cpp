#include "finsler/ode.hpp"

#include <algorithm>
#include <cmath>

#include "finsler/errors.hpp"

namespace finsler {

namespace {

// Dormand-Prince 5(4) coefficients
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// embedded 4th-order weights
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

void hermite(const double* s0, const double* s1, const double* d0, const double* d1,
             double t0, double t1, double t, int dim, double* out, bool derivative) {
    double h = t1 - t0;
    double u = (t - t0) / h;
    if (!derivative) {
        double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
        double h10 = u * (1 - u) * (1 - u);
        double h01 = u * u * (3 - 2 * u);
        double h11 = u * u * (u - 1);
        for (int i = 0; i < dim; ++i)
            out[i] = h00 * s0[i] + h10 * h * d0[i] + h01 * s1[i] + h11 * h * d1[i];
    } else {
        double g00 = 6 * u * (u - 1) / h;
        double g10 = (1 - u) * (1 - 3 * u);
        double g01 = -6 * u * (u - 1) / h;
        double g11 = u * (3 * u - 2);
        for (int i = 0; i < dim; ++i)
            out[i] = g00 * s0[i] + g10 * d0[i] + g01 * s1[i] + g11 * d1[i];
    }
}

}  // namespace

DenseOde DenseOde::integrate(int dim, const OdeRhs& rhs, const std::vector<double>& s0,
                             double t_end, const OdeOptions& opts, const OdeGuard& guard,
                             const char* op) {
    DenseOde ode;
    ode.dim_ = dim;
    ode.forward_ = t_end >= 0.0;
    double dir = ode.forward_ ? 1.0 : -1.0;

    std::vector<double> y = s0, ynew(dim), yerr(dim);
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim),
        tmp(dim);
    double t = 0.0;
    rhs(t, y.data(), k1.data());
    double h = std::min(opts.h_init, opts.h_max) * dir;

    long nsteps = 0;
    while (dir * (t_end - t) > 0.0) {
        if (++nsteps > opts.max_steps) throw StepFailure(op, "step budget exhausted");
        if (dir * (t + h) > dir * t_end) h = t_end - t;
        if (std::fabs(h) < opts.h_min)
            throw StepFailure(op, "step size underflow at t = " + std::to_string(t));

        for (int i = 0; i < dim; ++i) tmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, tmp.data(), k2.data());
        for (int i = 0; i < dim; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, tmp.data(), k3.data());
        for (int i = 0; i < dim; ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, tmp.data(), k4.data());
        for (int i = 0; i < dim; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, tmp.data(), k5.data());
        for (int i = 0; i < dim; ++i)
            tmp[i] = y[i] +
                     h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, tmp.data(), k6.data());
        for (int i = 0; i < dim; ++i)
            ynew[i] = y[i] +
                      h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t + h, ynew.data(), k7.data());  // FSAL

        double err = 0.0;
        for (int i = 0; i < dim; ++i) {
            double e5th = b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i];
            double e4th = e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                          e7 * k7[i];
            double scale =
                opts.abs_tol + opts.rel_tol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
            double d = h * (e5th - e4th) / scale;
            err += d * d;
        }
        err = std::sqrt(err / dim);

        if (err <= 1.0) {
            Step st;
            st.t0 = t;
            st.t1 = t + h;
            st.s0 = y;
            st.s1 = ynew;
            st.d0 = k1;
            st.d1 = k7;
            ode.steps_.push_back(std::move(st));
            t += h;
            y = ynew;
            k1 = k7;

            if (guard && !guard(y.data())) {
                // bisect the crossing time inside this step
                const Step& last = ode.steps_.back();
                double lo = last.t0, hi = last.t1;
                std::vector<double> probe(dim);
                for (int it = 0; it < 60; ++it) {
                    double mid = 0.5 * (lo + hi);
                    hermite(last.s0.data(), last.s1.data(), last.d0.data(), last.d1.data(),
                            last.t0, last.t1, mid, dim, probe.data(), false);
                    if (guard(probe.data())) lo = mid;
                    else hi = mid;
                }
                ode.exited_ = true;
                ode.exit_t_ = lo;
                ode.t_end_ = t;
                return ode;
            }
        }
        double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        factor = std::clamp(factor, 0.2, 5.0);
        h *= factor;
        if (std::fabs(h) > opts.h_max) h = opts.h_max * dir;
    }
    ode.t_end_ = t;
    return ode;
}

const DenseOde::Step& DenseOde::locate(double t) const {
    // binary search over monotone step times
    size_t lo = 0, hi = steps_.size();
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        bool before = forward_ ? steps_[mid].t0 <= t : steps_[mid].t0 >= t;
        if (before) lo = mid;
        else hi = mid;
    }
    return steps_[lo];
}

void DenseOde::eval(double t, double* out) const {
    const Step& st = locate(t);
    hermite(st.s0.data(), st.s1.data(), st.d0.data(), st.d1.data(), st.t0, st.t1, t, dim_,
            out, false);
}

void DenseOde::eval_derivative(double t, double* out) const {
    const Step& st = locate(t);
    hermite(st.s0.data(), st.s1.data(), st.d0.data(), st.d1.data(), st.t0, st.t1, t, dim_,
            out, true);
}

std::vector<double> DenseOde::step_times() const {
    std::vector<double> ts;
    ts.reserve(steps_.size() + 1);
    if (!steps_.empty()) ts.push_back(steps_.front().t0);
    for (const auto& s : steps_) ts.push_back(s.t1);
    return ts;
}

}  // namespace finsler
