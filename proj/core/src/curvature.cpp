#include "finsler/curvature.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "finsler/harmonic.hpp"
#include "finsler/spray.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

namespace {

// trace of the spray Riemann operator at a single x-difference step size h;
// y-derivatives are exact duals
double ricci_trace_at_step(const FinslerMetric& m, const VecD& x, const VecD& y, double h) {
    int n = m.dim();

    // 2 d_k G^k by central differences
    double term1 = 0.0;
    for (int k = 0; k < n; ++k) {
        VecD xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        VecD Gp = detail::spray_vector(m, xp, y);
        VecD Gm = detail::spray_vector(m, xm, y);
        term1 += 2.0 * (Gp[k] - Gm[k]) / (2.0 * h);
    }

    // y^j d_j (dy_k G^i): x-directional derivative of N along y
    double term2 = 0.0;
    {
        VecD xp = x + y * h, xm = x - y * h;
        MatD Np = detail::spray_connection(m, xp, y);
        MatD Nm = detail::spray_connection(m, xm, y);
        for (int k = 0; k < n; ++k) term2 += (Np(k, k) - Nm(k, k)) / (2.0 * h);
    }

    // 2 G^j dy_j(dy_k G^i): one dual-directional derivative of N along G
    double term3 = 0.0;
    {
        VecD G = detail::spray_vector(m, x, y);
        Mat<D1> Nd = detail::spray_connection(m, detail::lift(x), detail::seed_dir(y, G));
        for (int k = 0; k < n; ++k) term3 += 2.0 * Nd(k, k).d;
    }

    // (dy_j G^i)(dy_k G^j)
    double term4 = 0.0;
    {
        MatD N = detail::spray_connection(m, x, y);
        MatD NN = N * N;
        term4 = trace(NN);
    }

    return term1 - term2 + term3 - term4;
}

}  // namespace

CurvatureSample ricci(const FinslerMetric& m, const VecD& x, const VecD& y) {
    m.require_inside(x, "ricci");
    double f = m.F(x, y);
    if (!(f > 0.0)) throw DomainViolation("ricci", "y must be nonzero");
    VecD yu = y * (1.0 / f);

    double h = 1e-3 * m.domain().scale();
    double margin = m.domain().boundary_margin(x);
    if (margin < 4.0 * h) h = 0.2 * margin;
    if (!(h > 0.0)) throw DomainViolation("ricci", "x too close to the chart boundary");

    double coarse = ricci_trace_at_step(m, x, yu, h);
    double fine = ricci_trace_at_step(m, x, yu, 0.5 * h);

    CurvatureSample s;
    s.x = x;
    s.y = yu;
    s.ricci = (4.0 * fine - coarse) / 3.0;  // one Richardson pass
    s.noise_floor = std::fabs(fine - coarse);
    s.flag_k = m.known_flag_curvature();
    return s;
}

double ricci_from_jacobi(const FinslerMetric& m, VolumeFormKind kind, const VecD& x,
                         const VecD& y, std::vector<double> radii) {
    if (radii.empty())
        for (int i = 1; i <= 10; ++i) radii.push_back(0.02 * i);
    double f = m.F(x, y);
    if (!(f > 0.0)) throw DomainViolation("ricciFromJacobi", "y must be nonzero");
    VecD yu = y * (1.0 / f);

    DensityProfile profile = density_profile(m, kind, x, {yu}, radii);
    if (profile.psi.empty() || profile.psi[0].size() != radii.size())
        throw FitIllConditioned("ricciFromJacobi", "density profile did not cover the grid");

    // psi(r) = 1 - S r + 1/2 (S^2 - Sdot - Ric/3) r^2 + O(r^3): fit powers
    // r..r^5 with the intercept pinned at 1 (the r^5 term absorbs the
    // remainder that otherwise biases a2 on strongly inhomogeneous metrics)
    int N = static_cast<int>(radii.size());
    int terms = std::min<int>(5, N - 1);
    if (terms < 2)
        throw FitIllConditioned("ricciFromJacobi", "need at least 3 radii for the r^2 fit");
    Eigen::MatrixXd A(N, terms);
    Eigen::VectorXd b(N);
    for (int i = 0; i < N; ++i) {
        double rk = radii[i];
        for (int t = 0; t < terms; ++t) {
            A(i, t) = rk;
            rk *= radii[i];
        }
        b(i) = profile.psi[0][i] - 1.0;
    }
    Eigen::VectorXd coef = A.colPivHouseholderQr().solve(b);
    if (!coef.allFinite()) throw FitIllConditioned("ricciFromJacobi", "quartic fit failed");
    double a2 = coef(1);

    double S = s_curvature(m, kind, x, yu).value;
    double Sdot = s_dot(m, kind, x, yu);
    // a2 = 1/2 (S^2 - Sdot - Ric/3)
    return 3.0 * (S * S - Sdot - 2.0 * a2);
}

double ahf_ricci_bound(double h, double c, int n) {
    if (n < 2) throw DomainViolation("ahfRicciBound", "n must be >= 2");
    return -(h + c) * (h + c) / (n - 1);
}

}  // namespace finsler
