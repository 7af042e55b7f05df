#include "finsler/tensor.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "finsler/quadrature.hpp"

namespace finsler {

namespace {

double min_eigenvalue(const MatD& g) {
    int n = g.size();
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = g(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace

FundamentalTensor fundamental_tensor(const FinslerMetric& m, const VecD& x, const VecD& y) {
    m.require_inside(x, "fundamentalTensor");
    if (norm(y) == 0.0)
        throw DomainViolation("fundamentalTensor", "y must be nonzero");
    MatD g = detail::metric_tensor(m, x, y);
    double d = det(g);
    if (!m.pseudo()) {
        double lam = min_eigenvalue(g);
        double scale = std::fabs(trace(g)) / g.size();
        if (lam <= 1e-10 * std::max(1.0, scale))
            throw NonPositiveDefinite(
                "fundamentalTensor",
                "g has eigenvalue " + std::to_string(lam) + " at the sampled (x,y)");
    }
    return {x, y, g, d};
}

double dual_norm(const FinslerMetric& m, const VecD& x, const VecD& alpha) {
    m.require_inside(x, "dualNorm");
    int n = m.dim();
    double amax = 0.0;
    for (int i = 0; i < n; ++i) amax = std::max(amax, std::fabs(alpha[i]));
    if (amax == 0.0) return 0.0;

    auto objective = [&](const VecD& u) { return dot(alpha, u) / m.eval(x, u); };

    // coarse scan over quasi-uniform directions, then local refinement
    int coarse = n == 2 ? 512 : 2048;
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
        // golden-section on the angle
        double theta = std::atan2(best[1], best[0]);
        double a = theta - 2.0 * M_PI / coarse, b = theta + 2.0 * M_PI / coarse;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double c = b - gr * (b - a), d = a + gr * (b - a);
        auto at = [&](double t) { return objective(VecD{std::cos(t), std::sin(t)}); };
        double fc = at(c), fd = at(d);
        for (int it = 0; it < 80; ++it) {
            if (fc > fd) {
                b = d; d = c; fd = fc;
                c = b - gr * (b - a); fc = at(c);
            } else {
                a = c; c = d; fc = fd;
                d = a + gr * (b - a); fd = at(d);
            }
        }
        return std::max(at(0.5 * (a + b)), fbest);
    }

    // n >= 3: local ascent with shrinking tangent steps
    double step = 2.0 / std::sqrt(static_cast<double>(coarse));
    for (int it = 0; it < 200 && step > 1e-10; ++it) {
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
    return fbest;
}

VecD legendre(const FinslerMetric& m, const VecD& x, const VecD& y) {
    if (norm(y) == 0.0) return VecD::zero(m.dim());
    MatD g = detail::metric_tensor(m, x, y);
    return g * y;
}

VecD legendre_inverse(const FinslerMetric& m, const VecD& x, const VecD& alpha) {
    int n = m.dim();
    double anorm = norm(alpha);
    if (anorm == 0.0) return VecD::zero(n);

    // Newton on Phi(y) = g(x,y) y - alpha; the Jacobian is g(x,y) exactly
    // because the Cartan tensor contracted with y vanishes.
    VecD y = alpha;  // Euclidean seed
    double res0 = 0.0;
    for (int it = 0; it < 100; ++it) {
        MatD g = detail::metric_tensor(m, x, y);
        VecD phi = g * y - alpha;
        double res = norm(phi);
        if (res < 1e-13 * std::max(1.0, anorm)) return y;
        VecD step(n);
        if (!solve(g, phi, step))
            throw SingularMetric("legendreInverse", "fundamental tensor not invertible");
        double damp = 1.0;
        VecD y_new = y - step * damp;
        // keep away from the cone tip; damp while the residual grows
        for (int k = 0; k < 30; ++k) {
            if (norm(y_new) > 1e-12 * anorm) {
                MatD g2 = detail::metric_tensor(m, x, y_new);
                double res2 = norm(g2 * y_new - alpha);
                if (res2 < res) break;
            }
            damp *= 0.5;
            y_new = y - step * damp;
        }
        y = y_new;
        res0 = res;
    }
    throw NoConvergence("legendreInverse",
                        "Newton iteration stalled, residual " + std::to_string(res0));
}

VecD gradient(const FinslerMetric& m, const ScalarField& f, const VecD& x) {
    int n = m.dim();
    VecD df(n);
    if (f.differential) {
        df = f.differential(x);
    } else {
        double h = f.fd_step;
        for (int i = 0; i < n; ++i) {
            VecD xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            df[i] = (f.value(xp) - f.value(xm)) / (2.0 * h);
        }
    }
    if (norm(df) == 0.0) return VecD::zero(n);
    return legendre_inverse(m, x, df);
}

}  // namespace finsler
