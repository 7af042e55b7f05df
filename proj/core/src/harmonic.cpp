#include "finsler/harmonic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <ostream>
#include <thread>

#include <Eigen/Dense>
#include <json.hpp>

#include "finsler/curvature.hpp"
#include "finsler/geodesic.hpp"
#include "finsler/quadrature.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

namespace {

int resolve_threads(int requested, int jobs) {
    int t = requested;
    if (t <= 0) {
        if (const char* env = std::getenv("FINSLER_LAB_THREADS")) t = std::atoi(env);
        if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
        if (t <= 0) t = 1;
    }
    return std::max(1, std::min(t, jobs));
}

// run fn(k) for k in [0, jobs) on a small pool; rethrows the first error
void parallel_for(int jobs, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1) {
        for (int k = 0; k < jobs; ++k) fn(k);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            int k = next.fetch_add(1);
            if (k >= jobs) return;
            try {
                fn(k);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<VecD> indicatrix_directions(const FinslerMetric& m, const VecD& p, int count) {
    std::vector<VecD> dirs;
    for (const VecD& u : fibonacci_directions(m.dim(), count))
        dirs.push_back(u * (1.0 / m.eval(p, u)));
    return dirs;
}

DensityProfile density_profile(const FinslerMetric& m, VolumeFormKind kind, const VecD& p,
                               const std::vector<VecD>& directions,
                               const std::vector<double>& radii, const ProfileOptions& opts) {
    m.require_inside(p, "densityProfile");
    if (directions.empty()) throw InsufficientDirections("densityProfile", "no directions");
    for (size_t j = 1; j < radii.size(); ++j)
        if (radii[j] <= radii[j - 1])
            throw DomainViolation("densityProfile", "radii must be strictly increasing");
    if (radii.empty() || radii.front() <= 0.0)
        throw DomainViolation("densityProfile", "radii must be positive");

    int n = m.dim();
    int mdir = static_cast<int>(directions.size());
    DensityProfile prof;
    prof.metric_name = m.name();
    prof.kind = kind;
    prof.p = p;
    prof.directions = directions;
    prof.radii = radii;
    prof.dim = n;
    prof.sigma_bar.assign(mdir, std::vector<double>(radii.size(), 0.0));
    prof.psi.assign(mdir, std::vector<double>(radii.size(), 0.0));

    double log_sigma_p = std::log(sigma(m, kind, p, opts.quad_order));
    GeodesicOptions go{opts.abs_tol, opts.rel_tol, 0.05};

    parallel_for(mdir, resolve_threads(opts.threads, mdir), [&](int k) {
        VecD y = directions[k] * (1.0 / m.F(p, directions[k]));
        JacobiTrace trace = propagate_jacobi_frame(m, p, y, radii, go);
        if (trace.frames.size() != radii.size())
            throw DomainExit("densityProfile", trace.exit_t);
        // distortion at the base point, per direction
        double det_g0 = value(det(detail::metric_tensor(m, p, y)));
        double tau0 = 0.5 * std::log(det_g0) - log_sigma_p;
        for (size_t j = 0; j < radii.size(); ++j) {
            const JacobiFrame& f = trace.frames[j];
            double tau = 0.5 * std::log(f.det_g) -
                         std::log(sigma(m, kind, f.x, opts.quad_order));
            double sbar = std::exp(-(tau - tau0)) * f.signed_det;
            prof.sigma_bar[k][j] = sbar;
            prof.psi[k][j] = sbar / std::pow(radii[j], n - 1);
        }
    });
    return prof;
}

namespace {

// d/dr of samples on a uniform grid, 4th order, one-sided at the ends
std::vector<double> derivative_uniform(const std::vector<double>& f, double dr) {
    int N = static_cast<int>(f.size());
    std::vector<double> d(N);
    auto at = [&](int j) { return f[j]; };
    for (int j = 0; j < N; ++j) {
        if (j >= 2 && j + 2 < N)
            d[j] = (-at(j + 2) + 8 * at(j + 1) - 8 * at(j - 1) + at(j - 2)) / (12 * dr);
        else if (j == 0)
            d[j] = (-25 * at(0) + 48 * at(1) - 36 * at(2) + 16 * at(3) - 3 * at(4)) / (12 * dr);
        else if (j == 1)
            d[j] = (-3 * at(0) - 10 * at(1) + 18 * at(2) - 6 * at(3) + at(4)) / (12 * dr);
        else if (j == N - 2)
            d[j] = (3 * at(N - 1) + 10 * at(N - 2) - 18 * at(N - 3) + 6 * at(N - 4) -
                    at(N - 5)) /
                   (12 * dr);
        else
            d[j] = (25 * at(N - 1) - 48 * at(N - 2) + 36 * at(N - 3) - 16 * at(N - 4) +
                    3 * at(N - 5)) /
                   (12 * dr);
    }
    return d;
}

bool uniform_grid(const std::vector<double>& r, double* dr_out) {
    if (r.size() < 2) return false;
    double dr = r[1] - r[0];
    for (size_t j = 1; j + 1 < r.size(); ++j)
        if (std::fabs(r[j + 1] - r[j] - dr) > 1e-9 * dr) return false;
    *dr_out = dr;
    return true;
}

// second-order log-derivative on a possibly nonuniform grid
std::vector<double> log_derivative_any(const std::vector<double>& f,
                                       const std::vector<double>& r) {
    int N = static_cast<int>(f.size());
    std::vector<double> d(N, 0.0);
    if (N < 2) return d;
    for (int j = 0; j < N; ++j) {
        if (j == 0 || j == N - 1) {
            int a = j == 0 ? 0 : N - 2, b = j == 0 ? 1 : N - 1;
            d[j] = (std::log(f[b]) - std::log(f[a])) / (r[b] - r[a]);
        } else {
            // three-point nonuniform stencil on log f
            double h1 = r[j] - r[j - 1], h2 = r[j + 1] - r[j];
            double fa = std::log(f[j - 1]), fj = std::log(f[j]), fb = std::log(f[j + 1]);
            d[j] = (fb * h1 * h1 - fa * h2 * h2 + fj * (h2 * h2 - h1 * h1)) /
                   (h1 * h2 * (h1 + h2));
        }
    }
    return d;
}

}  // namespace

std::vector<std::vector<double>> mean_curvature_profile(const DensityProfile& profile) {
    double dr = 0.0;
    if (profile.radii.size() < 5)
        throw GridTooCoarse("meanCurvatureProfile", "need at least 5 radii");
    if (!uniform_grid(profile.radii, &dr))
        throw GridTooCoarse("meanCurvatureProfile", "radius grid must be uniform");
    std::vector<std::vector<double>> result;
    result.reserve(profile.sigma_bar.size());
    for (const auto& row : profile.sigma_bar) {
        std::vector<double> logs(row.size());
        for (size_t j = 0; j < row.size(); ++j) {
            if (!(row[j] > 0.0))
                throw GridTooCoarse("meanCurvatureProfile",
                                    "density vanishes inside the grid (conjugate point?)");
            logs[j] = std::log(row[j]);
        }
        result.push_back(derivative_uniform(logs, dr));
    }
    return result;
}

double closed_form_mean_curvature(double K, double c, int n, double r) {
    if (!(r > 0.0)) throw DomainViolation("closedFormMeanCurvature", "r must be positive");
    if (K > 0.0) {
        double sk = std::sqrt(K);
        if (r >= M_PI / sk)
            throw PoleAtConjugate("closedFormMeanCurvature",
                                  "r beyond the first conjugate radius pi/sqrt(K)");
        return -c + (n - 1) * sk / std::tan(sk * r);
    }
    if (K == 0.0) return -c + (n - 1) / r;
    double sk = std::sqrt(-K);
    return -c + (n - 1) * sk / std::tanh(sk * r);
}

ShenLaplacianResult shen_laplacian_of_distance(const FinslerMetric& m, VolumeFormKind kind,
                                               const VecD& p, const VecD& x,
                                               double cross_check_tol) {
    m.require_inside(p, "shenLaplacianOfDistance");
    m.require_inside(x, "shenLaplacianOfDistance");
    int n = m.dim();

    ShootingOptions shoot;
    ShootingResult center = forward_distance_detail(m, p, x, shoot);
    ShenLaplacianResult out;
    out.r = center.distance;

    double scale = std::min(1.0, m.domain().scale());
    double h1 = 1e-3 * scale;   // outer divergence stencil
    double h2 = 1e-4 * scale;   // inner distance-gradient stencil
    if (m.domain().boundary_margin(x) < 4.0 * (h1 + h2))
        throw StencilOutOfDomain("shenLaplacianOfDistance", "x too close to the boundary");

    auto distance_at = [&](const VecD& xx, const ShootingResult& warm) {
        return forward_distance_detail(m, p, xx, shoot, &warm);
    };

    // dr covector by central differences of the distance field
    auto dr_at = [&](const VecD& xx, const ShootingResult& warm) {
        VecD dr(n);
        for (int l = 0; l < n; ++l) {
            VecD xp = xx, xm = xx;
            xp[l] += h2;
            xm[l] -= h2;
            dr[l] = (distance_at(xp, warm).distance - distance_at(xm, warm).distance) /
                    (2.0 * h2);
        }
        return dr;
    };

    // H^k = sigma * g^{kl}(., grad r) (dr)_l
    auto flux_at = [&](const VecD& xx, const ShootingResult& warm) {
        ShootingResult sr = distance_at(xx, warm);
        VecD grad = sr.arrival_velocity;  // grad r = velocity of the arriving geodesic
        MatD g = detail::metric_tensor(m, xx, grad);
        MatD ginv(n);
        if (!invert(g, ginv))
            throw SingularMetric("shenLaplacianOfDistance", "g(., grad r) not invertible");
        VecD dr = dr_at(xx, sr);
        VecD H = ginv * dr;
        double sig = sigma(m, kind, xx);
        return H * sig;
    };

    double div = 0.0;
    for (int k = 0; k < n; ++k) {
        VecD xp = x, xm = x;
        xp[k] += h1;
        xm[k] -= h1;
        div += (flux_at(xp, center)[k] - flux_at(xm, center)[k]) / (2.0 * h1);
    }
    out.laplacian = div / sigma(m, kind, x);

    // eikonal residual with the FD covector
    VecD dr_center = dr_at(x, center);
    out.eikonal_residual = std::fabs(dual_norm(m, x, dr_center) - 1.0);

    // cross-check against the density-derived mean curvature at (r, y0)
    {
        double r0 = center.distance;
        double delta = 5e-3 * std::max(1.0, r0);
        if (r0 <= 4.0 * delta)
            throw StencilOutOfDomain("shenLaplacianOfDistance", "x too close to p");
        std::vector<double> radii = {r0 - 2 * delta, r0 - delta, r0, r0 + delta,
                                     r0 + 2 * delta};
        DensityProfile prof =
            density_profile(m, kind, p, {center.initial_dir}, radii, {});
        std::vector<double> logs(5);
        for (int j = 0; j < 5; ++j) logs[j] = std::log(prof.sigma_bar[0][j]);
        out.mean_curvature =
            (-logs[4] + 8 * logs[3] - 8 * logs[1] + logs[0]) / (12.0 * delta);
    }

    if (std::fabs(out.laplacian - out.mean_curvature) > cross_check_tol)
        throw CrossCheckFailure("shenLaplacianOfDistance",
                                "Delta r = " + std::to_string(out.laplacian) +
                                    " vs density mean curvature " +
                                    std::to_string(out.mean_curvature));
    return out;
}

namespace {

struct TaylorFit {
    double c1 = 0.0;  // = S(y): psi = 1 - c1 r + c2 r^2 + ...
    double c2 = 0.0;
};

TaylorFit fit_psi(const std::vector<double>& radii, const std::vector<double>& psi,
                  double fit_rmax) {
    std::vector<int> idx;
    for (size_t j = 0; j < radii.size(); ++j)
        if (radii[j] <= fit_rmax) idx.push_back(static_cast<int>(j));
    if (idx.size() < 5)
        for (int j = 0; j < std::min<int>(5, radii.size()); ++j)
            if (std::find(idx.begin(), idx.end(), j) == idx.end()) idx.push_back(j);
    std::sort(idx.begin(), idx.end());
    int N = static_cast<int>(idx.size());
    int terms = std::min(4, N - 1);
    if (terms < 2) throw FitIllConditioned("harmonicityReport", "too few radii for the fit");
    Eigen::MatrixXd A(N, terms);
    Eigen::VectorXd b(N);
    for (int i = 0; i < N; ++i) {
        double r = radii[idx[i]];
        double rk = r;
        for (int t = 0; t < terms; ++t) {
            A(i, t) = rk;
            rk *= r;
        }
        b(i) = psi[idx[i]] - 1.0;
    }
    Eigen::VectorXd coef = A.colPivHouseholderQr().solve(b);
    if (!coef.allFinite()) throw FitIllConditioned("harmonicityReport", "psi fit failed");
    return {-coef(0), terms > 1 ? coef(1) : 0.0};
}

}  // namespace

HarmonicityReport harmonicity_report(const DensityProfile& profile, double tol_spread,
                                     double fit_rmax) {
    int mdir = static_cast<int>(profile.directions.size());
    if (mdir < 8)
        throw InsufficientDirections("harmonicityReport", "need at least 8 directions");
    size_t N = profile.radii.size();

    HarmonicityReport rep;
    rep.metric_name = profile.metric_name;
    rep.measure = to_string(profile.kind);
    rep.p = profile.p;
    rep.radii = profile.radii;
    rep.tol_spread = tol_spread;

    rep.spread_by_radius.resize(N);
    for (size_t j = 0; j < N; ++j) {
        double lo = profile.sigma_bar[0][j], hi = lo;
        for (int k = 1; k < mdir; ++k) {
            lo = std::min(lo, profile.sigma_bar[k][j]);
            hi = std::max(hi, profile.sigma_bar[k][j]);
        }
        rep.spread_by_radius[j] = lo > 0.0 ? hi / lo - 1.0 : 1e300;
    }

    rep.locally_harmonic = true;
    rep.passing_prefix_r = 0.0;
    bool prefix_alive = true;
    for (size_t j = 0; j < N; ++j) {
        bool ok = rep.spread_by_radius[j] < tol_spread;
        if (!ok) rep.locally_harmonic = false;
        if (prefix_alive && ok) rep.passing_prefix_r = profile.radii[j];
        if (!ok) prefix_alive = false;
    }

    for (double tol : {1e-2, 1e-3, 1e-4}) {
        bool ok = true;
        for (double s : rep.spread_by_radius) ok = ok && s < tol;
        rep.local_at_decade.push_back(ok);
    }

    // mean-curvature spread per radius (Prop. Charact equivalence)
    {
        std::vector<std::vector<double>> pis;
        pis.reserve(mdir);
        for (int k = 0; k < mdir; ++k)
            pis.push_back(log_derivative_any(profile.sigma_bar[k], profile.radii));
        rep.mean_curv_spread.resize(N);
        for (size_t j = 0; j < N; ++j) {
            double lo = pis[0][j], hi = lo;
            for (int k = 1; k < mdir; ++k) {
                lo = std::min(lo, pis[k][j]);
                hi = std::max(hi, pis[k][j]);
            }
            rep.mean_curv_spread[j] = hi - lo;
        }
        rep.mean_curvature_radial = true;
        for (double s : rep.mean_curv_spread)
            if (!(s < tol_spread)) rep.mean_curvature_radial = false;
        rep.verdicts_agree = rep.mean_curvature_radial == rep.locally_harmonic;
    }

    rep.c1.resize(mdir);
    rep.c2.resize(mdir);
    for (int k = 0; k < mdir; ++k) {
        TaylorFit fit = fit_psi(profile.radii, profile.psi[k], fit_rmax);
        rep.c1[k] = fit.c1;
        rep.c2[k] = fit.c2;
    }
    auto spread_of = [](const std::vector<double>& v) {
        auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *hi - *lo;
    };
    rep.c1_spread = spread_of(rep.c1);
    rep.c2_spread = spread_of(rep.c2);
    rep.infinitesimally_harmonic = rep.c1_spread < tol_spread && rep.c2_spread < tol_spread;
    return rep;
}

HorosphereResult horosphere_mean_curvature(const FinslerMetric& m, VolumeFormKind kind,
                                           const VecD& p, const VecD& y, double r_large,
                                           const ProfileOptions& opts) {
    if (!(r_large > 2.0))
        throw DomainViolation("horosphereMeanCurvature", "rLarge too small");
    double dr = 0.1;
    std::vector<double> radii;
    for (double r = 0.5; r <= r_large + 1e-9; r += dr) radii.push_back(r);

    DensityProfile prof = density_profile(m, kind, p, {y}, radii, opts);
    std::vector<std::vector<double>> pi = mean_curvature_profile(prof);
    const std::vector<double>& P = pi[0];

    size_t start = radii.size() * 2 / 3;
    std::vector<double> rt(radii.begin() + start, radii.end());
    std::vector<double> pt(P.begin() + start, P.end());
    int N = static_cast<int>(rt.size());

    // model A: h + A exp(-lambda r), lambda by golden section on log-lambda
    auto fit_exp = [&](double lambda, double* h_out, double* a_out) {
        double sw = N, se = 0, see = 0, sp = 0, spe = 0;
        for (int i = 0; i < N; ++i) {
            double e = std::exp(-lambda * rt[i]);
            se += e;
            see += e * e;
            sp += pt[i];
            spe += pt[i] * e;
        }
        double det = sw * see - se * se;
        if (std::fabs(det) < 1e-300) {
            *h_out = sp / sw;
            *a_out = 0.0;
        } else {
            *h_out = (sp * see - se * spe) / det;
            *a_out = (sw * spe - se * sp) / det;
        }
        double rss = 0;
        for (int i = 0; i < N; ++i) {
            double res = pt[i] - (*h_out + *a_out * std::exp(-lambda * rt[i]));
            rss += res * res;
        }
        return std::sqrt(rss / N);
    };
    double lo = std::log(0.02), hi = std::log(5.0);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double hA, aA;
    double fc = fit_exp(std::exp(c), &hA, &aA), fd = fit_exp(std::exp(d), &hA, &aA);
    for (int it = 0; it < 60; ++it) {
        if (fc < fd) {
            hi = d; d = c; fd = fc;
            c = hi - gr * (hi - lo); fc = fit_exp(std::exp(c), &hA, &aA);
        } else {
            lo = c; c = d; fc = fd;
            d = lo + gr * (hi - lo); fd = fit_exp(std::exp(d), &hA, &aA);
        }
    }
    double lambda_best = std::exp(0.5 * (lo + hi));
    double res_exp = fit_exp(lambda_best, &hA, &aA);

    // model B: h + B / r
    double hB, bB, res_alg;
    {
        double sw = N, si = 0, sii = 0, sp = 0, spi = 0;
        for (int i = 0; i < N; ++i) {
            double iv = 1.0 / rt[i];
            si += iv;
            sii += iv * iv;
            sp += pt[i];
            spi += pt[i] * iv;
        }
        double det = sw * sii - si * si;
        hB = (sp * sii - si * spi) / det;
        bB = (sw * spi - si * sp) / det;
        double rss = 0;
        for (int i = 0; i < N; ++i) {
            double res = pt[i] - (hB + bB / rt[i]);
            rss += res * res;
        }
        res_alg = std::sqrt(rss / N);
    }

    HorosphereResult out;
    if (res_exp <= res_alg) {
        out.h = hA;
        out.model = "exp-tail";
    } else {
        out.h = hB;
        out.model = "algebraic-tail";
    }
    out.tail_slope = std::fabs(P[P.size() - 1] - P[P.size() - 2]) / dr;
    double best = std::min(res_exp, res_alg);
    if (best > 5e-3 * std::max(1.0, std::fabs(out.h)))
        throw NotConverging("horosphereMeanCurvature",
                            "tail fit residual " + std::to_string(best));
    return out;
}

double base_point_independence_check(const FinslerMetric& m, VolumeFormKind kind,
                                     const VecD& p1, const VecD& p2,
                                     const std::vector<double>& radii,
                                     const ProfileOptions& opts) {
    if (!m.reversible())
        throw NotHarmonic("basePointIndependenceCheck", "metric is not reversible");
    auto radial = [&](const VecD& p) {
        auto dirs = indicatrix_directions(m, p, 16);
        DensityProfile prof = density_profile(m, kind, p, dirs, radii, opts);
        HarmonicityReport rep = harmonicity_report(prof, 1e-3);
        if (!rep.locally_harmonic)
            throw NotHarmonic("basePointIndependenceCheck",
                              "profile at a base point is not harmonic at tol 1e-3");
        std::vector<double> mean(radii.size(), 0.0);
        for (size_t j = 0; j < radii.size(); ++j) {
            for (size_t k = 0; k < dirs.size(); ++k) mean[j] += prof.sigma_bar[k][j];
            mean[j] /= dirs.size();
        }
        return mean;
    };
    std::vector<double> s1 = radial(p1), s2 = radial(p2);
    double worst = 0.0;
    for (size_t j = 0; j < radii.size(); ++j)
        worst = std::max(worst, std::fabs(s1[j] - s2[j]) / s1[j]);
    return worst;
}

void write_profile_csv(std::ostream& os, const DensityProfile& profile) {
    os << "metric,measure,p,y_index,r,sigmaBar,psi,meanCurvature\n";
    char buf[40];
    auto num = [&](double v) {
        snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    std::string pstr;
    for (int i = 0; i < profile.p.size(); ++i)
        pstr += (i ? ";" : "") + num(profile.p[i]);
    // 4th-order mean curvature on uniform grids, 2nd-order otherwise
    double dr = 0.0;
    bool uniform = profile.radii.size() >= 5 && uniform_grid(profile.radii, &dr);
    std::vector<std::vector<double>> pis;
    pis.reserve(profile.sigma_bar.size());
    for (const auto& row : profile.sigma_bar) {
        bool positive = true;
        for (double v : row) positive = positive && v > 0.0;
        if (uniform && positive) {
            std::vector<double> logs(row.size());
            for (size_t j = 0; j < row.size(); ++j) logs[j] = std::log(row[j]);
            pis.push_back(derivative_uniform(logs, dr));
        } else {
            pis.push_back(log_derivative_any(row, profile.radii));
        }
    }
    for (size_t k = 0; k < profile.sigma_bar.size(); ++k)
        for (size_t j = 0; j < profile.radii.size(); ++j)
            os << profile.metric_name << ',' << to_string(profile.kind) << ',' << pstr << ','
               << k << ',' << num(profile.radii[j]) << ',' << num(profile.sigma_bar[k][j])
               << ',' << num(profile.psi[k][j]) << ',' << num(pis[k][j]) << '\n';
}

std::string report_to_json(const HarmonicityReport& rep) {
    nlohmann::json j;
    j["schema"] = "finsler-lab/1";
    j["metric"] = rep.metric_name;
    j["measure"] = rep.measure;
    std::vector<double> base(rep.p.data(), rep.p.data() + rep.p.size());
    j["base_point"] = base;
    j["radii"] = rep.radii;
    j["spread_by_radius"] = rep.spread_by_radius;
    j["mean_curvature_spread"] = rep.mean_curv_spread;
    j["verdicts"]["local"] = rep.locally_harmonic;
    j["verdicts"]["local_by_decade"] = rep.local_at_decade;
    j["verdicts"]["mean_curvature_radial"] = rep.mean_curvature_radial;
    j["verdicts"]["verdicts_agree"] = rep.verdicts_agree;
    j["verdicts"]["infinitesimal"] = rep.infinitesimally_harmonic;
    if (rep.ahf_h)
        j["verdicts"]["ahf"] = {{"h", *rep.ahf_h}, {"method", rep.ahf_method}};
    else
        j["verdicts"]["ahf"] = nullptr;
    j["passing_prefix_r"] = rep.passing_prefix_r;
    j["coefficients"]["c1"] = rep.c1;
    j["coefficients"]["c2"] = rep.c2;
    j["coefficients"]["c1_spread"] = rep.c1_spread;
    j["coefficients"]["c2_spread"] = rep.c2_spread;
    j["tolerances"]["spread"] = rep.tol_spread;
    j["tolerances"]["decades"] = {1e-2, 1e-3, 1e-4};
    return j.dump(2);
}

}  // namespace finsler
