#include "finsler/spray.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace finsler {

SprayValue spray_coefficients(const FinslerMetric& m, const VecD& x, const VecD& y,
                              bool with_dGdx) {
    m.require_inside(x, "sprayCoefficients");
    if (norm(y) == 0.0) throw DomainViolation("sprayCoefficients", "y must be nonzero");
    SprayValue out;
    out.x = x;
    out.y = y;
    int n = m.dim();
    // one pass of y-seeded evaluations yields G and N together
    out.N = MatD(n);
    for (int j = 0; j < n; ++j) {
        Vec<D1> G = detail::spray_vector(m, detail::lift(x), detail::seed_axis(y, j));
        for (int i = 0; i < n; ++i) out.N(i, j) = G[i].d;
        if (j == 0) {
            out.G = VecD(n);
            for (int i = 0; i < n; ++i) out.G[i] = G[i].v;
        }
    }
    if (with_dGdx) {
        MatD D(n);
        for (int j = 0; j < n; ++j) {
            Vec<D1> G = detail::spray_vector(m, detail::seed_axis(x, j), detail::lift(y));
            for (int i = 0; i < n; ++i) D(i, j) = G[i].d;
        }
        out.dGdx = D;
    }
    return out;
}

namespace {

// third y-derivatives of G as second central differences of the exact N,
// flattened over (i<=j, a, b)
std::vector<double> third_derivative_components(const FinslerMetric& m, const VecD& x,
                                                const VecD& y, double h) {
    int n = m.dim();
    auto N_at = [&](const VecD& yy) { return detail::spray_connection(m, x, yy); };
    MatD N0 = N_at(y);
    std::vector<double> comps;
    comps.reserve(n * n * n * (n + 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            MatD dd(n);
            if (i == j) {
                VecD yp = y, ym = y;
                yp[i] += h;
                ym[i] -= h;
                MatD Np = N_at(yp), Nm = N_at(ym);
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        dd(a, b) = (Np(a, b) - 2.0 * N0(a, b) + Nm(a, b)) / (h * h);
            } else {
                VecD ypp = y, ypm = y, ymp = y, ymm = y;
                ypp[i] += h; ypp[j] += h;
                ypm[i] += h; ypm[j] -= h;
                ymp[i] -= h; ymp[j] += h;
                ymm[i] -= h; ymm[j] -= h;
                MatD Npp = N_at(ypp), Npm = N_at(ypm), Nmp = N_at(ymp), Nmm = N_at(ymm);
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        dd(a, b) = (Npp(a, b) - Npm(a, b) - Nmp(a, b) + Nmm(a, b)) /
                                   (4.0 * h * h);
            }
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) comps.push_back(dd(a, b));
        }
    }
    return comps;
}

}  // namespace

BerwaldResult berwald_tensor_norm(const FinslerMetric& m, const VecD& x, const VecD& y) {
    m.require_inside(x, "berwaldTensorNorm");
    if (norm(y) == 0.0) throw DomainViolation("berwaldTensorNorm", "y must be nonzero");
    double h = 1e-3 * norm(y);
    std::vector<double> coarse = third_derivative_components(m, x, y, h);
    std::vector<double> fine = third_derivative_components(m, x, y, 0.5 * h);
    BerwaldResult r;
    for (size_t k = 0; k < coarse.size(); ++k) {
        r.norm = std::max(r.norm, std::fabs((4.0 * fine[k] - coarse[k]) / 3.0));
        r.noise_floor = std::max(r.noise_floor, std::fabs(fine[k] - coarse[k]));
    }
    r.is_berwald = r.norm < std::max(1e-5, 10.0 * r.noise_floor);
    return r;
}

}  // namespace finsler
