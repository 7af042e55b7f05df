#include "finsler/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "finsler/errors.hpp"

namespace finsler {

namespace {

GaussRule compute_rule(int order) {
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    // Newton on the Legendre polynomial, symmetric roots
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = order * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    return rule;
}

std::mutex rule_mutex;
std::map<int, GaussRule> rule_cache;

}  // namespace

const GaussRule& gauss_legendre(int order) {
    std::lock_guard<std::mutex> lock(rule_mutex);
    auto it = rule_cache.find(order);
    if (it == rule_cache.end()) it = rule_cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

double integrate_panel(const std::function<double(double)>& f, double a, double b, int order) {
    const GaussRule& rule = gauss_legendre(order);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < order; ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return s * half;
}

namespace {

double adaptive_rec(const std::function<double(double)>& f, double a, double b, int order,
                    double abs_tol, int depth, int max_depth) {
    double whole = integrate_panel(f, a, b, order);
    double mid = 0.5 * (a + b);
    double left = integrate_panel(f, a, mid, order);
    double right = integrate_panel(f, mid, b, order);
    if (depth >= max_depth || std::fabs(left + right - whole) <= abs_tol)
        return left + right;
    return adaptive_rec(f, a, mid, order, 0.5 * abs_tol, depth + 1, max_depth) +
           adaptive_rec(f, mid, b, order, 0.5 * abs_tol, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          int order, double rel_tol, int max_depth) {
    double rough = std::fabs(integrate_panel(f, a, b, order));
    double abs_tol = rel_tol * std::max(rough, 1e-300);
    return adaptive_rec(f, a, b, order, abs_tol, 0, max_depth);
}

double integrate_sphere(int n, int order, const std::function<double(const VecD&)>& f) {
    if (n == 2) {
        auto g = [&](double t) { return f(VecD{std::cos(t), std::sin(t)}); };
        return integrate_adaptive(g, 0.0, 2.0 * M_PI, order, 1e-12);
    }
    if (n == 3) {
        // Gauss-Legendre in the polar angle, uniform rule in the periodic
        // azimuth (spectrally accurate for smooth integrands)
        int m_phi = 2 * order;
        auto outer = [&](double theta) {
            double st = std::sin(theta), ct = std::cos(theta);
            double s = 0.0;
            for (int j = 0; j < m_phi; ++j) {
                double phi = 2.0 * M_PI * (j + 0.5) / m_phi;
                s += f(VecD{st * std::cos(phi), st * std::sin(phi), ct});
            }
            return st * s * (2.0 * M_PI / m_phi);
        };
        return integrate_adaptive(outer, 0.0, M_PI, order, 1e-12, 6);
    }
    if (n == 4) {
        // fixed product rule; chart dimensions above 3 only appear in
        // low-accuracy sampling contexts
        const GaussRule& rule = gauss_legendre(order);
        double total = 0.0;
        for (int i = 0; i < order; ++i) {
            double t1 = 0.5 * M_PI * (rule.nodes[i] + 1.0);
            double w1 = 0.5 * M_PI * rule.weights[i];
            double s1 = std::sin(t1), c1 = std::cos(t1);
            for (int j = 0; j < order; ++j) {
                double t2 = 0.5 * M_PI * (rule.nodes[j] + 1.0);
                double w2 = 0.5 * M_PI * rule.weights[j];
                double s2 = std::sin(t2), c2 = std::cos(t2);
                for (int k = 0; k < order; ++k) {
                    double t3 = M_PI * (rule.nodes[k] + 1.0);
                    double w3 = M_PI * rule.weights[k];
                    VecD u{s1 * s2 * std::cos(t3), s1 * s2 * std::sin(t3), s1 * c2, c1};
                    total += w1 * w2 * w3 * s1 * s1 * s2 * f(u);
                }
            }
        }
        return total;
    }
    throw DomainViolation("integrate_sphere", "supported chart dimensions are 2..4");
}

double sphere_area(int n) { return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n); }

double unit_ball_volume(int n) { return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0); }

std::vector<VecD> fibonacci_directions(int n, int m) {
    std::vector<VecD> dirs;
    dirs.reserve(m);
    if (n == 2) {
        for (int k = 0; k < m; ++k) {
            double t = 2.0 * M_PI * (k + 0.5) / m;
            dirs.push_back(VecD{std::cos(t), std::sin(t)});
        }
        return dirs;
    }
    if (n == 3) {
        const double golden = M_PI * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < m; ++k) {
            double z = 1.0 - 2.0 * (k + 0.5) / m;
            double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            double phi = golden * k;
            dirs.push_back(VecD{rho * std::cos(phi), rho * std::sin(phi), z});
        }
        return dirs;
    }
    // n >= 4: Kronecker sequence through Box-Muller, normalized; quasi-random
    // Gaussians are quasi-uniform on the sphere
    const double irr[8] = {std::sqrt(2.0), std::sqrt(3.0), std::sqrt(5.0), std::sqrt(7.0),
                           std::sqrt(11.0), std::sqrt(13.0), std::sqrt(17.0), std::sqrt(19.0)};
    for (int k = 0; k < m; ++k) {
        VecD u(n);
        for (int i = 0; i < n; i += 2) {
            double a = std::max(std::fmod((k + 1) * irr[i], 1.0), 1e-12);
            double b = std::fmod((k + 1) * irr[(i + 1) % 8], 1.0);
            double r = std::sqrt(-2.0 * std::log(a));
            u[i] = r * std::cos(2.0 * M_PI * b);
            if (i + 1 < n) u[i + 1] = r * std::sin(2.0 * M_PI * b);
        }
        dirs.push_back(u * (1.0 / norm(u)));
    }
    return dirs;
}

}  // namespace finsler
