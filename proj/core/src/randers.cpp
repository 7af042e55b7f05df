#include "finsler/randers.hpp"

#include <cmath>
#include <sstream>

#include "finsler/expression.hpp"
#include "finsler/harmonic.hpp"
#include "finsler/quadrature.hpp"

namespace finsler {

namespace {

struct FamilyInfo {
    SpaceFormFamily family;
    const char* name;
    bool compact;
    // density = sin/sinh^a(r) * cos/cosh^b(r), dims as functions of n
    int dim(int n) const { return dim_fn(n); }
    int (*dim_fn)(int);
    int (*a_fn)(int);
    int b;
};

const FamilyInfo kFamilies[] = {
    {SpaceFormFamily::Rn, "R^n", false, [](int n) { return n; },
     [](int n) { return n - 1; }, 0},
    {SpaceFormFamily::Sn, "S^n", true, [](int n) { return n; },
     [](int n) { return n - 1; }, 0},
    {SpaceFormFamily::RHn, "RH^n", false, [](int n) { return n; },
     [](int n) { return n - 1; }, 0},
    {SpaceFormFamily::CPn, "CP^n", true, [](int n) { return 2 * n; },
     [](int n) { return 2 * n - 1; }, 1},
    {SpaceFormFamily::CHn, "CH^n", false, [](int n) { return 2 * n; },
     [](int n) { return 2 * n - 1; }, 1},
    {SpaceFormFamily::HPn, "HP^n", true, [](int n) { return 4 * n; },
     [](int n) { return 4 * n - 1; }, 3},
    {SpaceFormFamily::HHn, "HH^n", false, [](int n) { return 4 * n; },
     [](int n) { return 4 * n - 1; }, 3},
    {SpaceFormFamily::CaP2, "CaP^2", true, [](int) { return 16; },
     [](int) { return 15; }, 7},
    {SpaceFormFamily::CaH2, "CaH^2", false, [](int) { return 16; },
     [](int) { return 15; }, 7},
};

const FamilyInfo& info_of(SpaceFormFamily f) {
    for (const auto& fi : kFamilies)
        if (fi.family == f) return fi;
    throw DomainViolation("spaceForm", "unknown family");
}

std::string power_string(const char* base, int p) {
    if (p == 0) return "";
    std::ostringstream os;
    os << base << "(r)";
    if (p != 1) os << "^" << p;
    return os.str();
}

}  // namespace

double SpaceFormBase::density(double r) const {
    const FamilyInfo& fi = info_of(family);
    int a = fi.a_fn(n);
    bool flat = family == SpaceFormFamily::Rn;
    if (flat) return std::pow(r, a);
    if (compact) return std::pow(std::sin(r), a) * std::pow(std::cos(r), fi.b);
    return std::pow(std::sinh(r), a) * std::pow(std::cosh(r), fi.b);
}

std::optional<double> SpaceFormBase::first_zero() const {
    if (!compact) return std::nullopt;
    const FamilyInfo& fi = info_of(family);
    // sin^a vanishes at pi; the cos factor vanishes earlier when present
    return fi.b > 0 ? 0.5 * M_PI : M_PI;
}

SpaceFormBase make_space_form(SpaceFormFamily family, int n) {
    const FamilyInfo& fi = info_of(family);
    SpaceFormBase base;
    base.family = family;
    base.n = n;
    base.dim = fi.dim(n);
    base.compact = fi.compact;
    base.name = fi.name;
    int a = fi.a_fn(n);
    if (family == SpaceFormFamily::Rn) {
        base.formula = "r^" + std::to_string(a);
    } else {
        const char* s = fi.compact ? "sin" : "sinh";
        const char* c = fi.compact ? "cos" : "cosh";
        std::string f = power_string(s, a);
        std::string g = power_string(c, fi.b);
        base.formula = g.empty() ? f : f + " " + g;
    }
    return base;
}

std::vector<SpaceFormBase> all_space_forms(int n) {
    std::vector<SpaceFormBase> out;
    for (const auto& fi : kFamilies) out.push_back(make_space_form(fi.family, n));
    return out;
}

RadialBetaProfile radial_beta_from_expression(const std::string& expr, double r_max) {
    Expr e = Expr::parse(expr, 1, /*allow_y=*/false, /*allow_r=*/true);
    double sup = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        Vec<double> x{r_max * i / 4000.0};
        sup = std::max(sup, e.eval(x, x));
    }
    auto kernel = make_scalar_kernel([e](const auto& r) {
        using S = std::decay_t<decltype(r)>;
        Vec<S> x(1);
        x[0] = r;
        return e.eval(x, x);
    });
    return {kernel, sup};
}

double RandersDensityTable::bh(double r) const {
    double fr = f(r);
    return base.density(r) * std::pow(1.0 - fr * fr, 0.5 * (base.dim + 1));
}
double RandersDensityTable::ht(double r) const { return base.density(r); }
double RandersDensityTable::max(double r) const {
    return base.density(r) * std::pow(1.0 + f(r), 0.5 * (base.dim + 1));
}
double RandersDensityTable::min(double r) const {
    return base.density(r) * std::pow(1.0 - f(r), 0.5 * (base.dim + 1));
}
double RandersDensityTable::density(VolumeFormKind kind, double r) const {
    switch (kind) {
        case VolumeFormKind::BH: return bh(r);
        case VolumeFormKind::HT: return ht(r);
        case VolumeFormKind::Max: return max(r);
        case VolumeFormKind::Min: return min(r);
    }
    return 0.0;
}

std::string RandersDensityTable::formula(VolumeFormKind kind) const {
    std::string d1 = std::to_string(base.dim + 1);
    switch (kind) {
        case VolumeFormKind::BH:
            return base.formula + " [1 - f^2(r)]^(" + d1 + "/2)";
        case VolumeFormKind::HT:
            return base.formula;
        case VolumeFormKind::Max:
            return base.formula + " [1 + f(r)]^(" + d1 + "/2)";
        case VolumeFormKind::Min:
            return base.formula + " [1 - f(r)]^(" + d1 + "/2)";
    }
    return "";
}

RandersDensityTable build_randers_table(const SpaceFormBase& base,
                                        const RadialBetaProfile& f) {
    if (f.sup_bound >= 1.0)
        throw BetaTooLong("buildRandersTable",
                          "sup ||beta||_alpha = " + std::to_string(f.sup_bound) + " >= 1");
    return {base, f};
}

double flat_randers_cross_check(const RadialBetaProfile& f, int n,
                                const std::vector<double>& rho_grid,
                                const CrossCheckOptions& opts) {
    if (f.sup_bound >= 1.0) throw BetaTooLong("flatRandersCrossCheck", "sup f >= 1");
    if (std::fabs(f(0.0)) > 1e-12)
        throw DomainViolation("flatRandersCrossCheck", "f(0) must vanish");

    SpaceFormBase base = make_space_form(SpaceFormFamily::Rn, n);
    RandersDensityTable table = build_randers_table(base, f);
    FinslerMetric metric = make_radial_randers(n, f.f, f.sup_bound);
    VecD p = VecD::zero(n);

    // alpha-radius -> F-arclength: r(rho) = int_0^rho (1 + f)
    auto r_of_rho = [&](double rho) {
        return integrate_adaptive([&](double s) { return 1.0 + f(s); }, 0.0, rho, 24, 1e-13);
    };
    std::vector<double> radii;
    radii.reserve(rho_grid.size());
    for (double rho : rho_grid) radii.push_back(r_of_rho(rho));

    auto dirs = indicatrix_directions(metric, p, opts.directions);
    ProfileOptions popts;
    popts.quad_order = opts.quad_order;
    popts.threads = opts.threads;

    double worst = 0.0;
    for (VolumeFormKind kind : {VolumeFormKind::BH, VolumeFormKind::HT, VolumeFormKind::Max,
                                VolumeFormKind::Min}) {
        DensityProfile prof = density_profile(metric, kind, p, dirs, radii, popts);
        for (size_t j = 0; j < rho_grid.size(); ++j) {
            double jac = 1.0 + f(rho_grid[j]);  // dr/drho
            double analytic = table.density(kind, rho_grid[j]);
            for (size_t k = 0; k < dirs.size(); ++k) {
                double numeric = prof.sigma_bar[k][j] * jac;
                worst = std::max(worst, std::fabs(numeric - analytic) / analytic);
            }
        }
    }
    return worst;
}

std::string emit_density_tables(TableFormat format, const RadialBetaProfile* f,
                              const std::vector<double>* radii, int n) {
    std::ostringstream os;
    auto forms = all_space_forms(n);
    struct TableDef {
        const char* title;
        VolumeFormKind kind;
    };
    const TableDef tables[] = {
        {"Table 1: Riemannian volume densities (= Randers Holmes-Thompson)",
         VolumeFormKind::HT},
        {"Table 2: Randers Busemann-Hausdorff volume densities", VolumeFormKind::BH},
        {"Table 3: Randers maximum volume densities", VolumeFormKind::Max},
        {"Table 4: Randers minimum volume densities", VolumeFormKind::Min},
    };

    for (const auto& tdef : tables) {
        if (format == TableFormat::Markdown) {
            os << "## " << tdef.title << "\n\n";
            os << "| space | density |";
            if (f && radii)
                for (double r : *radii) os << " r=" << r << " |";
            os << "\n|---|---|";
            if (f && radii)
                for (size_t i = 0; i < radii->size(); ++i) os << "---|";
            os << "\n";
        } else {
            os << "# " << tdef.title << "\n";
            os << "space,density";
            if (f && radii)
                for (double r : *radii) os << ",r=" << r;
            os << "\n";
        }
        for (const auto& base : forms) {
            RandersDensityTable table{base, f ? *f : RadialBetaProfile{
                make_scalar_kernel([](const auto& r) {
                    using S = std::decay_t<decltype(r)>;
                    (void)r;
                    return S(0.0);
                }),
                0.0}};
            std::string formula = table.formula(tdef.kind);
            if (format == TableFormat::Markdown) {
                os << "| " << base.name << " | " << formula << " |";
                if (f && radii)
                    for (double r : *radii) os << " " << table.density(tdef.kind, r) << " |";
                os << "\n";
            } else {
                os << base.name << ",\"" << formula << "\"";
                if (f && radii)
                    for (double r : *radii) os << "," << table.density(tdef.kind, r);
                os << "\n";
            }
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace finsler
