// Harmonic Randers spaces over harmonic Riemannian bases: analytic density
// tables for the four measures and the numeric cross-check on the flat
// base.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "finsler/measure.hpp"
#include "finsler/metric.hpp"

namespace finsler {

enum class SpaceFormFamily { Rn, Sn, RHn, CPn, CHn, HPn, HHn, CaP2, CaH2 };

// A harmonic Riemannian base with its closed-form polar volume density.
struct SpaceFormBase {
    SpaceFormFamily family = SpaceFormFamily::Rn;
    int n = 2;        // family parameter
    int dim = 2;      // real dimension
    bool compact = false;
    std::string name;
    std::string formula;  // density as a display string

    double density(double r) const;
    std::optional<double> first_zero() const;  // pi for the compact families
};

SpaceFormBase make_space_form(SpaceFormFamily family, int n);
std::vector<SpaceFormBase> all_space_forms(int n);

// ||beta||_alpha as a radial function, with sup f < 1.
struct RadialBetaProfile {
    std::shared_ptr<const ScalarKernel> f;
    double sup_bound = 0.0;
    double operator()(double r) const { return f->eval(r); }
};

RadialBetaProfile radial_beta_from_expression(const std::string& expr, double r_max = 50.0);

struct RandersDensityTable {
    SpaceFormBase base;
    RadialBetaProfile f;

    // column closed forms; dim+1 exponents follow the extreme-form
    // definition via sqrt(det g)
    double bh(double r) const;
    double ht(double r) const;
    double max(double r) const;
    double min(double r) const;
    double density(VolumeFormKind kind, double r) const;
    std::string formula(VolumeFormKind kind) const;
};

// Throws BetaTooLong when sup f >= 1.
RandersDensityTable build_randers_table(const SpaceFormBase& base, const RadialBetaProfile& f);

// Builds the concrete flat radial Randers metric F = |y| + f(|x|)<x,y>/|x|,
// runs the numeric density pipeline from p = 0 for all four measures, and
// compares with the analytic table in alpha-polar coordinates. Returns the
// max relative discrepancy. rho_grid holds alpha-radii.
struct CrossCheckOptions {
    int directions = 16;
    int quad_order = 0;
    int threads = 0;
};
double flat_randers_cross_check(const RadialBetaProfile& f, int n,
                                const std::vector<double>& rho_grid,
                                const CrossCheckOptions& opts = {});

enum class TableFormat { Markdown, Csv };

// Renders Tables 1-4 (Riemannian bases and the three Randers-modified
// columns) with f symbolic; when f and radii are supplied, numeric columns
// are appended.
std::string emit_density_tables(TableFormat format, const RadialBetaProfile* f = nullptr,
                              const std::vector<double>* radii = nullptr, int n = 2);

}  // namespace finsler
