// finsler-lab: density profiles, harmonicity reports, and Randers tables
// from the command line.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "finsler/finsler.hpp"

namespace fs = std::filesystem;
using namespace finsler;

namespace {

// ---- output staging: write to temp files, rename only on success ---------

class OutputStage {
  public:
    explicit OutputStage(fs::path dir) : dir_(std::move(dir)) {}

    void add(const std::string& name, const std::string& content) {
        fs::create_directories(dir_);
        fs::path tmp = dir_ / (name + ".tmp");
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.close();
        staged_.push_back({tmp, dir_ / name});
    }

    void commit() {
        for (auto& [tmp, final_path] : staged_) fs::rename(tmp, final_path);
        for (auto& [tmp, final_path] : staged_)
            std::cout << "wrote " << final_path.string() << "\n";
        staged_.clear();
    }

    ~OutputStage() {
        for (auto& [tmp, final_path] : staged_) {
            std::error_code ec;
            fs::remove(tmp, ec);
        }
    }

  private:
    fs::path dir_;
    std::vector<std::pair<fs::path, fs::path>> staged_;
};

std::string fmt(double v) {
    char buf[40];
    snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---- tiny SVG line plots --------------------------------------------------

std::string svg_line_plot(const std::string& title, const std::vector<double>& xs,
                          const std::vector<std::vector<double>>& series, bool log_y) {
    const int W = 760, H = 500, ML = 70, MR = 20, MT = 40, MB = 50;
    double xmin = xs.front(), xmax = xs.back();
    double ymin = 1e300, ymax = -1e300;
    auto tr = [&](double v) { return log_y ? std::log10(std::max(v, 1e-300)) : v; };
    for (const auto& s : series)
        for (double v : s) {
            ymin = std::min(ymin, tr(v));
            ymax = std::max(ymax, tr(v));
        }
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto py = [&](double y) { return H - MB - (tr(y) - ymin) / (ymax - ymin) * (H - MT - MB); };

    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
       << "' viewBox='0 0 " << W << " " << H << "'>\n";
    os << "<rect width='100%' height='100%' fill='white'/>\n";
    os << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='15'>" << title
       << "</text>\n";
    // axes
    os << "<line x1='" << ML << "' y1='" << H - MB << "' x2='" << W - MR << "' y2='" << H - MB
       << "' stroke='black'/>\n";
    os << "<line x1='" << ML << "' y1='" << MT << "' x2='" << ML << "' y2='" << H - MB
       << "' stroke='black'/>\n";
    for (int k = 0; k <= 5; ++k) {
        double x = xmin + (xmax - xmin) * k / 5.0;
        os << "<text x='" << px(x) << "' y='" << H - MB + 18
           << "' text-anchor='middle' font-size='11'>" << x << "</text>\n";
        double yv = ymin + (ymax - ymin) * k / 5.0;
        double yd = log_y ? std::pow(10.0, yv) : yv;
        os << "<text x='" << ML - 6 << "' y='" << H - MB - (H - MT - MB) * k / 5.0 + 4
           << "' text-anchor='end' font-size='11'>" << (log_y ? fmt(yd) : std::to_string(yd))
           << "</text>\n";
    }
    const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                            "#8c564b", "#e377c2", "#7f7f7f"};
    for (size_t k = 0; k < series.size(); ++k) {
        os << "<polyline fill='none' stroke='" << colors[k % 8] << "' stroke-width='1' points='";
        for (size_t j = 0; j < xs.size(); ++j)
            os << px(xs[j]) << "," << py(series[k][j]) << " ";
        os << "'/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

// ---- shared config --------------------------------------------------------

struct CommonConfig {
    std::string metric_path;
    std::string zoo;
    int dim = 2;
    std::string measure = "bh";
    std::string base;
    int dirs = 32;
    double rmin = 0.1, rmax = 2.0;
    int rn = 20;
    double tol = 1e-3;
    std::string out = ".";
    std::vector<std::string> formats = {"csv"};
    int quad_order = 0;
};

void add_common(CLI::App* cmd, CommonConfig& cfg, bool with_grid = true) {
    cmd->add_option("--metric", cfg.metric_path, "path to a JSON metric spec");
    cmd->add_option("--zoo", cfg.zoo,
                    "zoo metric name (euclidean|sphere|hyperbolic|funk|randers-flat|"
                    "fish-tank|berwald-moor|perturbed|randers-radial)");
    cmd->add_option("--dim", cfg.dim, "chart dimension for zoo metrics");
    cmd->add_option("--measure", cfg.measure, "volume form: bh|ht|max|min");
    cmd->add_option("--base", cfg.base, "base point, comma separated");
    cmd->add_option("--dirs", cfg.dirs, "number of indicatrix directions");
    if (with_grid) {
        cmd->add_option("--rmin", cfg.rmin, "smallest radius");
        cmd->add_option("--rmax", cfg.rmax, "largest radius");
        cmd->add_option("--rn", cfg.rn, "number of radii");
    }
    cmd->add_option("--tol", cfg.tol, "harmonicity spread tolerance");
    cmd->add_option("--out", cfg.out, "output directory");
    cmd->add_option("--format", cfg.formats, "output formats: csv,json,md,svg")
        ->delimiter(',');
    cmd->add_option("--quad-order", cfg.quad_order, "sphere quadrature order override");
}

FinslerMetric resolve_metric(const CommonConfig& cfg) {
    if (!cfg.metric_path.empty() && !cfg.zoo.empty())
        throw ParseError("config", "--metric and --zoo are mutually exclusive");
    if (!cfg.metric_path.empty()) return load_metric_spec(cfg.metric_path);
    if (!cfg.zoo.empty()) return make_zoo_metric(cfg.zoo, cfg.dim);
    throw ParseError("config", "one of --metric or --zoo is required");
}

VecD resolve_base(const CommonConfig& cfg, int dim) {
    if (cfg.base.empty()) return VecD::zero(dim);
    VecD p(dim);
    std::stringstream ss(cfg.base);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= dim) throw ParseError("config", "--base has too many components");
        p[i++] = std::stod(item);
    }
    if (i != dim) throw ParseError("config", "--base must have dim components");
    return p;
}

std::vector<double> resolve_radii(const CommonConfig& cfg) {
    if (!(cfg.rmin > 0.0) || !(cfg.rmax > cfg.rmin) || cfg.rn < 2)
        throw ParseError("config", "radius grid must satisfy 0 < rmin < rmax, rn >= 2");
    std::vector<double> radii(cfg.rn);
    for (int i = 0; i < cfg.rn; ++i)
        radii[i] = cfg.rmin + (cfg.rmax - cfg.rmin) * i / (cfg.rn - 1);
    return radii;
}

bool wants(const CommonConfig& cfg, const std::string& f) {
    return std::find(cfg.formats.begin(), cfg.formats.end(), f) != cfg.formats.end();
}

// ---- subcommands -----------------------------------------------------------

int cmd_density(const CommonConfig& cfg) {
    FinslerMetric metric = resolve_metric(cfg);
    VecD p = resolve_base(cfg, metric.dim());
    std::vector<double> radii = resolve_radii(cfg);
    auto dirs = indicatrix_directions(metric, p, cfg.dirs);
    ProfileOptions popts;
    popts.quad_order = cfg.quad_order;
    DensityProfile prof =
        density_profile(metric, volume_form_from_string(cfg.measure), p, dirs, radii, popts);

    OutputStage stage(cfg.out);
    std::string tag = metric.name() + "_" + cfg.measure;
    if (wants(cfg, "csv")) {
        std::ostringstream os;
        write_profile_csv(os, prof);
        stage.add("density_" + tag + ".csv", os.str());
    }
    if (wants(cfg, "svg")) {
        stage.add("density_" + tag + "_sigma.svg",
                  svg_line_plot("sigma_bar vs r (" + tag + ")", prof.radii, prof.sigma_bar,
                                true));
        stage.add("density_" + tag + "_psi.svg",
                  svg_line_plot("psi vs r (" + tag + ")", prof.radii, prof.psi, false));
    }
    stage.commit();
    return 0;
}

int cmd_harmonicity(const CommonConfig& cfg) {
    if (cfg.dirs < 8) throw ParseError("config", "harmonicity requires --dirs >= 8");
    FinslerMetric metric = resolve_metric(cfg);
    VolumeFormKind kind = volume_form_from_string(cfg.measure);
    VecD p = resolve_base(cfg, metric.dim());
    std::vector<double> radii = resolve_radii(cfg);
    auto dirs = indicatrix_directions(metric, p, cfg.dirs);
    ProfileOptions popts;
    popts.quad_order = cfg.quad_order;

    DensityProfile prof = density_profile(metric, kind, p, dirs, radii, popts);
    HarmonicityReport rep = harmonicity_report(prof, cfg.tol);

    // Taylor coefficients from a dedicated small-radius profile
    {
        std::vector<double> fit_radii;
        for (int i = 1; i <= 10; ++i) fit_radii.push_back(0.02 * i);
        DensityProfile fit_prof = density_profile(metric, kind, p, dirs, fit_radii, popts);
        HarmonicityReport fit_rep = harmonicity_report(fit_prof, cfg.tol);
        rep.c1 = fit_rep.c1;
        rep.c2 = fit_rep.c2;
        rep.c1_spread = fit_rep.c1_spread;
        rep.c2_spread = fit_rep.c2_spread;
        rep.infinitesimally_harmonic = fit_rep.infinitesimally_harmonic;
    }

    // AHF estimate along a few directions when no conjugate point interferes
    try {
        double r_large = std::max(cfg.rmax, 20.0);
        bool conjugate = false;
        for (int k = 0; k < std::min<int>(4, dirs.size()); ++k)
            if (first_conjugate_radius(metric, p, dirs[k], r_large)) conjugate = true;
        if (!conjugate) {
            double h_sum = 0.0;
            int used = 0;
            std::string method;
            for (int k = 0; k < std::min<int>(4, dirs.size()); ++k) {
                HorosphereResult hr =
                    horosphere_mean_curvature(metric, kind, p, dirs[k], r_large, popts);
                h_sum += hr.h;
                method = hr.model;
                ++used;
            }
            if (used > 0) {
                rep.ahf_h = h_sum / used;
                rep.ahf_method = method;
            }
        }
    } catch (const Error&) {
        // AHF estimate is best-effort in the CLI report
    }

    OutputStage stage(cfg.out);
    std::string tag = metric.name() + "_" + cfg.measure;
    stage.add("harmonicity_" + tag + ".json", report_to_json(rep));
    if (wants(cfg, "csv")) {
        std::ostringstream os;
        write_profile_csv(os, prof);
        stage.add("density_" + tag + ".csv", os.str());
    }
    if (wants(cfg, "svg"))
        stage.add("harmonicity_" + tag + "_psi.svg",
                  svg_line_plot("psi vs r (" + tag + ")", prof.radii, prof.psi, false));
    stage.commit();
    std::cout << (rep.locally_harmonic ? "locally harmonic" : "NOT locally harmonic")
              << " at tol " << cfg.tol << "\n";
    return 0;
}

struct TablesConfig {
    std::string f_expr;
    int n = 2;
    std::string out = ".";
    std::vector<std::string> formats = {"md"};
    bool check = true;
    std::vector<double> radii = {0.5, 1.0, 1.5, 2.0};
};

int cmd_tables(const TablesConfig& cfg) {
    OutputStage stage(cfg.out);
    std::optional<RadialBetaProfile> f;
    if (!cfg.f_expr.empty()) {
        f = radial_beta_from_expression(cfg.f_expr);
        if (f->sup_bound >= 1.0)
            throw BetaTooLong("cmdTables", "sup f = " + std::to_string(f->sup_bound) + " >= 1");
    }
    auto has = [&](const std::string& s) {
        return std::find(cfg.formats.begin(), cfg.formats.end(), s) != cfg.formats.end();
    };
    if (has("md"))
        stage.add("randers_tables.md",
                  emit_density_tables(TableFormat::Markdown, f ? &*f : nullptr,
                                    f ? &cfg.radii : nullptr, cfg.n));
    if (has("csv"))
        stage.add("randers_tables.csv",
                  emit_density_tables(TableFormat::Csv, f ? &*f : nullptr,
                                    f ? &cfg.radii : nullptr, cfg.n));
    double discrepancy = -1.0;
    if (f && cfg.check) {
        std::vector<double> rho = {0.2, 0.5, 0.8, 1.1, 1.4, 1.7, 2.0};
        discrepancy = flat_randers_cross_check(*f, cfg.n, rho);
    }
    stage.commit();
    if (discrepancy >= 0.0)
        std::cout << "flat Randers cross-check max relative discrepancy: " << fmt(discrepancy)
                  << "\n";
    return 0;
}

struct GeodesicConfig {
    CommonConfig common;
    std::string dir;
    double rmax = 2.0;
    double dt = 0.05;
};

int cmd_geodesic(const GeodesicConfig& cfg) {
    FinslerMetric metric = resolve_metric(cfg.common);
    VecD p = resolve_base(cfg.common, metric.dim());
    VecD y(metric.dim());
    {
        std::stringstream ss(cfg.dir);
        std::string item;
        int i = 0;
        while (std::getline(ss, item, ',')) {
            if (i >= metric.dim()) throw ParseError("config", "--dir has too many components");
            y[i++] = std::stod(item);
        }
        if (i != metric.dim()) throw ParseError("config", "--dir must have dim components");
    }
    std::vector<double> radii;
    for (double r = cfg.dt; r <= cfg.rmax + 1e-12; r += cfg.dt) radii.push_back(r);
    JacobiTrace trace = propagate_jacobi_frame(metric, p, y * (1.0 / metric.F(p, y)), radii);
    OutputStage stage(cfg.common.out);
    std::ostringstream os;
    write_trajectory_csv(os, trace);
    stage.add("geodesic_" + metric.name() + ".csv", os.str());
    stage.commit();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finsler-lab: numerical harmonicity toolkit for Finsler metrics"};
    app.require_subcommand(1);

    CommonConfig density_cfg, harm_cfg;
    TablesConfig tables_cfg;
    GeodesicConfig geo_cfg;

    CLI::App* density = app.add_subcommand("density", "sample a polar volume density profile");
    add_common(density, density_cfg);

    CLI::App* harmonicity =
        app.add_subcommand("harmonicity", "harmonicity verdicts and report JSON");
    add_common(harmonicity, harm_cfg);

    CLI::App* tables = app.add_subcommand("tables", "emit the Randers density tables");
    tables->add_option("--f", tables_cfg.f_expr, "radial beta length f(r) expression");
    tables->add_option("--n", tables_cfg.n, "family parameter n");
    tables->add_option("--out", tables_cfg.out, "output directory");
    tables->add_option("--format", tables_cfg.formats, "md,csv")->delimiter(',');
    tables->add_option("--radii", tables_cfg.radii, "numeric sample radii")->delimiter(',');
    tables->add_flag("!--no-check", tables_cfg.check,
                     "skip the flat-base numeric cross-check");

    CLI::App* geodesic = app.add_subcommand("geodesic", "export a geodesic trajectory CSV");
    add_common(geodesic, geo_cfg.common, false);
    geodesic->add_option("--dir", geo_cfg.dir, "initial direction, comma separated")
        ->required();
    geodesic->add_option("--rmax", geo_cfg.rmax, "arc length to integrate");
    geodesic->add_option("--dt", geo_cfg.dt, "sampling step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(density)) return cmd_density(density_cfg);
        if (app.got_subcommand(harmonicity)) return cmd_harmonicity(harm_cfg);
        if (app.got_subcommand(tables)) return cmd_tables(tables_cfg);
        if (app.got_subcommand(geodesic)) return cmd_geodesic(geo_cfg);
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const BetaTooLong& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numeric failure in " << e.op() << ": " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
