// Finsler structures on a single chart.
//
// A metric is a positively 1-homogeneous map F(x,y); everything else
// (fundamental tensor, spray, curvatures, measures) is derived from it by
// differentiation in this library. Kernels are type-erased over the dual
// nesting depth so one generic definition serves all derivative orders.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "finsler/domain.hpp"
#include "finsler/dual.hpp"
#include "finsler/errors.hpp"
#include "finsler/smallvec.hpp"

namespace finsler {

class MetricKernel {
  public:
    virtual ~MetricKernel() = default;
    virtual D0 evalF(const Vec<D0>& x, const Vec<D0>& y) const = 0;
    virtual D1 evalF(const Vec<D1>& x, const Vec<D1>& y) const = 0;
    virtual D2 evalF(const Vec<D2>& x, const Vec<D2>& y) const = 0;
    virtual D3 evalF(const Vec<D3>& x, const Vec<D3>& y) const = 0;
    virtual D4 evalF(const Vec<D4>& x, const Vec<D4>& y) const = 0;
};

template <class Fn>
class KernelModel final : public MetricKernel {
  public:
    explicit KernelModel(Fn fn) : fn_(std::move(fn)) {}
    D0 evalF(const Vec<D0>& x, const Vec<D0>& y) const override { return fn_(x, y); }
    D1 evalF(const Vec<D1>& x, const Vec<D1>& y) const override { return fn_(x, y); }
    D2 evalF(const Vec<D2>& x, const Vec<D2>& y) const override { return fn_(x, y); }
    D3 evalF(const Vec<D3>& x, const Vec<D3>& y) const override { return fn_(x, y); }
    D4 evalF(const Vec<D4>& x, const Vec<D4>& y) const override { return fn_(x, y); }

  private:
    Fn fn_;
};

template <class Fn>
std::shared_ptr<const MetricKernel> make_kernel(Fn fn) {
    return std::make_shared<KernelModel<Fn>>(std::move(fn));
}

// 1-D scalar maps (radial beta profiles, expression-supplied f) with the
// same dual-depth erasure.
class ScalarKernel {
  public:
    virtual ~ScalarKernel() = default;
    virtual D0 eval(const D0& r) const = 0;
    virtual D1 eval(const D1& r) const = 0;
    virtual D2 eval(const D2& r) const = 0;
    virtual D3 eval(const D3& r) const = 0;
    virtual D4 eval(const D4& r) const = 0;
};

template <class Fn>
class ScalarModel final : public ScalarKernel {
  public:
    explicit ScalarModel(Fn fn) : fn_(std::move(fn)) {}
    D0 eval(const D0& r) const override { return fn_(r); }
    D1 eval(const D1& r) const override { return fn_(r); }
    D2 eval(const D2& r) const override { return fn_(r); }
    D3 eval(const D3& r) const override { return fn_(r); }
    D4 eval(const D4& r) const override { return fn_(r); }

  private:
    Fn fn_;
};

template <class Fn>
std::shared_ptr<const ScalarKernel> make_scalar_kernel(Fn fn) {
    return std::make_shared<ScalarModel<Fn>>(std::move(fn));
}

// Immutable after construction; safe to share across threads.
class FinslerMetric {
  public:
    FinslerMetric() = default;
    FinslerMetric(std::string name, int dim, ChartDomain domain,
                  std::shared_ptr<const MetricKernel> kernel, bool reversible,
                  bool pseudo = false, std::optional<double> known_K = {},
                  std::optional<double> known_S = {})
        : name_(std::move(name)),
          dim_(dim),
          domain_(domain),
          kernel_(std::move(kernel)),
          reversible_(reversible),
          pseudo_(pseudo),
          known_K_(known_K),
          known_S_(known_S) {}

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    const ChartDomain& domain() const { return domain_; }
    bool reversible() const { return reversible_; }
    // pseudo-Finsler carve-out (Berwald-Moor): positive definiteness not required
    bool pseudo() const { return pseudo_; }
    std::optional<double> known_flag_curvature() const { return known_K_; }
    std::optional<double> known_s_curvature() const { return known_S_; }

    template <class S>
    S eval(const Vec<S>& x, const Vec<S>& y) const { return kernel_->evalF(x, y); }

    // F with the zero-vector convention F(x,0) = 0
    double F(const VecD& x, const VecD& y) const {
        if (norm(y) == 0.0) return 0.0;
        return kernel_->evalF(x, y);
    }

    void require_inside(const VecD& x, const char* op) const {
        if (!domain_.contains(x))
            throw DomainViolation(op, "point outside chart domain of metric '" + name_ + "'");
    }

  private:
    std::string name_;
    int dim_ = 0;
    ChartDomain domain_;
    std::shared_ptr<const MetricKernel> kernel_;
    bool reversible_ = false;
    bool pseudo_ = false;
    std::optional<double> known_K_;
    std::optional<double> known_S_;
};

// ---- metric zoo ----------------------------------------------------------

FinslerMetric make_euclidean(int n);
FinslerMetric make_sphere(int n);        // round metric, stereographic chart, K = 1
FinslerMetric make_hyperbolic(int n);    // Poincare ball, K = -1
FinslerMetric make_funk(int n);          // Funk metric of the unit ball, K = -1/4
FinslerMetric make_randers_flat(int n, double b);          // F = |y| + b y^1
FinslerMetric make_fish_tank(double eps = 0.3);            // n = 3 rotational navigation
FinslerMetric make_berwald_moor(int n);                    // pseudo-Finsler, positive cone
FinslerMetric make_perturbed(int n, double eps = 0.05);    // non-harmonic control
// F = |y| + f(|x|) <x,y>/|x| with radial f, f(0) = 0
FinslerMetric make_radial_randers(int n, std::shared_ptr<const ScalarKernel> f,
                                  double sup_bound, std::string name = "randers-radial");

// zoo lookup used by the CLI; throws ParseError for unknown names
FinslerMetric make_zoo_metric(const std::string& name, int dim);

// JSON metric specs: {name, dim, kind, params}
FinslerMetric metric_from_json_text(const std::string& text);
FinslerMetric load_metric_spec(const std::string& path);

}  // namespace finsler
