// Adaptive explicit Runge-Kutta 5(4) (Dormand-Prince) with cubic Hermite
// dense output. Spray ODEs are non-stiff; this is the single integrator
// used by the geodesic and Jacobi engines.
#pragma once

#include <functional>
#include <vector>

namespace finsler {

struct OdeOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double h_init = 1e-3;
    double h_max = 0.05;
    double h_min = 1e-13;
    long max_steps = 4000000;
};

using OdeRhs = std::function<void(double t, const double* s, double* ds)>;
// returns false once the state leaves the admissible region
using OdeGuard = std::function<bool(const double* s)>;

class DenseOde {
  public:
    // Integrates s' = rhs(t, s) from t = 0 to t_end (either sign).
    // Throws StepFailure on controller underflow. A guard failure stops the
    // integration and records the (bisected) exit time instead of throwing.
    static DenseOde integrate(int dim, const OdeRhs& rhs, const std::vector<double>& s0,
                              double t_end, const OdeOptions& opts = {},
                              const OdeGuard& guard = nullptr, const char* op = "ode");

    int dim() const { return dim_; }
    double t_end() const { return t_end_; }
    bool exited() const { return exited_; }
    double exit_t() const { return exit_t_; }
    long steps() const { return static_cast<long>(steps_.size()); }

    // cubic Hermite interpolation inside the covered range
    void eval(double t, double* out) const;
    std::vector<double> eval(double t) const {
        std::vector<double> r(dim_);
        eval(t, r.data());
        return r;
    }
    // derivative of the interpolant
    void eval_derivative(double t, double* out) const;

    // accepted step endpoints (ascending |t|), useful for event scanning
    std::vector<double> step_times() const;

  private:
    struct Step {
        double t0, t1;
        std::vector<double> s0, s1, d0, d1;
    };

    const Step& locate(double t) const;

    int dim_ = 0;
    double t_end_ = 0.0;
    bool exited_ = false;
    double exit_t_ = 0.0;
    bool forward_ = true;
    std::vector<Step> steps_;
};

}  // namespace finsler
