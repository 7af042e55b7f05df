// Chart domains: every manifold lives on one open box or ball in R^n.
#pragma once

#include <algorithm>
#include <cmath>

#include "finsler/smallvec.hpp"

namespace finsler {

class ChartDomain {
  public:
    enum class Kind { Ball, Box };

    ChartDomain() = default;

    static ChartDomain ball(int dim, double radius, VecD center = {}) {
        ChartDomain d;
        d.kind_ = Kind::Ball;
        d.dim_ = dim;
        d.radius_ = radius;
        d.center_ = center.size() == dim ? center : VecD::zero(dim);
        return d;
    }
    static ChartDomain box(VecD lo, VecD hi) {
        ChartDomain d;
        d.kind_ = Kind::Box;
        d.dim_ = lo.size();
        d.lo_ = lo;
        d.hi_ = hi;
        return d;
    }

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    double radius() const { return radius_; }
    const VecD& lo() const { return lo_; }
    const VecD& hi() const { return hi_; }

    bool contains(const VecD& x) const {
        if (x.size() != dim_) return false;
        if (kind_ == Kind::Ball) return dist(x, center_) < radius_;
        for (int i = 0; i < dim_; ++i)
            if (x[i] <= lo_[i] || x[i] >= hi_[i]) return false;
        return true;
    }

    // distance from x to the boundary (negative outside)
    double boundary_margin(const VecD& x) const {
        if (kind_ == Kind::Ball) return radius_ - dist(x, center_);
        double m = hi_[0] - lo_[0];
        for (int i = 0; i < dim_; ++i) m = std::min({m, x[i] - lo_[i], hi_[i] - x[i]});
        return m;
    }

    // characteristic length used to scale finite-difference steps
    double scale() const {
        if (kind_ == Kind::Ball) return std::min(radius_, 1e3);
        double m = 0;
        for (int i = 0; i < dim_; ++i) m = std::max(m, hi_[i] - lo_[i]);
        return std::min(0.5 * m, 1e3);
    }

  private:
    Kind kind_ = Kind::Ball;
    int dim_ = 0;
    double radius_ = 1.0;
    VecD center_;
    VecD lo_, hi_;
};

}  // namespace finsler
