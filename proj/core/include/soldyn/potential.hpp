#pragma once

#include <string>

#include "soldyn/grid.hpp"

namespace soldyn {

/// Closed-form external potential selector. Values and gradients are always
/// evaluated analytically (no grid sampling artifacts). The bound V0 is the
/// maximum over a given box, which for the bounded-well selector equals its
/// depth independently of the box.
class PotentialSpec {
  public:
    enum class Kind { zero, harmonic, linear, well };

    static PotentialSpec zero() { return PotentialSpec{}; }

    /// V(x) = 0.5 * stiffness * |x|^2
    static PotentialSpec harmonic(double stiffness);

    /// V(x) = slope . x
    static PotentialSpec linear(const Vec3& slope);

    /// V(x) = depth * (1 - exp(-|x - center|^2 / (2 width^2))); 0 <= V < depth.
    static PotentialSpec bounded_well(double depth, double width, const Vec3& center = kZeroVec);

    Kind kind() const { return kind_; }
    double stiffness() const { return stiffness_; }
    const Vec3& slope() const { return slope_; }
    double depth() const { return depth_; }
    double width() const { return width_; }
    const Vec3& center() const { return center_; }

    double value(const Vec3& x, int dim) const;
    Vec3 gradient(const Vec3& x, int dim) const;

    /// Max of V over the closed box of `grid` (corner-attained for the
    /// implemented selectors; returns depth for the well).
    double bound_on(const SpatialGrid& grid) const;

    std::string describe() const;

  private:
    Kind kind_ = Kind::zero;
    double stiffness_ = 0.0;
    Vec3 slope_ = kZeroVec;
    double depth_ = 0.0;
    double width_ = 1.0;
    Vec3 center_ = kZeroVec;
};

}  // namespace soldyn
