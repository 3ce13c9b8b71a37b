#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "soldyn/errors.hpp"

namespace soldyn {

inline constexpr int kMaxDim = 3;

// Fixed-size vector for positions/momenta; components beyond the active
// dimension are kept at zero so norms and dots work unconditionally.
using Vec3 = std::array<double, 3>;

inline constexpr Vec3 kZeroVec{0.0, 0.0, 0.0};

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 scale(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

/// Uniform periodic grid covering [-L/2, L/2)^N with a power-of-two point
/// count per axis. Immutable after construction; cheap to copy.
class SpatialGrid {
  public:
    SpatialGrid() = default;

    static SpatialGrid make(int dim, std::array<int, kMaxDim> points,
                            std::array<double, kMaxDim> extents) {
        if (dim < 1 || dim > kMaxDim)
            fail(Error::Kind::parameter, "grid dimension must be 1, 2 or 3");
        SpatialGrid g;
        g.dim_ = dim;
        g.points_ = {1, 1, 1};
        g.extents_ = {1.0, 1.0, 1.0};
        for (int a = 0; a < dim; ++a) {
            int n = points[a];
            double L = extents[a];
            if (n < 16 || (n & (n - 1)) != 0)
                fail(Error::Kind::parameter,
                     "grid points per axis must be a power of two >= 16, got " + std::to_string(n));
            if (!(L > 0.0))
                fail(Error::Kind::parameter, "grid extent must be positive");
            g.points_[a] = n;
            g.extents_[a] = L;
        }
        return g;
    }

    static SpatialGrid uniform(int dim, int points_per_axis, double extent) {
        return make(dim, {points_per_axis, points_per_axis, points_per_axis},
                    {extent, extent, extent});
    }

    static SpatialGrid line(int points, double extent) { return uniform(1, points, extent); }

    int dim() const { return dim_; }
    int points(int axis) const { return points_[axis]; }
    double extent(int axis) const { return extents_[axis]; }
    double spacing(int axis) const { return extents_[axis] / points_[axis]; }

    std::size_t size() const {
        std::size_t s = 1;
        for (int a = 0; a < dim_; ++a) s *= static_cast<std::size_t>(points_[a]);
        return s;
    }

    double cell_volume() const {
        double v = 1.0;
        for (int a = 0; a < dim_; ++a) v *= spacing(a);
        return v;
    }

    double volume() const {
        double v = 1.0;
        for (int a = 0; a < dim_; ++a) v *= extents_[a];
        return v;
    }

    /// Physical coordinate of node `i` along `axis`: -L/2 + i*dx.
    double coordinate(int axis, int index) const {
        return -0.5 * extents_[axis] + index * spacing(axis);
    }

    /// FFT-ordered angular wave number of mode `index` along `axis`.
    double wave_number(int axis, int index) const {
        int n = points_[axis];
        int m = index <= n / 2 ? index : index - n;
        return 2.0 * std::numbers::pi * m / extents_[axis];
    }

    /// Nyquist angular wave number along `axis`.
    double nyquist(int axis) const {
        return std::numbers::pi * points_[axis] / extents_[axis];
    }

    // Row-major flat indexing; trailing axes beyond dim() are size 1.
    std::size_t flatten(const std::array<int, kMaxDim>& idx) const {
        return (static_cast<std::size_t>(idx[0]) * points_[1] + idx[1]) * points_[2] + idx[2];
    }

    std::array<int, kMaxDim> unflatten(std::size_t flat) const {
        std::array<int, kMaxDim> idx{};
        idx[2] = static_cast<int>(flat % points_[2]);
        flat /= points_[2];
        idx[1] = static_cast<int>(flat % points_[1]);
        idx[0] = static_cast<int>(flat / points_[1]);
        return idx;
    }

    Vec3 position(std::size_t flat) const {
        auto idx = unflatten(flat);
        Vec3 x = kZeroVec;
        for (int a = 0; a < dim_; ++a) x[a] = coordinate(a, idx[a]);
        return x;
    }

    /// Wraps a displacement into the principal box [-L/2, L/2) per axis.
    double wrap(int axis, double d) const {
        double L = extents_[axis];
        d = std::fmod(d + 0.5 * L, L);
        if (d < 0) d += L;
        return d - 0.5 * L;
    }

    Vec3 wrap(Vec3 d) const {
        for (int a = 0; a < dim_; ++a) d[a] = wrap(a, d[a]);
        return d;
    }

    /// Minimum-image distance between two points on the torus.
    double distance(const Vec3& a, const Vec3& b) const { return norm(wrap(sub(a, b))); }

    bool operator==(const SpatialGrid& o) const {
        return dim_ == o.dim_ && points_ == o.points_ && extents_ == o.extents_;
    }
    bool operator!=(const SpatialGrid& o) const { return !(*this == o); }

  private:
    int dim_ = 0;
    std::array<int, kMaxDim> points_{1, 1, 1};
    std::array<double, kMaxDim> extents_{1.0, 1.0, 1.0};
};

}  // namespace soldyn
