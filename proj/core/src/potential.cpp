#include "soldyn/potential.hpp"

#include <cmath>

#include "soldyn/errors.hpp"

namespace soldyn {

PotentialSpec PotentialSpec::harmonic(double stiffness) {
    if (!(stiffness > 0.0)) fail(Error::Kind::parameter, "harmonic potential needs stiffness > 0");
    PotentialSpec p;
    p.kind_ = Kind::harmonic;
    p.stiffness_ = stiffness;
    return p;
}

PotentialSpec PotentialSpec::linear(const Vec3& slope) {
    PotentialSpec p;
    p.kind_ = Kind::linear;
    p.slope_ = slope;
    return p;
}

PotentialSpec PotentialSpec::bounded_well(double depth, double width, const Vec3& center) {
    if (!(depth >= 0.0)) fail(Error::Kind::parameter, "well depth must be nonnegative");
    if (!(width > 0.0)) fail(Error::Kind::parameter, "well width must be positive");
    PotentialSpec p;
    p.kind_ = Kind::well;
    p.depth_ = depth;
    p.width_ = width;
    p.center_ = center;
    return p;
}

double PotentialSpec::value(const Vec3& x, int dim) const {
    switch (kind_) {
        case Kind::zero:
            return 0.0;
        case Kind::harmonic: {
            double r2 = 0.0;
            for (int a = 0; a < dim; ++a) r2 += x[a] * x[a];
            return 0.5 * stiffness_ * r2;
        }
        case Kind::linear: {
            double v = 0.0;
            for (int a = 0; a < dim; ++a) v += slope_[a] * x[a];
            return v;
        }
        case Kind::well: {
            double r2 = 0.0;
            for (int a = 0; a < dim; ++a) {
                double d = x[a] - center_[a];
                r2 += d * d;
            }
            return depth_ * (1.0 - std::exp(-r2 / (2.0 * width_ * width_)));
        }
    }
    return 0.0;
}

Vec3 PotentialSpec::gradient(const Vec3& x, int dim) const {
    Vec3 g = kZeroVec;
    switch (kind_) {
        case Kind::zero:
            break;
        case Kind::harmonic:
            for (int a = 0; a < dim; ++a) g[a] = stiffness_ * x[a];
            break;
        case Kind::linear:
            for (int a = 0; a < dim; ++a) g[a] = slope_[a];
            break;
        case Kind::well: {
            double r2 = 0.0;
            for (int a = 0; a < dim; ++a) {
                double d = x[a] - center_[a];
                r2 += d * d;
            }
            double w2 = width_ * width_;
            double f = depth_ * std::exp(-r2 / (2.0 * w2)) / w2;
            for (int a = 0; a < dim; ++a) g[a] = f * (x[a] - center_[a]);
            break;
        }
    }
    return g;
}

double PotentialSpec::bound_on(const SpatialGrid& grid) const {
    switch (kind_) {
        case Kind::zero:
            return 0.0;
        case Kind::harmonic: {
            double r2 = 0.0;
            for (int a = 0; a < grid.dim(); ++a) {
                double h = 0.5 * grid.extent(a);
                r2 += h * h;
            }
            return 0.5 * stiffness_ * r2;
        }
        case Kind::linear: {
            double v = 0.0;
            for (int a = 0; a < grid.dim(); ++a) v += std::abs(slope_[a]) * 0.5 * grid.extent(a);
            return v;
        }
        case Kind::well:
            return depth_;
    }
    return 0.0;
}

std::string PotentialSpec::describe() const {
    switch (kind_) {
        case Kind::zero:
            return "zero";
        case Kind::harmonic:
            return "harmonic(k=" + std::to_string(stiffness_) + ")";
        case Kind::linear:
            return "linear(g=" + std::to_string(slope_[0]) + "," + std::to_string(slope_[1]) + "," +
                   std::to_string(slope_[2]) + ")";
        case Kind::well:
            return "well(depth=" + std::to_string(depth_) + ",width=" + std::to_string(width_) + ")";
    }
    return "?";
}

}  // namespace soldyn
