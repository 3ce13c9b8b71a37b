#pragma once

#include <complex>
#include <vector>

#include "soldyn/grid.hpp"

namespace soldyn {

using Complex = std::complex<double>;

/// State sample psi(t, .) on a periodic grid. Value semantics; treated as
/// immutable by all observable operations.
struct ComplexField {
    SpatialGrid grid;
    std::vector<Complex> values;
    double time = 0.0;

    static ComplexField zeros(const SpatialGrid& g, double t = 0.0) {
        return {g, std::vector<Complex>(g.size(), Complex{0.0, 0.0}), t};
    }
};

struct RealField {
    SpatialGrid grid;
    std::vector<double> values;

    static RealField zeros(const SpatialGrid& g) {
        return {g, std::vector<double>(g.size(), 0.0)};
    }
};

inline bool congruent(const ComplexField& a, const ComplexField& b) {
    return a.grid == b.grid && a.values.size() == b.values.size();
}

inline RealField modulus(const ComplexField& f) {
    RealField r{f.grid, std::vector<double>(f.values.size())};
    for (std::size_t i = 0; i < f.values.size(); ++i) r.values[i] = std::abs(f.values[i]);
    return r;
}

inline RealField modulus_squared(const ComplexField& f) {
    RealField r{f.grid, std::vector<double>(f.values.size())};
    for (std::size_t i = 0; i < f.values.size(); ++i) r.values[i] = std::norm(f.values[i]);
    return r;
}

inline ComplexField embed(const RealField& f, double t = 0.0) {
    ComplexField c{f.grid, std::vector<Complex>(f.values.size()), t};
    for (std::size_t i = 0; i < f.values.size(); ++i) c.values[i] = Complex{f.values[i], 0.0};
    return c;
}

}  // namespace soldyn
