#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "soldyn/field.hpp"
#include "soldyn/grid.hpp"

namespace soldyn {

/// Pairwise (cascade) summation in the natural order. Deterministic under
/// concurrency and accurate to O(log n) ulps; every quadrature in the
/// library reduces through this.
double pairwise_sum(std::span<const double> v);
Complex pairwise_sum(std::span<const Complex> v);

/// Trapezoidal quadrature on the periodic grid: cell_volume * sum(values).
double integrate(const SpatialGrid& grid, std::span<const double> values);
Complex integrate(const SpatialGrid& grid, std::span<const Complex> values);

double l2_norm(const SpatialGrid& grid, std::span<const Complex> values);
double l2_norm(const SpatialGrid& grid, std::span<const double> values);
inline double charge(const ComplexField& f) { return l2_norm(f.grid, f.values) * l2_norm(f.grid, f.values); }

/// Piecewise-linear cutoff profile phi of the decomposition:
/// 0 on s <= 1, s - 1 on [1, 2], 1 on s >= 2.
double cutoff_phi(double s);

/// Location of a level crossing of rho along the (1D) grid, refined within
/// its cell. `cell` is the node index j with the crossing in (x_j, x_{j+1})
/// (j+1 wraps); theta in (0,1) is the fractional position.
struct LevelCrossing {
    int cell = 0;
    double theta = 0.0;
    double position = 0.0;   // x_j + theta*dx, not wrapped
    double rho_deriv = 0.0;  // d rho/dx at the crossing (interpolated)
    int level = 1;           // 1 or 2
};

/// Finds all crossings of `rho` through `level` on a 1D grid. `rho_deriv`
/// holds the spectral derivative of rho sampled on the nodes.
std::vector<LevelCrossing> find_level_crossings(const SpatialGrid& grid,
                                                std::span<const double> rho,
                                                std::span<const double> rho_deriv, int level);

/// Integral of phi(rho) * w over the whole box with Euler-Maclaurin kink
/// corrections at the phi' jumps (1D; falls back to the plain sum in N > 1,
/// where crossings should be empty).
double chi2_weighted_integral(const SpatialGrid& grid, std::span<const double> rho,
                              std::span<const double> w,
                              const std::vector<LevelCrossing>& crossings);

/// Integral of w over the halo {1 < rho < 2} (1D): per-cell cubic
/// interpolation of w integrated exactly over the in-halo part of each cell,
/// with interval endpoints taken from the crossing list.
double halo_masked_integral(const SpatialGrid& grid, std::span<const double> rho,
                            std::span<const double> w,
                            const std::vector<LevelCrossing>& crossings);

/// Plain masked trapezoid over {1 + guard < rho < 2 - guard}; the fallback
/// used in N > 1 and by diagnostics that need the boolean halo mask.
double masked_integral(const SpatialGrid& grid, std::span<const double> rho,
                       std::span<const double> w, double guard = 1e-12);

}  // namespace soldyn
