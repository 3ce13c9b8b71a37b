#pragma once

#include <functional>
#include <vector>

#include "soldyn/field.hpp"
#include "soldyn/grid.hpp"

namespace soldyn::spectral {

/// In-place unnormalized forward DFT over the full grid.
void forward(const SpatialGrid& grid, std::vector<Complex>& data);
/// In-place inverse DFT, normalized by 1/size.
void inverse(const SpatialGrid& grid, std::vector<Complex>& data);

std::vector<Complex> spectrum(const ComplexField& f);

// Spectral calculus. Derivative multipliers are ik with the Nyquist mode
// zeroed (keeps real fields real); the Laplacian uses -|k|^2 everywhere.
std::vector<ComplexField> gradient(const ComplexField& f);
ComplexField laplacian(const ComplexField& f);
std::vector<RealField> gradient(const RealField& f);
RealField derivative(const RealField& f, int axis);
RealField laplacian(const RealField& f);
RealField divergence(const std::vector<RealField>& components);

/// Band-limited translation f(x - shift); exact for grid-resolved fields.
ComplexField translate(const ComplexField& f, const Vec3& shift);
RealField translate(const RealField& f, const Vec3& shift);

/// Samples a radial kernel in wrap order and returns its DFT, cached by the
/// caller for repeated circular convolutions.
std::vector<Complex> kernel_spectrum(const SpatialGrid& grid,
                                     const std::function<double(double)>& radial_profile);

/// Circular convolution (kernel * f)(x) = cell_volume * sum_j kernel(x - x_j) f(x_j)
/// through a precomputed kernel spectrum.
RealField convolve(const SpatialGrid& grid, const std::vector<Complex>& kernel_spec,
                   const RealField& f);

/// c(q) = integral of u(x) * profile(x - q) dx on grid shifts q; `profile`
/// is stored grid-centered (peak near x = 0).
RealField cross_correlation(const RealField& u, const RealField& profile);

/// Band-limited dilation: samples eps^{-N/2} f(x/eps) on `target` through the
/// trigonometric interpolant of `source`. Separable axis-by-axis evaluation.
ComplexField dilate(const ComplexField& source, const SpatialGrid& target, double eps);
RealField dilate(const RealField& source, const SpatialGrid& target, double eps);

/// Largest |k| carrying spectral amplitude above `floor` times the peak
/// amplitude; used for resolution preconditions.
double spectral_reach(const RealField& f, double floor);

}  // namespace soldyn::spectral
