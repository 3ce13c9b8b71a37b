#pragma once

#include "soldyn/field.hpp"
#include "soldyn/nonlinearity.hpp"
#include "soldyn/params.hpp"

namespace soldyn {

/// Constrained minimizer of J(u) = int(|grad u|^2/(2m) + W(u)) on the unit
/// L2 sphere, with its Lagrange multiplier and minimal energy.
struct GroundState {
    RealField profile;     // U >= 0, ||U||_2 = 1, barycenter at the grid center
    double omega1 = 0.0;   // multiplier of -(1/2m) Lap U + (1/2) W'(U) = omega1 U
    double c0 = 0.0;       // J(U)
    double residual_norm = 0.0;
    int iterations = 0;
};

/// U_eps(x) = eps^{-N/2} U(x/eps) with omega_eps = omega1/eps^2.
struct RescaledState {
    RealField profile;
    double epsilon = 1.0;
    double omega_eps = 0.0;
};

struct GroundStateOptions {
    double tolerance = 1e-8;    // Euler-Lagrange residual L2 norm
    int max_iterations = 100000;
    double initial_step = 1.0;  // imaginary-time step, halved on energy increase
};

/// Normalized gradient flow (semi-implicit in the Laplacian) from a centered
/// Gaussian seed of width L/16. Energy decrease is enforced per iteration by
/// step backtracking; the deterministic limit defines the canonical U.
GroundState solve_ground_state(const NonlinearitySpec& w, const PhysicalParams& params,
                               const SpatialGrid& grid, const GroundStateOptions& opts = {});

/// omega1 = int(|grad U|^2/(2m) + (1/2) W'(U) U) dx for unit-norm U.
double lagrange_multiplier(const RealField& U, const NonlinearitySpec& w,
                           const PhysicalParams& params);

/// J with the scale carried by `w` (W_eps inside); for real profiles.
double internal_energy(const RealField& u, const NonlinearitySpec& w,
                       const PhysicalParams& params);

/// Euler-Lagrange residual field of the (rescaled) ground-state equation:
/// -(1/2m) Lap U + (1/2) W_eps'(U) - omega U.
RealField ground_state_residual(const RealField& U, const NonlinearitySpec& w,
                                const PhysicalParams& params, double omega);

RescaledState rescale_ground_state(const GroundState& gs, double eps, const SpatialGrid& target);

/// u(x) = eps^{-N/2} v(x/eps) on the same grid (or a finer target grid).
/// Fails with a resolution error when the shrunken profile would carry
/// spectral content beyond the target Nyquist range.
ComplexField rescale_field(const ComplexField& v, double eps);
ComplexField rescale_field(const ComplexField& v, double eps, const SpatialGrid& target);

}  // namespace soldyn
