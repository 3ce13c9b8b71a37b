#pragma once

#include <vector>

#include "soldyn/field.hpp"
#include "soldyn/ground_state.hpp"
#include "soldyn/nonlinearity.hpp"
#include "soldyn/params.hpp"
#include "soldyn/potential.hpp"
#include "soldyn/quadrature.hpp"

namespace soldyn {

/// Pointwise floor for u^2 wherever a division by the modulus is required;
/// the phase S itself is never reconstructed.
inline constexpr double kModulusSquaredFloor = 1e-30;

/// First integrals of one snapshot. `internal` is defined as total minus
/// dynamical so the energy split holds exactly at quadrature level.
struct EnergyReport {
    double total = 0.0;          // E_eps
    double internal = 0.0;       // J_eps
    double dynamical = 0.0;      // G
    double kinetic_phase = 0.0;  // int |Im(conj(psi) grad psi)|^2 / (2m u^2)
    double potential = 0.0;      // int V u^2
    double charge = 0.0;         // C
    Vec3 momentum = kZeroVec;    // P
};

EnergyReport energy_report(const ComplexField& psi, const NonlinearitySpec& w,
                           const PotentialSpec& V, const PhysicalParams& params);

/// Momentum density u^2 grad S = Im(conj(psi) grad psi), one field per axis.
std::vector<RealField> momentum_density(const ComplexField& psi);

/// Symmetric momentum-flux tensor per grid point.
class StressField {
  public:
    StressField(const SpatialGrid& grid);
    const SpatialGrid& grid() const { return grid_; }
    RealField& component(int j, int k) { return comps_[index(j, k)]; }
    const RealField& component(int j, int k) const { return comps_[index(j, k)]; }

  private:
    int index(int j, int k) const;
    SpatialGrid grid_;
    std::vector<RealField> comps_;  // upper triangle, row-major
};

/// Polar form of the stress tensor:
/// T_jk = du_j du_k + (g_j g_k)/u^2 - delta_jk (1/4m) Lap(u^2)
///        + delta_jk ((1/2) W_eps'(u) u - W_eps(u)).
StressField stress_tensor(const ComplexField& psi, const NonlinearitySpec& w,
                          const PhysicalParams& params);

/// Conjugate-field form T_jk = Re(d_j psi d_k conj(psi)) - delta_jk [...];
/// agrees with the polar form on smooth fields (internal cross-check).
StressField stress_tensor_conjugate(const ComplexField& psi, const NonlinearitySpec& w,
                                    const PhysicalParams& params);

/// (div T)_j = sum_k d_k T_jk, spectral derivatives.
std::vector<RealField> stress_divergence(const StressField& T);

/// Smoothing kernel of the density rho_eps = a * u^2: radial plateau of
/// height 3 inside eta^{1/8}(1-eta^{1/8}), cubic C^1 smoothstep down to zero
/// at eta^{1/8}(1+eta^{1/8}). The achieved gradient bound is
/// (9/4) eta^{-1/4}: the displayed plateau radii force a mean slope of
/// (3/2) eta^{-1/4}, so no profile can do better than a constant times that.
struct DensityKernel {
    SpatialGrid grid;
    double eta = 0.0;
    double plateau_radius = 0.0;   // r_minus
    double support_radius = 0.0;   // r_plus
    double gradient_bound = 0.0;   // (9/4) eta^{-1/4}, attained by the smoothstep
    std::vector<Complex> spectrum; // cached transform for circular convolution

    double profile(double r) const;
};

DensityKernel build_kernel(double eta, const SpatialGrid& grid);

/// rho_eps = a * u^2 (circular convolution, clipped to >= 0).
RealField density_rho(const ComplexField& psi, const DensityKernel& kernel);
RealField density_rho_from_u2(const RealField& u2, const DensityKernel& kernel);

double chi_of_rho(double rho);  // sqrt(cutoff_phi(rho))
RealField cutoff_chi(const RealField& rho);

/// Soliton/wave splitting of one snapshot. Additivity soliton + wave = psi
/// holds pointwise to a rounding error.
struct SolitonDecomposition {
    RealField rho;
    RealField chi;                      // sqrt(phi(rho))
    RealField chi2;                     // phi(rho)
    ComplexField soliton;               // chi psi
    ComplexField wave;                  // (1 - chi) psi
    std::vector<unsigned char> halo_mask;  // guard-banded strict 1 < rho < 2
    std::vector<RealField> rho_gradient;
    std::vector<LevelCrossing> crossings;  // 1D halo boundary geometry
    bool degenerate = false;               // chi identically zero (soliton dispersed)
    double eta = 0.0;
    double support_radius = 0.0;           // R_eps = eta^{1/8}(1 + 2 eta^{1/8})
};

SolitonDecomposition decompose(const ComplexField& psi, const DensityKernel& kernel);

/// Barycenter, momentum and mass of the soliton part. The barycenter is a
/// first moment in coordinates unwrapped about the soliton peak (window of
/// radius L/4), so it is well defined on the torus.
struct SolitonState {
    Vec3 barycenter = kZeroVec;
    Vec3 momentum = kZeroVec;
    double mass = 0.0;
    double time = 0.0;
};

SolitonState soliton_state(const SolitonDecomposition& dec, const ComplexField& psi,
                           const PhysicalParams& params);

/// Correction terms of the soliton's exact equations of motion. The
/// velocity correction carries the u^2 factor on the div J term that the
/// flux-exchange bookkeeping requires (see ground_state/observables tests);
/// `combined` is the H entering p_dot = -grad V(q) + F + H.
struct HaloTerms {
    Vec3 velocity_correction = kZeroVec;  // K_eps
    Vec3 flux_exchange = kZeroVec;        // H1
    Vec3 potential_sampling = kZeroVec;   // H2 = grad V(q) - int grad V |Psi|^2
    Vec3 combined = kZeroVec;             // H = H2 - H1
    Vec3 surface_pressure = kZeroVec;     // F = -int_Sigma T . grad rho
    double time = 0.0;
};

HaloTerms halo_terms(const ComplexField& psi, const SolitonDecomposition& dec,
                     const SolitonState& state, const DensityKernel& kernel,
                     const NonlinearitySpec& w, const PotentialSpec& V,
                     const PhysicalParams& params);

/// Flux of the smoothed density: J_rho = a * (u^2 grad S / m); satisfies
/// d_t rho + div J_rho = 0 along solutions.
std::vector<RealField> density_flux(const ComplexField& psi, const DensityKernel& kernel,
                                    const PhysicalParams& params);

/// Translate minimizing f(q) = || |psi| - U_eps(. - q) ||_2^2, located by a
/// cross-correlation argmax with quadratic refinement; grid-order tie-break.
struct ConcentrationPoint {
    Vec3 position = kZeroVec;
    double mismatch = 0.0;  // f at the refined optimum
};

ConcentrationPoint concentration_point(const ComplexField& psi, const RescaledState& rs);

/// True when every masked halo point lies in the annulus
/// max(0, r(1-2r)) <= |x - center| <= r(1+2r) around `center`, r = eta^{1/8}.
/// The inner radius is negative (vacuous) for eta > 2^-8.
bool halo_within_annulus(const SolitonDecomposition& dec, const Vec3& center);

}  // namespace soldyn
