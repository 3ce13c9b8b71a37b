#pragma once

#include <functional>

#include "soldyn/field.hpp"
#include "soldyn/ground_state.hpp"
#include "soldyn/nonlinearity.hpp"
#include "soldyn/params.hpp"
#include "soldyn/potential.hpp"

namespace soldyn {

/// Assembled admissible initial datum psi0 = U_eps(x - qbar) e^{i pbar.x} + phi0,
/// renormalized to unit charge, with the realized energy headroom recorded.
struct InitialData {
    ComplexField psi0;
    Vec3 qbar = kZeroVec;
    Vec3 pbar = kZeroVec;
    Vec3 vbar = kZeroVec;            // pbar / m
    double omega = 0.0;              // omega_eps + m |vbar|^2 / 2
    double realized_headroom = 0.0;  // M = E_eps(psi0) - J_eps(U_eps)
    double norm_deviation = 0.0;     // | ||psi0|| - 1 | before renormalization
};

struct PerturbationRecipe {
    enum class Kind { none, gaussian };
    Kind kind = Kind::none;
    double amplitude = 0.0;
    double width = 1.0;
    Vec3 center = kZeroVec;
};

ComplexField make_perturbation(const SpatialGrid& grid, const PerturbationRecipe& recipe);

InitialData assemble_initial_data(const RescaledState& rs, const Vec3& qbar, const Vec3& pbar,
                                  const ComplexField* phi0, const NonlinearitySpec& w,
                                  const PotentialSpec& V, const PhysicalParams& params,
                                  double headroom_bound);

/// Closed-form free soliton U_eps(x - qbar - vbar t) e^{i(pbar.x - omega t)};
/// reference field for the V = 0 solver validation.
ComplexField exact_free_soliton(double t, const RescaledState& rs, const Vec3& qbar,
                                const Vec3& pbar, const PhysicalParams& params);

struct EvolutionConfig {
    double dt = 1e-3;
    double horizon = 4.0;  // final time T
    int sample_stride = 10;
    int checkpoint_stride = 0;  // 0 disables checkpoints

    void validate() const;
};

/// One symmetric split step: half kinetic (Fourier multiplier), exact
/// pointwise phase rotation by the nonlinear + potential flow (which
/// preserves |psi|), half kinetic. Charge is conserved to rounding.
class Stepper {
  public:
    Stepper(const SpatialGrid& grid, const NonlinearitySpec& w, const PotentialSpec& V,
            const PhysicalParams& params, double dt);

    void step(ComplexField& psi);
    double dt() const { return dt_; }
    /// dt * max |k|^2 / (2m): accuracy scale of the kinetic multiplier.
    double kinetic_phase_max() const { return kinetic_phase_max_; }

  private:
    SpatialGrid grid_;
    NonlinearitySpec w_;
    PhysicalParams params_;
    double dt_;
    double kinetic_phase_max_;
    std::vector<Complex> half_kinetic_;
    std::vector<double> potential_;
    std::vector<Complex> work_;
};

struct SampleContext {
    long long step = 0;
    double time = 0.0;
    const ComplexField& psi;
};

using SampleCallback = std::function<void(const SampleContext&)>;

/// Advances psi0 to T = cfg.horizon, invoking `on_sample` at step 0, every
/// sample_stride steps and at the final step. Non-finite samples raise a
/// blow-up error carrying the time stamp. Deterministic for fixed inputs.
ComplexField evolve(ComplexField psi0, const EvolutionConfig& cfg, Stepper& stepper,
                    const SampleCallback& on_sample);

}  // namespace soldyn
