#pragma once

#include <functional>

#include "soldyn/classical.hpp"
#include "soldyn/evolution.hpp"
#include "soldyn/observables.hpp"

namespace soldyn {

/// Everything one evolution run needs; produced from a RunConfig or built
/// directly by tests and the sweep harness.
struct RunSetup {
    SpatialGrid grid;
    double mass = 1.0;
    double nu = 3.0;
    double amplitude = 1.0;
    double epsilon = 0.2;
    PotentialSpec potential = PotentialSpec::harmonic(1.0);
    Vec3 qbar{2.0, 0.0, 0.0};
    Vec3 pbar{0.0, 0.0, 0.0};
    PerturbationRecipe perturbation{};
    double headroom_bound = 10.0;
    bool eta_equals_epsilon = true;  // default rule eta = eps
    double eta_value = 0.0;
    EvolutionConfig evolution{};
    double ground_state_tolerance = 1e-8;

    double eta() const { return eta_equals_epsilon ? epsilon : eta_value; }
};

struct RunDiagnostics {
    double max_charge_deviation = 0.0;  // max_t |C(t) - 1|
    double max_energy_drift = 0.0;      // max_t |E(t) - E(0)| / |E(0)|
    double kinetic_phase_max = 0.0;     // dt * k_max^2 / (2m), recorded
    double max_center_mismatch = 0.0;   // max_t |qhat - q_eps| (torus metric)
    bool halo_contained = true;         // halo mask inside the annulus at all samples
    int ground_state_iterations = 0;
};

struct RunResult {
    RunSeries series;
    ComparisonReport comparison;
    EffectiveResiduals residuals;
    RunDiagnostics diagnostics;
    GroundState ground_state;
    RescaledState rescaled;
    InitialData initial;
    ComplexField final_state;
};

using CheckpointSink = std::function<void(long long step, const ComplexField&)>;

/// Full single-run pipeline: ground state (or cached), rescale, assemble,
/// evolve with per-sample observation, classical reference from the measured
/// initial soliton data, comparison and replay residuals.
RunResult run_single(const RunSetup& setup, const GroundState* cached_ground_state = nullptr,
                     const CheckpointSink& checkpoint_sink = nullptr);

}  // namespace soldyn
