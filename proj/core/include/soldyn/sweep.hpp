#pragma once

#include <span>
#include <string>
#include <vector>

#include "soldyn/pipeline.hpp"

namespace soldyn {

/// Plan for an epsilon sweep sharing one potential, mass and horizon. The
/// epsilon list may arrive in any order; it is sorted descending internally
/// and must consist of distinct values in (0, 1]. Grids refine per epsilon
/// so that dx <= eps/8 across the soliton core.
struct SweepPlan {
    std::vector<double> epsilons{0.4, 0.3, 0.2, 0.15, 0.1};
    int dim = 1;
    double extent = 80.0;
    int base_points = 4096;
    double mass = 1.0;
    double nu = 3.0;
    double amplitude = 1.0;
    PotentialSpec potential = PotentialSpec::harmonic(1.0);
    Vec3 qbar{2.0, 0.0, 0.0};
    Vec3 pbar{0.0, 0.0, 0.0};
    PerturbationRecipe perturbation{};
    double headroom_bound = 10.0;
    bool eta_equals_epsilon = true;
    double eta_value = 0.0;
    double dt = 1e-3;
    double horizon = 4.0;
    int sample_stride = 10;
    double ground_state_tolerance = 1e-8;

    void validate() const;
    std::vector<double> sorted_epsilons() const;  // descending
    int points_for(double eps) const;
    RunSetup setup_for(double eps) const;
};

struct EpsilonOutcome {
    double epsilon = 0.0;
    int grid_points = 0;
    bool completed = false;
    std::string failure;
    ComparisonReport report;
    double max_replay_position = 0.0;
    double max_replay_momentum = 0.0;
    double max_charge_deviation = 0.0;
    double max_energy_drift = 0.0;
    double max_center_mismatch = 0.0;
    bool halo_contained = false;
};

struct TrendFit {
    double slope = 0.0;
    double r_squared = 0.0;
    bool valid = false;
    std::string note;
};

/// Least-squares slope of log(value) against log(eps) with the coefficient
/// of determination. Non-positive values are a domain error ("below floor").
TrendFit fit_trend(std::span<const double> values, std::span<const double> epsilons);

struct SweepReport {
    std::vector<EpsilonOutcome> outcomes;  // descending epsilon
    bool position_error_decreasing = false;
    bool velocity_correction_decreasing = false;  // max |K| along the sweep
    bool combined_halo_decreasing = false;        // max |H| along the sweep
    bool pressure_coefficient_decreasing = false; // the (finale) coefficient
    TrendFit position_fit;
    TrendFit velocity_correction_fit;
    TrendFit combined_halo_fit;
    TrendFit pressure_fit;
    GroundState ground_state;  // solved once at eps = 1 and reused
};

/// Per-run series kept for emission (aligned with report.outcomes; empty
/// entries for failed runs).
struct SweepArtifacts {
    std::vector<RunSeries> series;
};

/// Runs the sweep per epsilon (descending), reusing the eps-independent
/// ground state; failures are recorded per epsilon and trends are computed
/// over the completed runs only.
SweepReport run_sweep(const SweepPlan& plan, SweepArtifacts* artifacts = nullptr);

}  // namespace soldyn
