#pragma once

#include <string>
#include <vector>

#include "soldyn/sweep.hpp"

namespace soldyn::io {

struct OutputOptions {
    std::string directory = "runs";
    bool csv = true;
    bool json = true;
    bool svg = true;
};

/// Validated run configuration. Sections and keys:
///   [grid]     N, L, n
///   [physics]  m, nu, epsilon (scalar or descending comma list),
///              potential = zero|harmonic|linear|well, k, g, depth, width, center
///   [initial]  qbar, pbar, perturbation = none|gaussian,
///              perturbation_amplitude, perturbation_width, perturbation_center, M
///   [time]     dt, T, sample_stride, checkpoint_stride
///   [halo]     eta = equal-epsilon | <value in (0,1)>
///   [output]   dir, formats (comma subset of csv,json,svg)
/// Unknown sections or keys are rejected; validation reports every violation
/// in one pass.
struct RunConfig {
    int dim = 1;
    double extent = 80.0;
    int points = 4096;

    double mass = 1.0;
    double nu = 3.0;
    std::vector<double> epsilons{0.2};
    PotentialSpec potential = PotentialSpec::harmonic(1.0);

    Vec3 qbar{2.0, 0.0, 0.0};
    Vec3 pbar{0.0, 0.0, 0.0};
    PerturbationRecipe perturbation{};
    double headroom_bound = 10.0;

    double dt = 1e-3;
    double horizon = 4.0;
    int sample_stride = 10;
    int checkpoint_stride = 0;

    bool eta_equals_epsilon = true;
    double eta_value = 0.0;

    OutputOptions output{};

    /// Single-run view; requires exactly one epsilon.
    RunSetup single_setup() const;
    /// Sweep view over the epsilon list.
    SweepPlan sweep_plan() const;
};

RunConfig parse_config(const std::string& text, const std::string& origin);
RunConfig load_config(const std::string& path);

/// 16-hex-digit FNV-1a content hash of the raw config bytes; names the run
/// directory so concurrent runs with different configs never collide.
std::string run_identifier(const std::string& config_text);

std::string read_text_file(const std::string& path);

}  // namespace soldyn::io
