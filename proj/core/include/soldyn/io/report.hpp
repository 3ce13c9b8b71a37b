#pragma once

#include <string>

#include "soldyn/pipeline.hpp"
#include "soldyn/sweep.hpp"

namespace soldyn::io {

/// JSON summary of one evolution run (ground state, initial datum,
/// conservation diagnostics, comparison and replay residuals).
void write_run_report(const RunResult& result, const RunSetup& setup, const std::string& run_id,
                      const std::string& path);

void write_sweep_report(const SweepReport& report, const SweepPlan& plan,
                        const std::string& run_id, const std::string& path);

/// Minimal sweep summary parsed back from sweep.json (for plot emission).
struct SweepSummary {
    std::vector<double> epsilons;
    std::vector<double> sup_position_errors;
    std::vector<double> max_velocity_corrections;
    std::vector<double> max_combined_halos;
    std::vector<double> pressure_coefficients;
};

SweepSummary read_sweep_summary(const std::string& path);

}  // namespace soldyn::io
