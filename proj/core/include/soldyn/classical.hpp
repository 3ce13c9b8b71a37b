#pragma once

#include <vector>

#include "soldyn/grid.hpp"
#include "soldyn/observables.hpp"
#include "soldyn/potential.hpp"

namespace soldyn {

/// Point-particle solution of q_dot = p/m, p_dot = -grad V(q).
struct ClassicalTrajectory {
    std::vector<double> times;
    std::vector<Vec3> positions;
    std::vector<Vec3> momenta;
    std::vector<double> energies;  // p^2/2m + V(q) per sample
};

/// Fixed-step RK4 with dt equal to the observable sampling interval, so the
/// classical samples align with the PDE samples without interpolation.
ClassicalTrajectory integrate_classical(const Vec3& q0, const Vec3& p0, const PotentialSpec& V,
                                        double mass, double horizon, double dt, int dim);

/// Uniformly sampled soliton observables of one run.
struct RunSeries {
    int dim = 1;
    double epsilon = 0.0;
    double eta = 0.0;
    double support_radius = 0.0;
    std::vector<double> times;
    std::vector<SolitonState> soliton;
    std::vector<HaloTerms> halo;
    std::vector<EnergyReport> energy;
    std::vector<Vec3> concentration;
    std::vector<double> mismatch;
    std::vector<Vec3> classical_q;  // filled after the classical integration
    std::vector<Vec3> classical_p;

    std::size_t size() const { return times.size(); }
};

/// Residuals of the soliton's exact equations of motion on a measured
/// series: centered time differences minus the law's right-hand side,
///   q residual: dq/dt - p_eps/m_eps - K_eps
///   p residual: dp/dt + grad V(q_eps) - F_eps - H_eps
/// (with H_eps = H2 - H1 the second line equals the halo-integral form of
/// the momentum law identically).
struct EffectiveResiduals {
    std::vector<double> times;  // interior samples
    std::vector<Vec3> position_law;
    std::vector<Vec3> momentum_law;
    double max_position_law = 0.0;
    double max_momentum_law = 0.0;
};

EffectiveResiduals replay_effective(const RunSeries& series, const PotentialSpec& V, double mass);

/// Soliton-vs-particle agreement over a common time window.
struct ComparisonReport {
    double sup_position_error = 0.0;
    double sup_momentum_error = 0.0;
    double max_velocity_correction = 0.0;  // max_t |K_eps|
    double max_combined_halo = 0.0;        // max_t |H_eps|
    double pressure_coefficient = 0.0;     // c with |int F dt| <= c (1 + |t1-t0|)
    double epsilon = 0.0;
    double eta = 0.0;
    double support_radius = 0.0;
};

ComparisonReport compare(const RunSeries& series, const ClassicalTrajectory& classical);

}  // namespace soldyn
