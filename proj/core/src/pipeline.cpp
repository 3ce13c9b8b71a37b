#include "soldyn/pipeline.hpp"

#include <cmath>
#include <string>

#include "soldyn/errors.hpp"

namespace soldyn {

RunResult run_single(const RunSetup& setup, const GroundState* cached_ground_state,
                     const CheckpointSink& checkpoint_sink) {
    setup.evolution.validate();
    double eta = setup.eta();
    if (!(eta > 0.0 && eta < 1.0))
        fail(Error::Kind::parameter, "run: halo scale eta must lie in (0, 1)");

    const auto& grid = setup.grid;
    PhysicalParams params = PhysicalParams::make(setup.mass, setup.epsilon);
    NonlinearitySpec w_eps =
        NonlinearitySpec::make(setup.nu, setup.epsilon, grid.dim(), setup.amplitude);
    NonlinearitySpec w_unit = w_eps.with_epsilon(1.0);

    RunResult result;
    if (cached_ground_state != nullptr) {
        result.ground_state = *cached_ground_state;
    } else {
        GroundStateOptions opts;
        opts.tolerance = setup.ground_state_tolerance;
        result.ground_state =
            solve_ground_state(w_unit, PhysicalParams::make(setup.mass, 1.0), grid, opts);
    }
    result.diagnostics.ground_state_iterations = result.ground_state.iterations;

    result.rescaled = rescale_ground_state(result.ground_state, setup.epsilon, grid);
    DensityKernel kernel = build_kernel(eta, grid);

    ComplexField phi0 = make_perturbation(grid, setup.perturbation);
    const ComplexField* phi_ptr =
        setup.perturbation.kind == PerturbationRecipe::Kind::none ? nullptr : &phi0;
    result.initial = assemble_initial_data(result.rescaled, setup.qbar, setup.pbar, phi_ptr,
                                           w_eps, setup.potential, params,
                                           setup.headroom_bound);

    RunSeries& series = result.series;
    series.dim = grid.dim();
    series.epsilon = setup.epsilon;
    series.eta = eta;

    Stepper stepper(grid, w_eps, setup.potential, params, setup.evolution.dt);
    result.diagnostics.kinetic_phase_max = stepper.kinetic_phase_max();

    double initial_energy = 0.0;
    bool have_initial_energy = false;

    auto observe = [&](const SampleContext& ctx) {
        SolitonDecomposition dec = decompose(ctx.psi, kernel);
        if (dec.degenerate)
            fail(Error::Kind::degenerate,
                 "soliton dispersed (empty cutoff support) at t = " + std::to_string(ctx.time));
        series.support_radius = dec.support_radius;

        SolitonState st = soliton_state(dec, ctx.psi, params);
        HaloTerms ht = halo_terms(ctx.psi, dec, st, kernel, w_eps, setup.potential, params);
        EnergyReport er = energy_report(ctx.psi, w_eps, setup.potential, params);
        ConcentrationPoint cp = concentration_point(ctx.psi, result.rescaled);

        series.times.push_back(ctx.time);
        series.soliton.push_back(st);
        series.halo.push_back(ht);
        series.energy.push_back(er);
        series.concentration.push_back(cp.position);
        series.mismatch.push_back(cp.mismatch);

        if (!have_initial_energy) {
            initial_energy = er.total;
            have_initial_energy = true;
        } else if (initial_energy != 0.0) {
            result.diagnostics.max_energy_drift =
                std::max(result.diagnostics.max_energy_drift,
                         std::abs(er.total - initial_energy) / std::abs(initial_energy));
        }
        result.diagnostics.max_charge_deviation =
            std::max(result.diagnostics.max_charge_deviation, std::abs(er.charge - 1.0));
        result.diagnostics.max_center_mismatch =
            std::max(result.diagnostics.max_center_mismatch,
                     grid.distance(cp.position, st.barycenter));
        if (!halo_within_annulus(dec, cp.position)) result.diagnostics.halo_contained = false;

        if (checkpoint_sink && setup.evolution.checkpoint_stride > 0 &&
            ctx.step % setup.evolution.checkpoint_stride == 0)
            checkpoint_sink(ctx.step, ctx.psi);
    };

    result.final_state = evolve(result.initial.psi0, setup.evolution, stepper, observe);

    // classical reference launched from the measured soliton data (got1)
    if (series.size() >= 2) {
        double sample_dt = series.times[1] - series.times[0];
        ClassicalTrajectory classical = integrate_classical(
            series.soliton[0].barycenter, series.soliton[0].momentum, setup.potential,
            setup.mass, series.times.back(), sample_dt, grid.dim());
        series.classical_q = classical.positions;
        series.classical_p = classical.momenta;
        result.comparison = compare(series, classical);
        result.residuals = replay_effective(series, setup.potential, setup.mass);
    }
    return result;
}

}  // namespace soldyn
