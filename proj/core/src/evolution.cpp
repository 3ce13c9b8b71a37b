#include "soldyn/evolution.hpp"

#include <cmath>
#include <string>

#include "soldyn/errors.hpp"
#include "soldyn/fft.hpp"
#include "soldyn/observables.hpp"
#include "soldyn/quadrature.hpp"

namespace soldyn {

ComplexField make_perturbation(const SpatialGrid& grid, const PerturbationRecipe& recipe) {
    ComplexField phi = ComplexField::zeros(grid);
    if (recipe.kind == PerturbationRecipe::Kind::none) return phi;
    if (!(recipe.width > 0.0)) fail(Error::Kind::parameter, "perturbation width must be positive");
    for (std::size_t i = 0; i < phi.values.size(); ++i) {
        Vec3 x = grid.position(i);
        double r2 = 0.0;
        for (int a = 0; a < grid.dim(); ++a) {
            double d = grid.wrap(a, x[a] - recipe.center[a]);
            r2 += d * d;
        }
        phi.values[i] = {recipe.amplitude * std::exp(-r2 / (2.0 * recipe.width * recipe.width)),
                         0.0};
    }
    return phi;
}

InitialData assemble_initial_data(const RescaledState& rs, const Vec3& qbar, const Vec3& pbar,
                                  const ComplexField* phi0, const NonlinearitySpec& w,
                                  const PotentialSpec& V, const PhysicalParams& params,
                                  double headroom_bound) {
    const auto& grid = rs.profile.grid;
    for (int a = 0; a < grid.dim(); ++a) {
        double margin = 0.5 * grid.extent(a) - std::abs(qbar[a]);
        if (margin < 10.0 * rs.epsilon)
            fail(Error::Kind::parameter,
                 "initial soliton center too close to the box boundary: margin " +
                     std::to_string(margin) + " < 10 eps = " + std::to_string(10.0 * rs.epsilon));
    }
    if (w.epsilon() != rs.epsilon || params.epsilon != rs.epsilon)
        fail(Error::Kind::parameter, "assemble_initial_data: inconsistent epsilon across specs");

    InitialData data;
    data.qbar = qbar;
    data.pbar = pbar;
    data.vbar = scale(pbar, 1.0 / params.mass);
    data.omega = rs.omega_eps + 0.5 * params.mass * dot(data.vbar, data.vbar);

    RealField shifted = spectral::translate(rs.profile, qbar);
    ComplexField psi = ComplexField::zeros(grid, 0.0);
    for (std::size_t i = 0; i < psi.values.size(); ++i) {
        Vec3 x = grid.position(i);
        psi.values[i] = shifted.values[i] * std::polar(1.0, dot(pbar, x));
    }
    if (phi0 != nullptr) {
        if (!congruent(*phi0, psi))
            fail(Error::Kind::parameter, "perturbation field on a different grid");
        for (std::size_t i = 0; i < psi.values.size(); ++i) psi.values[i] += phi0->values[i];
    }

    double nrm = l2_norm(grid, psi.values);
    data.norm_deviation = std::abs(nrm - 1.0);
    for (auto& v : psi.values) v /= nrm;  // (p2) holds exactly after projection

    EnergyReport rep = energy_report(psi, w, V, params);
    double internal_ref = internal_energy(rs.profile, w, params);  // c0 / eps^2
    data.realized_headroom = rep.total - internal_ref;
    if (data.realized_headroom > headroom_bound)
        fail(Error::Kind::admissibility,
             "initial datum outside the admissible set: realized headroom M = " +
                 std::to_string(data.realized_headroom) + " exceeds bound " +
                 std::to_string(headroom_bound));

    data.psi0 = std::move(psi);
    return data;
}

ComplexField exact_free_soliton(double t, const RescaledState& rs, const Vec3& qbar,
                                const Vec3& pbar, const PhysicalParams& params) {
    const auto& grid = rs.profile.grid;
    Vec3 vbar = scale(pbar, 1.0 / params.mass);
    double omega = rs.omega_eps + 0.5 * params.mass * dot(vbar, vbar);
    Vec3 center = add(qbar, scale(vbar, t));
    RealField shifted = spectral::translate(rs.profile, center);
    ComplexField psi = ComplexField::zeros(grid, t);
    for (std::size_t i = 0; i < psi.values.size(); ++i) {
        Vec3 x = grid.position(i);
        psi.values[i] = shifted.values[i] * std::polar(1.0, dot(pbar, x) - omega * t);
    }
    return psi;
}

void EvolutionConfig::validate() const {
    if (!(dt > 0.0)) fail(Error::Kind::parameter, "evolution dt must be positive");
    if (!(horizon >= 0.0)) fail(Error::Kind::parameter, "evolution horizon must be nonnegative");
    if (sample_stride < 1) fail(Error::Kind::parameter, "sample stride must be >= 1");
    if (checkpoint_stride < 0) fail(Error::Kind::parameter, "checkpoint stride must be >= 0");
}

Stepper::Stepper(const SpatialGrid& grid, const NonlinearitySpec& w, const PotentialSpec& V,
                 const PhysicalParams& params, double dt)
    : grid_(grid), w_(w), params_(params), dt_(dt) {
    const std::size_t size = grid.size();
    half_kinetic_.resize(size);
    potential_.resize(size);
    work_.resize(size);

    const int n0 = grid.points(0);
    const int n1 = grid.dim() > 1 ? grid.points(1) : 1;
    const int n2 = grid.dim() > 2 ? grid.points(2) : 1;
    double k2max = 0.0;
    std::size_t flat = 0;
    for (int i0 = 0; i0 < n0; ++i0)
        for (int i1 = 0; i1 < n1; ++i1)
            for (int i2 = 0; i2 < n2; ++i2) {
                double k2 = 0.0;
                int idx[3] = {i0, i1, i2};
                for (int a = 0; a < grid.dim(); ++a) {
                    double k = grid.wave_number(a, idx[a]);
                    k2 += k * k;
                }
                k2max = std::max(k2max, k2);
                half_kinetic_[flat] = std::polar(1.0, -k2 * dt / (4.0 * params.mass));
                ++flat;
            }
    kinetic_phase_max_ = std::abs(dt) * k2max / (2.0 * params.mass);
    for (std::size_t i = 0; i < size; ++i)
        potential_[i] = V.value(grid.position(i), grid.dim());
}

void Stepper::step(ComplexField& psi) {
    if (!(psi.grid == grid_)) fail(Error::Kind::parameter, "stepper: field grid mismatch");
    auto& v = psi.values;

    spectral::forward(grid_, v);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= half_kinetic_[i];
    spectral::inverse(grid_, v);

    // exact nonlinear + potential flow: |psi| is invariant, so the rotation
    // angle (1/2) W_eps'(|psi|)/|psi| + V is constant during the substep
    for (std::size_t i = 0; i < v.size(); ++i) {
        double s = std::abs(v[i]);
        double theta = (0.5 * w_.W_eps_prime_over_s(s) + potential_[i]) * dt_;
        v[i] *= std::polar(1.0, -theta);
    }

    spectral::forward(grid_, v);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= half_kinetic_[i];
    spectral::inverse(grid_, v);

    psi.time += dt_;
}

ComplexField evolve(ComplexField psi, const EvolutionConfig& cfg, Stepper& stepper,
                    const SampleCallback& on_sample) {
    cfg.validate();
    if (stepper.dt() != cfg.dt) fail(Error::Kind::parameter, "stepper dt differs from config dt");

    const long long steps = std::llround(cfg.horizon / cfg.dt);
    auto check_finite = [&](long long step) {
        for (const auto& z : psi.values)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                fail(Error::Kind::blow_up, "non-finite field sample at t = " +
                                               std::to_string(psi.time) + " (step " +
                                               std::to_string(step) + ")");
    };

    check_finite(0);
    if (on_sample) on_sample(SampleContext{0, psi.time, psi});
    for (long long s = 1; s <= steps; ++s) {
        stepper.step(psi);
        if (s % cfg.sample_stride == 0) {
            check_finite(s);
            if (on_sample) on_sample(SampleContext{s, psi.time, psi});
        }
    }
    check_finite(steps);
    return psi;
}

}  // namespace soldyn
