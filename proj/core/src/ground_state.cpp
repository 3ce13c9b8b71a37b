#include "soldyn/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "soldyn/errors.hpp"
#include "soldyn/fft.hpp"
#include "soldyn/quadrature.hpp"

namespace soldyn {

namespace {

// Odd extension of W' so transient sign wiggles of the flow are harmless.
double w_prime_odd(const NonlinearitySpec& w, double s) {
    return s >= 0.0 ? w.W_prime(s) : -w.W_prime(-s);
}

}  // namespace

double internal_energy(const RealField& u, const NonlinearitySpec& w,
                       const PhysicalParams& params) {
    auto grads = spectral::gradient(u);
    std::vector<double> dens(u.values.size(), 0.0);
    for (int a = 0; a < u.grid.dim(); ++a)
        for (std::size_t i = 0; i < dens.size(); ++i)
            dens[i] += grads[a].values[i] * grads[a].values[i];
    for (std::size_t i = 0; i < dens.size(); ++i)
        dens[i] = dens[i] / (2.0 * params.mass) + w.W_eps(std::abs(u.values[i]));
    return integrate(u.grid, dens);
}

double lagrange_multiplier(const RealField& U, const NonlinearitySpec& w,
                           const PhysicalParams& params) {
    auto grads = spectral::gradient(U);
    std::vector<double> dens(U.values.size(), 0.0);
    for (int a = 0; a < U.grid.dim(); ++a)
        for (std::size_t i = 0; i < dens.size(); ++i)
            dens[i] += grads[a].values[i] * grads[a].values[i];
    for (std::size_t i = 0; i < dens.size(); ++i) {
        double s = U.values[i];
        dens[i] = dens[i] / (2.0 * params.mass) + 0.5 * w_prime_odd(w, s) * s;
    }
    return integrate(U.grid, dens);
}

RealField ground_state_residual(const RealField& U, const NonlinearitySpec& w,
                                const PhysicalParams& params, double omega) {
    RealField lap = spectral::laplacian(U);
    RealField r{U.grid, std::vector<double>(U.values.size())};
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        double s = U.values[i];
        r.values[i] =
            -lap.values[i] / (2.0 * params.mass) + 0.5 * w_prime_odd(w, s) - omega * s;
    }
    return r;
}

GroundState solve_ground_state(const NonlinearitySpec& w, const PhysicalParams& params,
                               const SpatialGrid& grid, const GroundStateOptions& opts) {
    if (w.epsilon() != 1.0)
        fail(Error::Kind::parameter, "ground state is solved at eps = 1; rescale afterwards");
    if (w.dim() != grid.dim())
        fail(Error::Kind::parameter, "nonlinearity and grid dimensions disagree");
    if (!(opts.tolerance > 0.0) || opts.max_iterations < 1)
        fail(Error::Kind::parameter, "invalid ground-state solver options");

    const std::size_t size = grid.size();
    const double mass = params.mass;

    // Gaussian seed of unit charge, width L/16, centered.
    RealField u{grid, std::vector<double>(size)};
    for (std::size_t i = 0; i < size; ++i) {
        Vec3 x = grid.position(i);
        double r2 = 0.0;
        for (int a = 0; a < grid.dim(); ++a) {
            double sigma = grid.extent(a) / 16.0;
            r2 += x[a] * x[a] / (sigma * sigma);
        }
        u.values[i] = std::exp(-0.5 * r2);
    }
    {
        double nrm = l2_norm(grid, u.values);
        for (auto& v : u.values) v /= nrm;
    }

    auto energy_of = [&](const RealField& f) { return internal_energy(f, w, params); };

    // Tangent-projected preconditioned descent on the unit sphere. The
    // update direction is M^-1 (G - omega u) with G the Euler-Lagrange
    // operator and M = c - (1/2m) Lap applied as a Fourier multiplier, so a
    // fixed point of the iteration satisfies the discrete Euler-Lagrange
    // equation exactly (no step-size bias), while the multiplier keeps the
    // flow stable at O(1) steps.
    double step = opts.initial_step;
    double energy = energy_of(u);
    double residual = std::numeric_limits<double>::infinity();
    int iter = 0;

    std::vector<Complex> work(size);
    std::vector<double> k2table(size);
    {
        const int n0 = grid.points(0);
        const int n1 = grid.dim() > 1 ? grid.points(1) : 1;
        const int n2 = grid.dim() > 2 ? grid.points(2) : 1;
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
                    k2table[flat++] = k2;
                }
    }

    for (; iter < opts.max_iterations; ++iter) {
        // Euler-Lagrange operator G = -(1/2m) Lap u + (1/2) W'(u)
        for (std::size_t i = 0; i < size; ++i) work[i] = {u.values[i], 0.0};
        spectral::forward(grid, work);
        std::vector<Complex> lap = work;
        for (std::size_t i = 0; i < size; ++i) lap[i] *= -k2table[i];
        spectral::inverse(grid, lap);

        std::vector<double> G(size);
        for (std::size_t i = 0; i < size; ++i)
            G[i] = -lap[i].real() / (2.0 * mass) + 0.5 * w_prime_odd(w, u.values[i]);

        std::vector<double> Gu(size);
        for (std::size_t i = 0; i < size; ++i) Gu[i] = G[i] * u.values[i];
        double omega_now = integrate(grid, Gu);

        std::vector<double> resid(size);
        for (std::size_t i = 0; i < size; ++i) resid[i] = G[i] - omega_now * u.values[i];
        residual = l2_norm(grid, resid);
        if (residual <= opts.tolerance) break;

        // preconditioned direction
        double shift = std::max(0.5, std::abs(omega_now));
        for (std::size_t i = 0; i < size; ++i) work[i] = {resid[i], 0.0};
        spectral::forward(grid, work);
        for (std::size_t i = 0; i < size; ++i)
            work[i] /= shift + k2table[i] / (2.0 * mass);
        spectral::inverse(grid, work);

        RealField candidate{grid, std::vector<double>(size)};
        for (std::size_t i = 0; i < size; ++i)
            candidate.values[i] = u.values[i] - step * work[i].real();
        double nrm = l2_norm(grid, candidate.values);
        for (auto& v : candidate.values) v /= nrm;

        double cand_energy = energy_of(candidate);
        if (cand_energy > energy + 1e-13 * std::max(1.0, std::abs(energy))) {
            step *= 0.5;  // descent step too large
            if (step < 1e-6)
                fail(Error::Kind::convergence,
                     "ground-state flow: energy increase persists at minimal step; residual " +
                         std::to_string(residual));
            continue;
        }

        u = std::move(candidate);
        energy = cand_energy;
    }

    if (residual > opts.tolerance)
        fail(Error::Kind::convergence,
             "ground-state flow did not reach tolerance " + std::to_string(opts.tolerance) +
                 " within " + std::to_string(opts.max_iterations) +
                 " iterations; last residual " + std::to_string(residual));

    // Gauge fixing: nonnegative sign, then barycenter at the grid center
    // (integer shift; the flow preserves evenness so the residual offset is
    // far below a cell).
    if (pairwise_sum(u.values) < 0.0)
        for (auto& v : u.values) v = -v;
    for (auto& v : u.values) v = std::max(v, 0.0);

    {
        std::vector<double> u2(size);
        for (std::size_t i = 0; i < size; ++i) u2[i] = u.values[i] * u.values[i];
        for (int a = 0; a < grid.dim(); ++a) {
            std::vector<double> moment(size);
            for (std::size_t i = 0; i < size; ++i) {
                auto idx = grid.unflatten(i);
                moment[i] = grid.coordinate(a, idx[a]) * u2[i];
            }
            double bary = integrate(grid, moment) / integrate(grid, u2);
            int shift = static_cast<int>(std::lround(bary / grid.spacing(a)));
            if (shift != 0) {
                RealField shifted{grid, std::vector<double>(size)};
                for (std::size_t i = 0; i < size; ++i) {
                    auto idx = grid.unflatten(i);
                    auto src = idx;
                    src[a] = (idx[a] + shift % grid.points(a) + grid.points(a)) % grid.points(a);
                    shifted.values[i] = u.values[grid.flatten(src)];
                }
                u = std::move(shifted);
                for (std::size_t i = 0; i < size; ++i) u2[i] = u.values[i] * u.values[i];
            }
        }
    }

    {
        double nrm = l2_norm(grid, u.values);
        for (auto& v : u.values) v /= nrm;
    }

    GroundState gs;
    gs.omega1 = lagrange_multiplier(u, w, params);
    gs.residual_norm = l2_norm(grid, ground_state_residual(u, w, params, gs.omega1).values);
    gs.c0 = internal_energy(u, w, params);
    gs.profile = std::move(u);
    gs.iterations = iter + 1;
    return gs;
}

namespace {

void check_resolution(const RealField& amplitude, double eps, const SpatialGrid& target) {
    double reach = spectral::spectral_reach(amplitude, 1e-10);
    double nyq = target.nyquist(0);
    for (int a = 1; a < target.dim(); ++a) nyq = std::min(nyq, target.nyquist(a));
    if (reach > eps * nyq) {
        double required_dx = eps * std::numbers::pi / reach;
        fail(Error::Kind::resolution,
             "rescale: target grid cannot resolve the shrunken profile; need dx <= " +
                 std::to_string(required_dx) + " (have " + std::to_string(target.spacing(0)) +
                 ")");
    }
}

}  // namespace

RescaledState rescale_ground_state(const GroundState& gs, double eps, const SpatialGrid& target) {
    if (!(eps > 0.0)) fail(Error::Kind::parameter, "rescale: eps must be positive");
    RescaledState rs;
    rs.epsilon = eps;
    rs.omega_eps = gs.omega1 / (eps * eps);
    if (eps == 1.0 && target == gs.profile.grid) {
        rs.profile = gs.profile;
        return rs;
    }
    check_resolution(gs.profile, eps, target);
    rs.profile = spectral::dilate(gs.profile, target, eps);
    return rs;
}

ComplexField rescale_field(const ComplexField& v, double eps) {
    return rescale_field(v, eps, v.grid);
}

ComplexField rescale_field(const ComplexField& v, double eps, const SpatialGrid& target) {
    if (!(eps > 0.0)) fail(Error::Kind::parameter, "rescale: eps must be positive");
    if (eps == 1.0 && target == v.grid) return v;
    RealField re{v.grid, std::vector<double>(v.values.size())};
    RealField im{v.grid, std::vector<double>(v.values.size())};
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        re.values[i] = v.values[i].real();
        im.values[i] = v.values[i].imag();
    }
    check_resolution(re, eps, target);
    check_resolution(im, eps, target);
    return spectral::dilate(v, target, eps);
}

}  // namespace soldyn
