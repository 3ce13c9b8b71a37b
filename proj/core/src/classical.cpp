#include "soldyn/classical.hpp"

#include <cmath>
#include <string>

#include "soldyn/errors.hpp"

namespace soldyn {

ClassicalTrajectory integrate_classical(const Vec3& q0, const Vec3& p0, const PotentialSpec& V,
                                        double mass, double horizon, double dt, int dim) {
    if (!(dt > 0.0)) fail(Error::Kind::parameter, "classical integrator needs dt > 0");
    if (!(mass > 0.0)) fail(Error::Kind::parameter, "classical integrator needs mass > 0");

    auto accel = [&](const Vec3& q) { return scale(V.gradient(q, dim), -1.0); };

    ClassicalTrajectory tr;
    long long steps = std::llround(horizon / dt);
    tr.times.reserve(steps + 1);
    tr.positions.reserve(steps + 1);
    tr.momenta.reserve(steps + 1);
    tr.energies.reserve(steps + 1);

    Vec3 q = q0, p = p0;
    auto record = [&](double t) {
        tr.times.push_back(t);
        tr.positions.push_back(q);
        tr.momenta.push_back(p);
        tr.energies.push_back(0.5 * dot(p, p) / mass + V.value(q, dim));
    };
    record(0.0);

    for (long long s = 1; s <= steps; ++s) {
        Vec3 k1q = scale(p, 1.0 / mass);
        Vec3 k1p = accel(q);
        Vec3 k2q = scale(add(p, scale(k1p, 0.5 * dt)), 1.0 / mass);
        Vec3 k2p = accel(add(q, scale(k1q, 0.5 * dt)));
        Vec3 k3q = scale(add(p, scale(k2p, 0.5 * dt)), 1.0 / mass);
        Vec3 k3p = accel(add(q, scale(k2q, 0.5 * dt)));
        Vec3 k4q = scale(add(p, scale(k3p, dt)), 1.0 / mass);
        Vec3 k4p = accel(add(q, scale(k3q, dt)));

        for (int a = 0; a < 3; ++a) {
            q[a] += dt / 6.0 * (k1q[a] + 2.0 * k2q[a] + 2.0 * k3q[a] + k4q[a]);
            p[a] += dt / 6.0 * (k1p[a] + 2.0 * k2p[a] + 2.0 * k3p[a] + k4p[a]);
        }
        record(s * dt);
    }
    return tr;
}

EffectiveResiduals replay_effective(const RunSeries& series, const PotentialSpec& V, double mass) {
    const std::size_t n = series.size();
    if (n < 3)
        fail(Error::Kind::insufficient,
             "replay needs at least 3 uniformly spaced samples, got " + std::to_string(n));
    (void)mass;

    // verify uniform sampling
    double dt = series.times[1] - series.times[0];
    for (std::size_t i = 2; i < n; ++i) {
        double step = series.times[i] - series.times[i - 1];
        if (std::abs(step - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
            fail(Error::Kind::alignment, "replay: series is not uniformly sampled");
    }

    EffectiveResiduals res;
    res.times.reserve(n - 2);
    res.position_law.reserve(n - 2);
    res.momentum_law.reserve(n - 2);
    const int dim = series.dim;

    for (std::size_t i = 1; i + 1 < n; ++i) {
        const auto& prev = series.soliton[i - 1];
        const auto& cur = series.soliton[i];
        const auto& next = series.soliton[i + 1];
        const auto& halo = series.halo[i];

        Vec3 rq = kZeroVec, rp = kZeroVec;
        Vec3 gradV = V.gradient(cur.barycenter, dim);
        for (int a = 0; a < dim; ++a) {
            double qdot = (next.barycenter[a] - prev.barycenter[a]) / (2.0 * dt);
            double pdot = (next.momentum[a] - prev.momentum[a]) / (2.0 * dt);
            rq[a] = qdot - cur.momentum[a] / cur.mass - halo.velocity_correction[a];
            rp[a] = pdot + gradV[a] - halo.surface_pressure[a] - halo.combined[a];
        }
        res.times.push_back(series.times[i]);
        res.position_law.push_back(rq);
        res.momentum_law.push_back(rp);
        res.max_position_law = std::max(res.max_position_law, norm(rq));
        res.max_momentum_law = std::max(res.max_momentum_law, norm(rp));
    }
    return res;
}

ComparisonReport compare(const RunSeries& series, const ClassicalTrajectory& classical) {
    const std::size_t n = series.size();
    if (n != classical.times.size())
        fail(Error::Kind::alignment, "compare: series lengths differ (" + std::to_string(n) +
                                         " vs " + std::to_string(classical.times.size()) + ")");
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(series.times[i] - classical.times[i]) >
            1e-9 * std::max(1.0, std::abs(series.times[i])))
            fail(Error::Kind::alignment, "compare: sampling times differ at index " +
                                             std::to_string(i));

    ComparisonReport rep;
    rep.epsilon = series.epsilon;
    rep.eta = series.eta;
    rep.support_radius = series.support_radius;

    for (std::size_t i = 0; i < n; ++i) {
        rep.sup_position_error = std::max(
            rep.sup_position_error, norm(sub(series.soliton[i].barycenter, classical.positions[i])));
        rep.sup_momentum_error = std::max(
            rep.sup_momentum_error, norm(sub(series.soliton[i].momentum, classical.momenta[i])));
        rep.max_velocity_correction =
            std::max(rep.max_velocity_correction, norm(series.halo[i].velocity_correction));
        rep.max_combined_halo = std::max(rep.max_combined_halo, norm(series.halo[i].combined));
    }

    // per-unit-time coefficient of |int F dt|: cumulative trapezoid, then the
    // max over all windows of |C_j - C_i| / (1 + t_j - t_i)
    if (n >= 2) {
        std::vector<Vec3> cumulative(n, kZeroVec);
        for (std::size_t i = 1; i < n; ++i) {
            double half = 0.5 * (series.times[i] - series.times[i - 1]);
            for (int a = 0; a < 3; ++a)
                cumulative[i][a] = cumulative[i - 1][a] +
                                   half * (series.halo[i].surface_pressure[a] +
                                           series.halo[i - 1].surface_pressure[a]);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double window = 1.0 + (series.times[j] - series.times[i]);
                rep.pressure_coefficient = std::max(
                    rep.pressure_coefficient, norm(sub(cumulative[j], cumulative[i])) / window);
            }
    }
    return rep;
}

}  // namespace soldyn
