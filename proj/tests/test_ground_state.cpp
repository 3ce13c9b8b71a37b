#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "soldyn/fft.hpp"
#include "soldyn/ground_state.hpp"
#include "soldyn/observables.hpp"
#include "soldyn/quadrature.hpp"

using namespace soldyn;

// Closed-form oracle for N = 1, m = 1, nu = 3 (W = -s^3/3): substituting
// A sech^2(Bx) into -(1/2)U'' - (1/2)U^2 = omega1 U forces A = 6B^2 and
// omega1 = -2B^2; the unit-charge constraint A^2 * 4/(3B) = 1 then pins
// B = (1/48)^{1/3}. c0 follows by quadrature with int sech^4 = 4/(3B),
// int sech^6 = 16/(15B):
//   c0 = 8 A^2 B / 15 - 16 A^3 / (45 B) = -57.6 B^5.
namespace oracle {
const double B = std::cbrt(1.0 / 48.0);
const double A = 6.0 * B * B;
const double omega1 = -2.0 * B * B;
const double c0 = -57.6 * std::pow(B, 5);

double profile(double x) {
    double s = 1.0 / std::cosh(B * x);
    return A * s * s;
}
}  // namespace oracle

namespace {

const SpatialGrid kGrid = SpatialGrid::line(4096, 80.0);

const GroundState& solved() {
    static GroundState gs = [] {
        auto w = NonlinearitySpec::make(3.0, 1.0, 1);
        return solve_ground_state(w, PhysicalParams::make(1.0, 1.0), kGrid, {});
    }();
    return gs;
}

}  // namespace

TEST_CASE("oracle self-consistency by independent quadrature") {
    // integrate the closed form on a fine Simpson grid, independent of any
    // library quadrature, and confirm charge, omega1 and c0
    const int n = 200001;
    const double R = 60.0, h = 2.0 * R / (n - 1);
    double charge = 0.0, kin = 0.0, pot = 0.0, pair = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = -R + i * h;
        double u = oracle::profile(x);
        double t = std::tanh(oracle::B * x);
        double du = -2.0 * oracle::B * u * t;
        double wgt = (i == 0 || i == n - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        charge += wgt * u * u;
        kin += wgt * 0.5 * du * du;
        pot += wgt * (-u * u * u / 3.0);
        pair += wgt * (0.5 * du * du - 0.5 * u * u * u);
    }
    charge *= h / 3.0;
    kin *= h / 3.0;
    pot *= h / 3.0;
    pair *= h / 3.0;
    CHECK(charge == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(kin + pot == doctest::Approx(oracle::c0).epsilon(1e-10));
    CHECK(pair == doctest::Approx(oracle::omega1).epsilon(1e-10));  // omega1 = int(u'^2/2 + W'(u)u/2)
}

TEST_CASE("solver reproduces the sech^2 ground state") {
    const GroundState& gs = solved();

    SUBCASE("profile within 1e-6 in L2") {
        std::vector<double> diff(kGrid.size());
        for (std::size_t i = 0; i < diff.size(); ++i)
            diff[i] = gs.profile.values[i] - oracle::profile(kGrid.position(i)[0]);
        CHECK(l2_norm(kGrid, diff) < 1e-6);
    }

    SUBCASE("multiplier and minimal energy") {
        CHECK(gs.omega1 == doctest::Approx(oracle::omega1).epsilon(0).scale(1.0).epsilon(1e-6));
        CHECK(std::abs(gs.omega1 - oracle::omega1) < 1e-6);
        CHECK(std::abs(gs.c0 - oracle::c0) < 1e-6);
    }

    SUBCASE("type invariants") {
        CHECK(l2_norm(kGrid, gs.profile.values) == doctest::Approx(1.0).epsilon(1e-10));
        for (double v : gs.profile.values) CHECK(v >= 0.0);
        CHECK(gs.residual_norm <= 1e-8);

        // even under reflection about the center (max asymmetry <= 1e-8)
        const int n = kGrid.points(0);
        double asym = 0.0;
        for (int i = 1; i < n; ++i)
            asym = std::max(asym,
                            std::abs(gs.profile.values[i] - gs.profile.values[n - i]));
        CHECK(asym < 1e-8);
    }

    SUBCASE("residual is orthogonal to the profile") {
        auto w = NonlinearitySpec::make(3.0, 1.0, 1);
        RealField r = ground_state_residual(gs.profile, w, PhysicalParams::make(1.0, 1.0),
                                            gs.omega1);
        std::vector<double> prod(r.values.size());
        for (std::size_t i = 0; i < prod.size(); ++i)
            prod[i] = r.values[i] * gs.profile.values[i];
        CHECK(std::abs(integrate(kGrid, prod)) < 1e-8);
    }

    SUBCASE("exponential tail mass") {
        // log of the tail mass falls linearly in R with slope near -4B
        std::vector<double> Rs, logs;
        for (double R = 5.0; R <= 15.0; R += 1.0) {
            std::vector<double> tail(kGrid.size(), 0.0);
            for (std::size_t i = 0; i < tail.size(); ++i) {
                double x = kGrid.position(i)[0];
                if (std::abs(x) > R)
                    tail[i] = gs.profile.values[i] * gs.profile.values[i];
            }
            double mass = integrate(kGrid, tail);
            REQUIRE(mass > 0.0);
            Rs.push_back(R);
            logs.push_back(std::log(mass));
        }
        double n = Rs.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < Rs.size(); ++i) {
            sx += Rs[i];
            sy += logs[i];
            sxx += Rs[i] * Rs[i];
            sxy += Rs[i] * logs[i];
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CHECK(slope < -0.9);
        CHECK(slope > -1.3);  // -4B = -1.1006
    }
}

TEST_CASE("lagrange multiplier operation") {
    const GroundState& gs = solved();
    auto w = NonlinearitySpec::make(3.0, 1.0, 1);
    auto params = PhysicalParams::make(1.0, 1.0);

    CHECK(lagrange_multiplier(gs.profile, w, params) ==
          doctest::Approx(gs.omega1).epsilon(1e-14));

    // with a vanishing nonlinear coupling the multiplier reduces to the
    // kinetic Rayleigh quotient
    auto w0 = NonlinearitySpec::make(3.0, 1.0, 1, 1e-14);
    auto grads = spectral::gradient(gs.profile);
    std::vector<double> kin(kGrid.size());
    for (std::size_t i = 0; i < kin.size(); ++i)
        kin[i] = 0.5 * grads[0].values[i] * grads[0].values[i];
    double rayleigh = integrate(kGrid, kin);
    CHECK(lagrange_multiplier(gs.profile, w0, params) ==
          doctest::Approx(rayleigh).epsilon(1e-10));
}

TEST_CASE("rescaled ground state") {
    const GroundState& gs = solved();
    auto params1 = PhysicalParams::make(1.0, 1.0);

    SUBCASE("eps = 1 identity") {
        RescaledState rs = rescale_ground_state(gs, 1.0, kGrid);
        CHECK(rs.omega_eps == gs.omega1);
        for (std::size_t i = 0; i < rs.profile.values.size(); i += 511)
            CHECK(rs.profile.values[i] == gs.profile.values[i]);
    }

    SUBCASE("omega_eps scaling") {
        RescaledState rs = rescale_ground_state(gs, 0.5, kGrid);
        CHECK(rs.omega_eps == doctest::Approx(4.0 * gs.omega1).epsilon(1e-15));
        CHECK(rs.omega_eps == doctest::Approx(-0.605708).epsilon(1e-4));
    }

    SUBCASE("unit charge and the internal-energy scaling law") {
        for (double eps : {1.0, 0.5, 0.25}) {
            RescaledState rs = rescale_ground_state(gs, eps, kGrid);
            CHECK(std::abs(l2_norm(kGrid, rs.profile.values) - 1.0) < 1e-12);
            auto weps = NonlinearitySpec::make(3.0, eps, 1);
            double jeps = internal_energy(rs.profile, weps, params1);
            CHECK(std::abs(eps * eps * jeps - gs.c0) < 1e-8);
        }
    }

    SUBCASE("rescaled equation residual stays small") {
        for (double eps : {0.5, 0.25}) {
            RescaledState rs = rescale_ground_state(gs, eps, kGrid);
            auto weps = NonlinearitySpec::make(3.0, eps, 1);
            double res = l2_norm(
                kGrid, ground_state_residual(rs.profile, weps, params1, rs.omega_eps).values);
            // eps^-2-scaled equation: compare against the eps = 1 residual
            // at the matching scale
            CHECK(res <= 10.0 * gs.residual_norm / (eps * eps) / std::sqrt(eps));
        }
    }

    SUBCASE("unresolvable eps raises a resolution error") {
        auto coarse = SpatialGrid::line(128, 80.0);
        auto w = NonlinearitySpec::make(3.0, 1.0, 1);
        GroundStateOptions opts;
        opts.tolerance = 1e-6;
        GroundState small = solve_ground_state(w, params1, coarse, opts);
        CHECK_THROWS_AS(rescale_ground_state(small, 0.01, coarse), Error);
    }
}
