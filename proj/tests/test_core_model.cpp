#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "soldyn/fft.hpp"
#include "soldyn/ground_state.hpp"
#include "soldyn/nonlinearity.hpp"
#include "soldyn/observables.hpp"
#include "soldyn/potential.hpp"
#include "soldyn/quadrature.hpp"

using namespace soldyn;

namespace {

SpatialGrid small_grid() { return SpatialGrid::line(1024, 40.0); }

ComplexField gaussian_field(const SpatialGrid& g, double sigma, double boost = 0.0) {
    ComplexField f = ComplexField::zeros(g);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        double x = g.position(i)[0];
        f.values[i] = std::exp(-x * x / (2.0 * sigma * sigma)) * std::polar(1.0, boost * x);
    }
    double nrm = l2_norm(g, f.values);
    for (auto& v : f.values) v /= nrm;
    return f;
}

}  // namespace

TEST_CASE("nonlinearity family values") {
    auto w = NonlinearitySpec::make(3.0, 1.0, 1);
    CHECK(w.W(0.0) == 0.0);
    CHECK(w.W_prime(0.0) == 0.0);
    CHECK(w.W_second(0.0) == 0.0);
    CHECK(w.W(1.0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(w.W_prime(2.0) == doctest::Approx(-4.0).epsilon(1e-15));
    // W(s0) < 0 for sampled s0
    for (double s : {0.25, 1.0, 3.5}) CHECK(w.W(s) < 0.0);
    CHECK_THROWS_AS(w.W(-0.5), Error);
    CHECK_THROWS_AS(NonlinearitySpec::make(3.0, 0.0, 1), Error);
    CHECK_THROWS_AS(NonlinearitySpec::make(6.0, 1.0, 1), Error);  // nu = 2 + 4/N
    CHECK_THROWS_AS(NonlinearitySpec::make(2.0, 1.0, 1), Error);
}

TEST_CASE("rescaled nonlinearity") {
    auto w1 = NonlinearitySpec::make(3.0, 1.0, 1);

    SUBCASE("identity at eps = 1") {
        for (double s : {0.0, 0.3, 1.7, 4.0}) CHECK(w1.W_eps(s) == w1.W(s));
    }

    SUBCASE("hand-evaluated value at eps = 1/2") {
        // eps^-3 W(eps^{1/2} * 1) = 8 * (-(0.5^{1.5})/3)
        auto w = w1.with_epsilon(0.5);
        double expected = -8.0 * std::pow(0.5, 1.5) / 3.0;
        CHECK(w.W_eps(1.0) == doctest::Approx(expected).epsilon(1e-15));
        CHECK(expected == doctest::Approx(-0.9428090415820634).epsilon(1e-12));
    }

    SUBCASE("zero stays fixed") {
        auto w = w1.with_epsilon(0.25);
        CHECK(w.W_eps(0.0) == 0.0);
    }

    SUBCASE("exact scaling identity") {
        for (double eps : {1.0, 0.5, 0.25}) {
            auto w = w1.with_epsilon(eps);
            for (double s = 0.0; s <= 4.0; s += 0.37) {
                double direct = std::pow(eps, -3.0) * w1.W(std::pow(eps, 0.5) * s);
                CHECK(w.W_eps(s) == doctest::Approx(direct).epsilon(1e-14));
                double direct_p = std::pow(eps, -2.5) * w1.W_prime(std::pow(eps, 0.5) * s);
                CHECK(w.W_eps_prime(s) == doctest::Approx(direct_p).epsilon(1e-14));
            }
        }
    }

    SUBCASE("prime-over-s agrees with the quotient away from zero") {
        auto w = w1.with_epsilon(0.3);
        for (double s : {0.13, 0.9, 2.6})
            CHECK(w.W_eps_prime_over_s(s) ==
                  doctest::Approx(w.W_eps_prime(s) / s).epsilon(1e-13));
        CHECK(w.W_eps_prime_over_s(0.0) == 0.0);
    }
}

TEST_CASE("W_second matches finite differences of W_prime") {
    auto w = NonlinearitySpec::make(2.7, 1.0, 1);
    double h = 1e-5;
    for (double s = 0.1; s <= 4.0; s += 0.3) {
        double fd = (w.W_prime(s + h) - w.W_prime(s - h)) / (2.0 * h);
        CHECK(w.W_second(s) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("momentum density") {
    auto g = small_grid();

    SUBCASE("real field gives zero") {
        ComplexField f = gaussian_field(g, 2.0);
        auto md = momentum_density(f);
        double mx = 0.0;
        for (double v : md[0].values) mx = std::max(mx, std::abs(v));
        CHECK(mx < 1e-13);
    }

    SUBCASE("plane-wave phase gradient") {
        // grid mode k: e^{ikx} with k = 2*pi*8/L
        double k = 2.0 * std::numbers::pi * 8.0 / g.extent(0);
        ComplexField f = gaussian_field(g, 2.0, k);
        auto md = momentum_density(f);
        RealField u2 = modulus_squared(f);
        for (std::size_t i = 0; i < u2.values.size(); i += 37)
            CHECK(md[0].values[i] == doctest::Approx(k * u2.values[i]).epsilon(1e-8));
    }

    SUBCASE("boosted profile integrates to pbar") {
        double p = 0.83;  // not a grid mode; tails are negligible at the wrap
        ComplexField f = gaussian_field(g, 2.0, p);
        auto md = momentum_density(f);
        CHECK(integrate(g, md[0].values) == doctest::Approx(p).epsilon(1e-10));
    }
}

TEST_CASE("field rescaling") {
    auto g = small_grid();
    ComplexField f = gaussian_field(g, 2.0);

    SUBCASE("eps = 1 is the identity") {
        ComplexField r = rescale_field(f, 1.0);
        for (std::size_t i = 0; i < f.values.size(); i += 97)
            CHECK(r.values[i] == f.values[i]);
    }

    SUBCASE("charge is preserved") {
        for (double eps : {0.5, 0.25}) {
            ComplexField r = rescale_field(f, eps);
            CHECK(l2_norm(g, r.values) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    SUBCASE("internal energy scales as 1/eps^2") {
        auto w1 = NonlinearitySpec::make(3.0, 1.0, 1);
        auto params1 = PhysicalParams::make(1.0, 1.0);
        RealField v{g, std::vector<double>(g.size())};
        for (std::size_t i = 0; i < v.values.size(); ++i) v.values[i] = f.values[i].real();
        double j1 = internal_energy(v, w1, params1);
        for (double eps : {0.5, 0.25}) {
            ComplexField r = rescale_field(f, eps);
            RealField u{g, std::vector<double>(g.size())};
            for (std::size_t i = 0; i < u.values.size(); ++i) u.values[i] = r.values[i].real();
            double jeps = internal_energy(u, w1.with_epsilon(eps),
                                          PhysicalParams::make(1.0, eps));
            CHECK(jeps == doctest::Approx(j1 / (eps * eps)).epsilon(1e-9));
        }
    }

    SUBCASE("unresolvable shrink raises a resolution error") {
        // narrow feature on a coarse grid: eps far below what dx supports
        auto coarse = SpatialGrid::line(64, 40.0);
        ComplexField c = ComplexField::zeros(coarse);
        for (std::size_t i = 0; i < c.values.size(); ++i) {
            double x = coarse.position(i)[0];
            c.values[i] = std::exp(-x * x / 2.0);
        }
        CHECK_THROWS_AS(rescale_field(c, 0.05), Error);
    }
}

TEST_CASE("pairwise quadrature basics") {
    auto g = SpatialGrid::line(256, 2.0 * std::numbers::pi * 4.0);
    std::vector<double> one(g.size(), 1.0);
    CHECK(integrate(g, one) == doctest::Approx(g.extent(0)).epsilon(1e-14));

    // trapezoid on a periodic grid integrates cos^2 exactly
    std::vector<double> c2(g.size());
    for (std::size_t i = 0; i < c2.size(); ++i) {
        double x = g.position(i)[0];
        double c = std::cos(2.0 * std::numbers::pi * x / g.extent(0) * 3.0);
        c2[i] = c * c;
    }
    CHECK(integrate(g, c2) == doctest::Approx(0.5 * g.extent(0)).epsilon(1e-13));
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(SpatialGrid::line(100, 10.0), Error);  // not a power of two
    CHECK_THROWS_AS(SpatialGrid::line(8, 10.0), Error);    // below 16
    CHECK_THROWS_AS(SpatialGrid::line(64, -1.0), Error);
    auto g = SpatialGrid::uniform(2, 32, 10.0);
    CHECK(g.size() == 32 * 32);
    CHECK(g.coordinate(0, 16) == doctest::Approx(0.0));
    CHECK(g.wrap(0, 5.1) == doctest::Approx(-4.9));
}
