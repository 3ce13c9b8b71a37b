#include "soldyn/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace soldyn {

namespace {

template <typename T>
T pairwise_block(const T* v, std::size_t n) {
    if (n <= 8) {
        T s{};
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_block(v, h) + pairwise_block(v + h, n - h);
}

}  // namespace

double pairwise_sum(std::span<const double> v) { return pairwise_block(v.data(), v.size()); }
Complex pairwise_sum(std::span<const Complex> v) { return pairwise_block(v.data(), v.size()); }

double integrate(const SpatialGrid& grid, std::span<const double> values) {
    return grid.cell_volume() * pairwise_sum(values);
}

Complex integrate(const SpatialGrid& grid, std::span<const Complex> values) {
    return grid.cell_volume() * pairwise_sum(values);
}

double l2_norm(const SpatialGrid& grid, std::span<const Complex> values) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) sq[i] = std::norm(values[i]);
    return std::sqrt(integrate(grid, sq));
}

double l2_norm(const SpatialGrid& grid, std::span<const double> values) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) sq[i] = values[i] * values[i];
    return std::sqrt(integrate(grid, sq));
}

double cutoff_phi(double s) {
    if (s <= 1.0) return 0.0;
    if (s >= 2.0) return 1.0;
    return s - 1.0;
}

std::vector<LevelCrossing> find_level_crossings(const SpatialGrid& grid,
                                                std::span<const double> rho,
                                                std::span<const double> rho_deriv, int level) {
    std::vector<LevelCrossing> out;
    if (grid.dim() != 1) return out;
    const int n = grid.points(0);
    const double dx = grid.spacing(0);
    const double L = static_cast<double>(level);
    for (int j = 0; j < n; ++j) {
        int jp = (j + 1) % n;
        double a = rho[j] - L;
        double b = rho[jp] - L;
        if ((a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0)) {
            double theta = a / (a - b);  // linear zero inside the cell
            LevelCrossing c;
            c.cell = j;
            c.theta = theta;
            c.position = grid.coordinate(0, j) + theta * dx;
            c.rho_deriv = (1.0 - theta) * rho_deriv[j] + theta * rho_deriv[jp];
            c.level = level;
            out.push_back(c);
        }
    }
    return out;
}

double chi2_weighted_integral(const SpatialGrid& grid, std::span<const double> rho,
                              std::span<const double> w,
                              const std::vector<LevelCrossing>& crossings) {
    std::vector<double> prod(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) prod[i] = cutoff_phi(rho[i]) * w[i];
    double result = integrate(grid, prod);
    if (grid.dim() != 1) return result;

    // Trapezoid error on the cell holding a derivative kink of g = phi(rho) w
    // is (dx^2/2) theta(1-theta) [g'], with [g'] = +w|rho'| at level 1 and
    // -w|rho'| at level 2.
    const int n = grid.points(0);
    const double dx = grid.spacing(0);
    for (const auto& c : crossings) {
        int jp = (c.cell + 1) % n;
        double w_star = (1.0 - c.theta) * w[c.cell] + c.theta * w[jp];
        double jump = w_star * std::abs(c.rho_deriv) * (c.level == 1 ? 1.0 : -1.0);
        result -= 0.5 * dx * dx * c.theta * (1.0 - c.theta) * jump;
    }
    return result;
}

namespace {

// Interpolating cubic through (theta, w) = (-1, a), (0, b), (1, c), (2, d),
// returned as power-basis coefficients in theta.
struct Cubic {
    double c0, c1, c2, c3;
    double integral(double t0, double t1) const {
        auto F = [&](double t) {
            return ((c3 * t / 4.0 + c2 / 3.0) * t + c1 / 2.0) * t * t + c0 * t;
        };
        return F(t1) - F(t0);
    }
};

Cubic cell_cubic(double a, double b, double c, double d) {
    Cubic q;
    q.c0 = b;
    q.c2 = 0.5 * (a + c) - b;
    q.c3 = (-a + 3.0 * b - 3.0 * c + d) / 6.0;
    q.c1 = 0.5 * (c - a) - q.c3;
    return q;
}

}  // namespace

double halo_masked_integral(const SpatialGrid& grid, std::span<const double> rho,
                            std::span<const double> w,
                            const std::vector<LevelCrossing>& crossings) {
    if (grid.dim() != 1) return masked_integral(grid, rho, w);
    const int n = grid.points(0);
    const double dx = grid.spacing(0);

    // Per-cell crossing angles, sorted.
    std::vector<std::vector<double>> cuts(n);
    for (const auto& c : crossings) cuts[c.cell].push_back(c.theta);
    for (auto& v : cuts) std::sort(v.begin(), v.end());

    std::vector<double> contrib(n, 0.0);
    for (int j = 0; j < n; ++j) {
        int jm = (j + n - 1) % n;
        int jp = (j + 1) % n;
        int jpp = (j + 2) % n;
        // subsegment boundaries within the cell [x_j, x_{j+1}]
        double prev = 0.0;
        Cubic q = cell_cubic(w[jm], w[j], w[jp], w[jpp]);
        auto rho_at = [&](double t) { return (1.0 - t) * rho[j] + t * rho[jp]; };
        auto handle = [&](double t0, double t1) {
            if (t1 <= t0) return;
            double mid = rho_at(0.5 * (t0 + t1));
            if (mid > 1.0 && mid < 2.0) contrib[j] += dx * q.integral(t0, t1);
        };
        for (double t : cuts[j]) {
            handle(prev, t);
            prev = t;
        }
        handle(prev, 1.0);
    }
    return pairwise_sum(contrib);
}

double masked_integral(const SpatialGrid& grid, std::span<const double> rho,
                       std::span<const double> w, double guard) {
    std::vector<double> prod(rho.size(), 0.0);
    for (std::size_t i = 0; i < rho.size(); ++i)
        if (rho[i] > 1.0 + guard && rho[i] < 2.0 - guard) prod[i] = w[i];
    return integrate(grid, prod);
}

}  // namespace soldyn
