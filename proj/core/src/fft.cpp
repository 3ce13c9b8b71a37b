#include "soldyn/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "soldyn/errors.hpp"

namespace soldyn::spectral {

namespace {

// Process-lifetime plan cache. Plans are created with ESTIMATE (heuristic
// only, no timing) and UNALIGNED so results are identical run to run and
// independent of buffer addresses.
struct PlanKey {
    int n0, n1, n2, sign;
    bool operator==(const PlanKey&) const = default;
};
struct PlanKeyHash {
    std::size_t operator()(const PlanKey& k) const {
        std::size_t h = std::hash<int>()(k.n0);
        h = h * 1315423911u ^ std::hash<int>()(k.n1);
        h = h * 1315423911u ^ std::hash<int>()(k.n2);
        h = h * 1315423911u ^ std::hash<int>()(k.sign);
        return h;
    }
};

std::mutex plan_mutex;
std::unordered_map<PlanKey, fftw_plan, PlanKeyHash> plan_cache;

fftw_plan plan_for(int n0, int n1, int n2, int sign) {
    PlanKey key{n0, n1, n2, sign};
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = plan_cache.find(key);
    if (it != plan_cache.end()) return it->second;

    int dims[3] = {n0, n1, n2};
    int rank = n2 > 1 ? 3 : (n1 > 1 ? 2 : 1);
    // rank counts leading axes; sizes of dropped trailing axes are 1
    std::vector<Complex> scratch(static_cast<std::size_t>(n0) * n1 * n2);
    auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft(rank, dims, ptr, ptr, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) fail(Error::Kind::parameter, "fftw plan creation failed");
    plan_cache.emplace(key, plan);
    return plan;
}

void execute(const SpatialGrid& g, std::vector<Complex>& data, int sign) {
    if (data.size() != g.size()) fail(Error::Kind::parameter, "fft: data size mismatch");
    fftw_plan plan = plan_for(g.points(0), g.dim() > 1 ? g.points(1) : 1,
                              g.dim() > 2 ? g.points(2) : 1, sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, ptr, ptr);
}

void execute_line(int n, Complex* data, int sign) {
    fftw_plan plan = plan_for(n, 1, 1, sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, ptr, ptr);
}

// Applies fn(flat, i0, i1, i2) over the full index range.
template <typename F>
void for_each_index(const SpatialGrid& g, F&& fn) {
    const int n0 = g.points(0);
    const int n1 = g.dim() > 1 ? g.points(1) : 1;
    const int n2 = g.dim() > 2 ? g.points(2) : 1;
    std::size_t flat = 0;
    for (int i0 = 0; i0 < n0; ++i0)
        for (int i1 = 0; i1 < n1; ++i1)
            for (int i2 = 0; i2 < n2; ++i2) fn(flat++, i0, i1, i2);
}

double knum(const SpatialGrid& g, int axis, int idx) { return g.wave_number(axis, idx); }

// ik multiplier along one axis, zero at the Nyquist mode.
Complex deriv_multiplier(const SpatialGrid& g, int axis, int idx) {
    if (idx == g.points(axis) / 2) return {0.0, 0.0};
    return {0.0, knum(g, axis, idx)};
}

}  // namespace

void forward(const SpatialGrid& grid, std::vector<Complex>& data) {
    execute(grid, data, FFTW_FORWARD);
}

void inverse(const SpatialGrid& grid, std::vector<Complex>& data) {
    execute(grid, data, FFTW_BACKWARD);
    double inv = 1.0 / static_cast<double>(grid.size());
    for (auto& v : data) v *= inv;
}

std::vector<Complex> spectrum(const ComplexField& f) {
    std::vector<Complex> s = f.values;
    forward(f.grid, s);
    return s;
}

std::vector<ComplexField> gradient(const ComplexField& f) {
    const auto& g = f.grid;
    std::vector<Complex> spec = f.values;
    forward(g, spec);
    std::vector<ComplexField> out;
    out.reserve(g.dim());
    for (int a = 0; a < g.dim(); ++a) {
        ComplexField da = ComplexField::zeros(g, f.time);
        const int ax = a;
        for_each_index(g, [&](std::size_t flat, int i0, int i1, int i2) {
            int idx = ax == 0 ? i0 : (ax == 1 ? i1 : i2);
            da.values[flat] = spec[flat] * deriv_multiplier(g, ax, idx);
        });
        inverse(g, da.values);
        out.push_back(std::move(da));
    }
    return out;
}

ComplexField laplacian(const ComplexField& f) {
    const auto& g = f.grid;
    std::vector<Complex> spec = f.values;
    forward(g, spec);
    for_each_index(g, [&](std::size_t flat, int i0, int i1, int i2) {
        double k2 = 0.0;
        int idx[3] = {i0, i1, i2};
        for (int a = 0; a < g.dim(); ++a) {
            double k = knum(g, a, idx[a]);
            k2 += k * k;
        }
        spec[flat] *= -k2;
    });
    inverse(g, spec);
    return {g, std::move(spec), f.time};
}

std::vector<RealField> gradient(const RealField& f) {
    auto grads = gradient(embed(f));
    std::vector<RealField> out;
    out.reserve(grads.size());
    for (auto& gf : grads) {
        RealField r{f.grid, std::vector<double>(gf.values.size())};
        for (std::size_t i = 0; i < gf.values.size(); ++i) r.values[i] = gf.values[i].real();
        out.push_back(std::move(r));
    }
    return out;
}

RealField derivative(const RealField& f, int axis) {
    const auto& g = f.grid;
    std::vector<Complex> spec(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i) spec[i] = {f.values[i], 0.0};
    forward(g, spec);
    for_each_index(g, [&](std::size_t flat, int i0, int i1, int i2) {
        int idx = axis == 0 ? i0 : (axis == 1 ? i1 : i2);
        spec[flat] *= deriv_multiplier(g, axis, idx);
    });
    inverse(g, spec);
    RealField out{g, std::vector<double>(spec.size())};
    for (std::size_t i = 0; i < spec.size(); ++i) out.values[i] = spec[i].real();
    return out;
}

RealField laplacian(const RealField& f) {
    auto lc = laplacian(embed(f));
    RealField out{f.grid, std::vector<double>(lc.values.size())};
    for (std::size_t i = 0; i < lc.values.size(); ++i) out.values[i] = lc.values[i].real();
    return out;
}

RealField divergence(const std::vector<RealField>& components) {
    const auto& g = components.at(0).grid;
    RealField out = RealField::zeros(g);
    for (int a = 0; a < g.dim(); ++a) {
        RealField da = derivative(components.at(a), a);
        for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += da.values[i];
    }
    return out;
}

namespace {

// Per-axis translation multipliers; Nyquist gets the symmetric cos choice.
std::vector<Complex> shift_multipliers(const SpatialGrid& g, int axis, double s) {
    int n = g.points(axis);
    std::vector<Complex> m(n);
    for (int i = 0; i < n; ++i) {
        double k = g.wave_number(axis, i);
        if (i == n / 2)
            m[i] = {std::cos(k * s), 0.0};
        else
            m[i] = std::polar(1.0, -k * s);
    }
    return m;
}

}  // namespace

ComplexField translate(const ComplexField& f, const Vec3& shift) {
    const auto& g = f.grid;
    std::vector<Complex> spec = f.values;
    forward(g, spec);
    std::vector<std::vector<Complex>> mult;
    for (int a = 0; a < g.dim(); ++a) mult.push_back(shift_multipliers(g, a, shift[a]));
    for_each_index(g, [&](std::size_t flat, int i0, int i1, int i2) {
        int idx[3] = {i0, i1, i2};
        Complex m{1.0, 0.0};
        for (int a = 0; a < g.dim(); ++a) m *= mult[a][idx[a]];
        spec[flat] *= m;
    });
    inverse(g, spec);
    return {g, std::move(spec), f.time};
}

RealField translate(const RealField& f, const Vec3& shift) {
    auto tc = translate(embed(f), shift);
    RealField out{f.grid, std::vector<double>(tc.values.size())};
    for (std::size_t i = 0; i < tc.values.size(); ++i) out.values[i] = tc.values[i].real();
    return out;
}

std::vector<Complex> kernel_spectrum(const SpatialGrid& grid,
                                     const std::function<double(double)>& radial_profile) {
    std::vector<Complex> data(grid.size());
    for_each_index(grid, [&](std::size_t flat, int i0, int i1, int i2) {
        int idx[3] = {i0, i1, i2};
        double r2 = 0.0;
        for (int a = 0; a < grid.dim(); ++a) {
            int n = grid.points(a);
            int m = idx[a] <= n / 2 ? idx[a] : idx[a] - n;  // wrap-ordered offset
            double d = m * grid.spacing(a);
            r2 += d * d;
        }
        data[flat] = {radial_profile(std::sqrt(r2)), 0.0};
    });
    forward(grid, data);
    return data;
}

RealField convolve(const SpatialGrid& grid, const std::vector<Complex>& kernel_spec,
                   const RealField& f) {
    if (kernel_spec.size() != grid.size())
        fail(Error::Kind::parameter, "convolve: kernel spectrum built on a different grid");
    std::vector<Complex> spec(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i) spec[i] = {f.values[i], 0.0};
    forward(grid, spec);
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= kernel_spec[i];
    inverse(grid, spec);
    RealField out{grid, std::vector<double>(spec.size())};
    double scale = grid.cell_volume();
    for (std::size_t i = 0; i < spec.size(); ++i) out.values[i] = spec[i].real() * scale;
    return out;
}

RealField cross_correlation(const RealField& u, const RealField& profile) {
    const auto& g = u.grid;
    if (!(g == profile.grid)) fail(Error::Kind::parameter, "cross_correlation: grid mismatch");
    // rotate the centered profile into wrap order (peak at index 0)
    std::vector<Complex> w(g.size());
    for_each_index(g, [&](std::size_t flat, int i0, int i1, int i2) {
        int idx[3] = {i0, i1, i2};
        std::array<int, kMaxDim> src{0, 0, 0};
        for (int a = 0; a < g.dim(); ++a) src[a] = (idx[a] + g.points(a) / 2) % g.points(a);
        w[flat] = {profile.values[g.flatten(src)], 0.0};
    });
    forward(g, w);
    std::vector<Complex> us(g.size());
    for (std::size_t i = 0; i < us.size(); ++i) us[i] = {u.values[i], 0.0};
    forward(g, us);
    for (std::size_t i = 0; i < us.size(); ++i) us[i] *= std::conj(w[i]);
    inverse(g, us);
    RealField out{g, std::vector<double>(us.size())};
    double scale = g.cell_volume();
    for (std::size_t i = 0; i < us.size(); ++i) out.values[i] = us[i].real() * scale;
    return out;
}

namespace {

// Evaluates the 1D trigonometric interpolant of `line` (length n, extent L,
// coordinates -L/2 + j dx) at arbitrary points; points outside the
// fundamental box [-L/2, L/2) evaluate to zero (the interpolant is treated
// as zero-extended, not periodically continued, so a dilation does not drag
// periodic images into the box). Phases advance by a recurrence that is
// resynchronized every 64 modes.
void evaluate_line(const std::vector<Complex>& line_spectrum, double L,
                   const std::vector<double>& points, std::vector<Complex>& out) {
    const int n = static_cast<int>(line_spectrum.size());
    const double inv_n = 1.0 / n;
    out.resize(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        if (points[p] < -0.5 * L || points[p] >= 0.5 * L) {
            out[p] = {0.0, 0.0};
            continue;
        }
        const double base = 2.0 * std::numbers::pi * (points[p] + 0.5 * L) / L;
        Complex acc = line_spectrum[0];
        const Complex step = std::polar(1.0, base);
        Complex phase = step;
        for (int m = 1; m <= n / 2 - 1; ++m) {
            if ((m & 63) == 0) phase = std::polar(1.0, base * m);
            acc += line_spectrum[m] * phase + line_spectrum[n - m] * std::conj(phase);
            phase *= step;
        }
        acc += line_spectrum[n / 2] * std::cos(base * (n / 2));
        out[p] = acc * inv_n;
    }
}

}  // namespace

ComplexField dilate(const ComplexField& source, const SpatialGrid& target, double eps) {
    if (!(eps > 0.0)) fail(Error::Kind::parameter, "dilate: eps must be positive");
    if (source.grid.dim() != target.dim())
        fail(Error::Kind::parameter, "dilate: dimension mismatch");
    const int dim = target.dim();

    std::array<int, kMaxDim> shape{1, 1, 1};
    for (int a = 0; a < dim; ++a) shape[a] = source.grid.points(a);
    std::vector<Complex> data = source.values;

    for (int axis = 0; axis < dim; ++axis) {
        const int n_in = shape[axis];
        const int n_out = target.points(axis);
        const double L = source.grid.extent(axis);

        std::vector<double> pts(n_out);
        for (int i = 0; i < n_out; ++i) pts[i] = target.coordinate(axis, i) / eps;

        std::array<int, kMaxDim> newshape = shape;
        newshape[axis] = n_out;
        std::vector<Complex> next(static_cast<std::size_t>(newshape[0]) * newshape[1] * newshape[2]);

        const std::size_t stride_in =
            (axis == 0) ? static_cast<std::size_t>(shape[1]) * shape[2]
                        : (axis == 1 ? static_cast<std::size_t>(shape[2]) : 1);
        const std::size_t stride_out =
            (axis == 0) ? static_cast<std::size_t>(newshape[1]) * newshape[2]
                        : (axis == 1 ? static_cast<std::size_t>(newshape[2]) : 1);

        // iterate over all lines along `axis`
        std::array<int, kMaxDim> outer = shape;
        outer[axis] = 1;
        std::vector<Complex> line(n_in), evals;
        for (int o0 = 0; o0 < outer[0]; ++o0)
            for (int o1 = 0; o1 < outer[1]; ++o1)
                for (int o2 = 0; o2 < outer[2]; ++o2) {
                    std::size_t base_in =
                        (static_cast<std::size_t>(o0) * shape[1] + o1) * shape[2] + o2;
                    std::size_t base_out =
                        (static_cast<std::size_t>(o0) * newshape[1] + o1) * newshape[2] + o2;
                    for (int j = 0; j < n_in; ++j) line[j] = data[base_in + j * stride_in];
                    execute_line(n_in, line.data(), FFTW_FORWARD);
                    evaluate_line(line, L, pts, evals);
                    for (int i = 0; i < n_out; ++i) next[base_out + i * stride_out] = evals[i];
                }
        data = std::move(next);
        shape = newshape;
    }

    double amp = std::pow(eps, -0.5 * dim);
    for (auto& v : data) v *= amp;
    return {target, std::move(data), source.time};
}

RealField dilate(const RealField& source, const SpatialGrid& target, double eps) {
    auto c = dilate(embed(source), target, eps);
    RealField out{target, std::vector<double>(c.values.size())};
    for (std::size_t i = 0; i < c.values.size(); ++i) out.values[i] = c.values[i].real();
    return out;
}

double spectral_reach(const RealField& f, double floor) {
    const auto& g = f.grid;
    std::vector<Complex> spec(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i) spec[i] = {f.values[i], 0.0};
    forward(g, spec);
    double peak = 0.0;
    for (const auto& v : spec) peak = std::max(peak, std::abs(v));
    double threshold = floor * peak;
    double reach = 0.0;
    for_each_index(g, [&](std::size_t flat, int i0, int i1, int i2) {
        if (std::abs(spec[flat]) <= threshold) return;
        int idx[3] = {i0, i1, i2};
        for (int a = 0; a < g.dim(); ++a) reach = std::max(reach, std::abs(knum(g, a, idx[a])));
    });
    return reach;
}

}  // namespace soldyn::spectral
