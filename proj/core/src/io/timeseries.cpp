#include "soldyn/io/timeseries.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "soldyn/errors.hpp"

namespace soldyn::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string header_for(int dim) {
    std::ostringstream h;
    auto vec = [&](const std::string& name) {
        for (int a = 0; a < dim; ++a) h << ',' << name << '_' << a;
    };
    h << 't';
    vec("q_eps");
    vec("p_eps");
    h << ",m_eps,E_total,J_internal,G_dynamical,C_charge";
    vec("P_total");
    vec("K_eps");
    vec("H_eps");
    vec("F_eps");
    vec("qhat");
    vec("q_classical");
    vec("p_classical");
    return h.str();
}

}  // namespace

void write_timeseries(const RunSeries& series, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(Error::Kind::io, "cannot open '" + path + "' for writing");
    const int dim = series.dim;
    out << header_for(dim) << '\n';

    for (std::size_t i = 0; i < series.size(); ++i) {
        std::ostringstream row;
        auto put = [&](double v) { row << ',' << format_double(v); };
        auto put_vec = [&](const Vec3& v) {
            for (int a = 0; a < dim; ++a) put(v[a]);
        };
        row << format_double(series.times[i]);
        put_vec(series.soliton[i].barycenter);
        put_vec(series.soliton[i].momentum);
        put(series.soliton[i].mass);
        put(series.energy[i].total);
        put(series.energy[i].internal);
        put(series.energy[i].dynamical);
        put(series.energy[i].charge);
        put_vec(series.energy[i].momentum);
        put_vec(series.halo[i].velocity_correction);
        put_vec(series.halo[i].combined);
        put_vec(series.halo[i].surface_pressure);
        put_vec(series.concentration[i]);
        put_vec(i < series.classical_q.size() ? series.classical_q[i] : kZeroVec);
        put_vec(i < series.classical_p.size() ? series.classical_p[i] : kZeroVec);
        out << row.str() << '\n';
    }
    if (!out) fail(Error::Kind::io, "short write to '" + path + "'");
}

RunSeries read_timeseries(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Error::Kind::io, "cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) fail(Error::Kind::corrupt, "'" + path + "': missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    // infer dimension from the header
    int dim = 0;
    for (int d = 1; d <= kMaxDim; ++d)
        if (line == header_for(d)) dim = d;
    if (dim == 0)
        fail(Error::Kind::corrupt, "'" + path + "': unrecognized time-series header");

    RunSeries s;
    s.dim = dim;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> vals;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) {
            char* end = nullptr;
            double v = std::strtod(item.c_str(), &end);
            if (end == item.c_str())
                fail(Error::Kind::corrupt,
                     "'" + path + "' line " + std::to_string(lineno) + ": bad number '" + item +
                         "'");
            vals.push_back(v);
        }
        std::size_t expected = 1 + 11 * static_cast<std::size_t>(dim) + 5;
        if (vals.size() != expected)
            fail(Error::Kind::corrupt, "'" + path + "' line " + std::to_string(lineno) +
                                           ": expected " + std::to_string(expected) +
                                           " columns, got " + std::to_string(vals.size()));
        std::size_t k = 0;
        auto take = [&]() { return vals[k++]; };
        auto take_vec = [&]() {
            Vec3 v = kZeroVec;
            for (int a = 0; a < dim; ++a) v[a] = take();
            return v;
        };
        s.times.push_back(take());
        SolitonState st;
        st.barycenter = take_vec();
        st.momentum = take_vec();
        st.mass = take();
        st.time = s.times.back();
        EnergyReport er;
        er.total = take();
        er.internal = take();
        er.dynamical = take();
        er.charge = take();
        er.momentum = take_vec();
        HaloTerms ht;
        ht.velocity_correction = take_vec();
        ht.combined = take_vec();
        ht.surface_pressure = take_vec();
        ht.time = s.times.back();
        s.soliton.push_back(st);
        s.energy.push_back(er);
        s.halo.push_back(ht);
        s.concentration.push_back(take_vec());
        s.classical_q.push_back(take_vec());
        s.classical_p.push_back(take_vec());
        s.mismatch.push_back(0.0);
    }
    return s;
}

}  // namespace soldyn::io
