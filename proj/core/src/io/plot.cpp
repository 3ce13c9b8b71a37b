#include "soldyn/io/plot.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "soldyn/errors.hpp"
#include "soldyn/io/timeseries.hpp"

namespace soldyn::io {

namespace {

struct Range {
    double lo = 0.0, hi = 1.0;
};

Range axis_range(const std::vector<PlotSeries>& series, bool y_axis, bool logscale) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& s : series) {
        const auto& v = y_axis ? s.y : s.x;
        for (double val : v) {
            if (logscale && !(val > 0.0)) continue;
            lo = std::min(lo, val);
            hi = std::max(hi, val);
        }
    }
    if (!(lo <= hi)) return {0.0, 1.0};
    if (logscale) {
        lo = std::log10(lo);
        hi = std::log10(hi);
    }
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

// round tick spacing to 1/2/5 * 10^k
double nice_step(double span, int target_ticks) {
    double raw = span / std::max(1, target_ticks);
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double frac = raw / mag;
    double step = frac < 1.5 ? 1.0 : frac < 3.5 ? 2.0 : frac < 7.5 ? 5.0 : 10.0;
    return step * mag;
}

}  // namespace

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<PlotSeries>& series, bool logx, bool logy) {
    const double W = 840, H = 540;
    const double ml = 76, mr = 24, mt = 46, mb = 58;
    const double pw = W - ml - mr, ph = H - mt - mb;

    Range xr = axis_range(series, false, logx);
    Range yr = axis_range(series, true, logy);

    auto tx = [&](double v) {
        double u = logx ? std::log10(v) : v;
        return ml + (u - xr.lo) / (xr.hi - xr.lo) * pw;
    };
    auto ty = [&](double v) {
        double u = logy ? std::log10(v) : v;
        return mt + ph - (u - yr.lo) / (yr.hi - yr.lo) * ph;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
        << " font-size=\"16\">" << escape_xml(title) << "</text>\n";

    // frame
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#444\"/>\n";

    auto ticks = [&](const Range& r, bool log) {
        std::vector<double> t;
        if (log) {
            for (int e = static_cast<int>(std::floor(r.lo)); e <= std::ceil(r.hi); ++e)
                t.push_back(std::pow(10.0, e));
        } else {
            double step = nice_step(r.hi - r.lo, 6);
            for (double v = std::ceil(r.lo / step) * step; v <= r.hi + 1e-12 * step; v += step)
                t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
        }
        return t;
    };

    svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
    for (double v : ticks(xr, logx)) {
        double u = logx ? std::log10(v) : v;
        if (u < xr.lo || u > xr.hi) continue;
        double px = tx(v);
        svg << "<line x1=\"" << px << "\" y1=\"" << mt << "\" x2=\"" << px << "\" y2=\""
            << mt + ph << "\" stroke=\"#ddd\"/>\n";
        std::ostringstream lab;
        lab.precision(6);
        lab << v;
        svg << "<text x=\"" << px << "\" y=\"" << mt + ph + 16
            << "\" text-anchor=\"middle\">" << lab.str() << "</text>\n";
    }
    for (double v : ticks(yr, logy)) {
        double u = logy ? std::log10(v) : v;
        if (u < yr.lo || u > yr.hi) continue;
        double py = ty(v);
        svg << "<line x1=\"" << ml << "\" y1=\"" << py << "\" x2=\"" << ml + pw << "\" y2=\""
            << py << "\" stroke=\"#ddd\"/>\n";
        std::ostringstream lab;
        lab.precision(6);
        lab << v;
        svg << "<text x=\"" << ml - 6 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\">" << lab.str() << "</text>\n";
    }
    svg << "</g>\n";

    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 14
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape_xml(xlabel) << "</text>\n";
    svg << "<text x=\"18\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\""
        << " transform=\"rotate(-90 18 " << mt + ph / 2 << ")\">" << escape_xml(ylabel)
        << "</text>\n";

    double legend_y = mt + 14;
    for (const auto& s : series) {
        std::ostringstream pts;
        bool pen_up = true;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if ((logx && !(s.x[i] > 0.0)) || (logy && !(s.y[i] > 0.0))) {
                pen_up = true;
                continue;
            }
            pts << (pen_up ? "M" : "L") << tx(s.x[i]) << ' ' << ty(s.y[i]) << ' ';
            pen_up = false;
        }
        svg << "<path d=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.6\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "")
            << "/>\n";
        svg << "<line x1=\"" << ml + pw - 170 << "\" y1=\"" << legend_y << "\" x2=\""
            << ml + pw - 140 << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "")
            << "/>\n";
        svg << "<text x=\"" << ml + pw - 134 << "\" y=\"" << legend_y + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(s.label)
            << "</text>\n";
        legend_y += 18;
    }
    svg << "</svg>\n";

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(Error::Kind::io, "cannot open '" + path + "' for writing");
    out << svg.str();
    if (!out) fail(Error::Kind::io, "short write to '" + path + "'");
}

namespace {

void write_columns(const std::string& path, const std::vector<std::string>& names,
                   const std::vector<std::vector<double>>& cols) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(Error::Kind::io, "cannot open '" + path + "' for writing");
    for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
    out << '\n';
    std::size_t rows = cols.empty() ? 0 : cols[0].size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c)
            out << (c ? "," : "") << format_double(cols[c][r]);
        out << '\n';
    }
}

std::string eps_tag(double eps) {
    std::ostringstream tag;
    tag << "eps" << eps;
    std::string s = tag.str();
    std::replace(s.begin(), s.end(), '.', 'p');
    return s;
}

}  // namespace

EmittedFiles emit_run_plots(const RunSeries& series, const std::string& dir,
                            const std::string& stem) {
    EmittedFiles out;
    if (series.size() == 0) {
        out.notice = "empty series: no plot files emitted";
        return out;
    }
    std::filesystem::create_directories(dir);
    std::vector<double> q(series.size()), qc(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        q[i] = series.soliton[i].barycenter[0];
        qc[i] = i < series.classical_q.size() ? series.classical_q[i][0] : 0.0;
    }
    std::string data = dir + "/" + stem + "_overlay.csv";
    write_columns(data, {"t", "q_eps", "q_classical"}, {series.times, q, qc});
    out.files.push_back(data);

    std::string chart = dir + "/" + stem + "_overlay.svg";
    PlotSeries sol{"soliton barycenter", series.times, q, "#1f6fb4", false};
    PlotSeries cls{"classical particle", series.times, qc, "#c23b22", true};
    write_svg_chart(chart, "Soliton vs point particle", "t", "q(t)", {sol, cls});
    out.files.push_back(chart);
    return out;
}

EmittedFiles emit_sweep_plots(const SweepReport& report, const std::vector<RunSeries>& series,
                              const std::string& dir) {
    EmittedFiles out;
    bool any = false;
    for (const auto& o : report.outcomes)
        if (o.completed) any = true;
    if (!any) {
        out.notice = "sweep report has no completed runs: no plot files emitted";
        return out;
    }
    std::filesystem::create_directories(dir);

    for (std::size_t i = 0; i < report.outcomes.size(); ++i) {
        if (!report.outcomes[i].completed || i >= series.size() || series[i].size() == 0)
            continue;
        auto sub = emit_run_plots(series[i], dir, "trajectory_" + eps_tag(report.outcomes[i].epsilon));
        out.files.insert(out.files.end(), sub.files.begin(), sub.files.end());
    }

    std::vector<double> eps, err, kmax, hmax, pcoef;
    for (const auto& o : report.outcomes) {
        if (!o.completed) continue;
        eps.push_back(o.epsilon);
        err.push_back(o.report.sup_position_error);
        kmax.push_back(o.report.max_velocity_correction);
        hmax.push_back(o.report.max_combined_halo);
        pcoef.push_back(o.report.pressure_coefficient);
    }
    std::string data = dir + "/trend.csv";
    write_columns(data, {"epsilon", "sup_position_error", "max_K", "max_H", "F_coefficient"},
                  {eps, err, kmax, hmax, pcoef});
    out.files.push_back(data);

    std::string chart = dir + "/trend.svg";
    write_svg_chart(chart, "Soliton-vs-particle error and halo terms", "epsilon", "magnitude",
                    {PlotSeries{"sup |q_eps - q|", eps, err, "#1f6fb4", false},
                     PlotSeries{"max |K_eps|", eps, kmax, "#c23b22", false},
                     PlotSeries{"max |H_eps|", eps, hmax, "#2e8b57", false},
                     PlotSeries{"F coefficient", eps, pcoef, "#8860b0", false}},
                    true, true);
    out.files.push_back(chart);
    return out;
}

}  // namespace soldyn::io
