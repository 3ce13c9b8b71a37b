#pragma once

#include <string>
#include <vector>

#include "soldyn/classical.hpp"
#include "soldyn/sweep.hpp"

namespace soldyn::io {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f6fb4";
    bool dashed = false;
};

/// Self-contained SVG line chart (no display server involved). Log axes
/// drop non-positive samples.
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<PlotSeries>& series, bool logx = false,
                     bool logy = false);

struct EmittedFiles {
    std::vector<std::string> files;
    std::string notice;  // set when nothing was emitted
};

/// Trajectory overlay (soliton barycenter vs classical path) for one run,
/// as chart + per-plot data file.
EmittedFiles emit_run_plots(const RunSeries& series, const std::string& dir,
                            const std::string& stem = "trajectory");

/// Per-epsilon overlays plus the log-log trend chart of a sweep.
EmittedFiles emit_sweep_plots(const SweepReport& report, const std::vector<RunSeries>& series,
                              const std::string& dir);

}  // namespace soldyn::io
