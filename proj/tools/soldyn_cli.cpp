// Command-line surface: ground-state, evolve, sweep, compare, emit-plots.
// Outputs land in <out>/<run-id>/ where the run id is a content hash of the
// config file, so concurrent runs with distinct configs never collide.
// Exit codes: 0 success, 1 validation error, 2 runtime failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "soldyn/io/checkpoint.hpp"
#include "soldyn/io/config.hpp"
#include "soldyn/io/plot.hpp"
#include "soldyn/io/report.hpp"
#include "soldyn/io/timeseries.hpp"
#include "soldyn/pipeline.hpp"
#include "soldyn/sweep.hpp"

namespace fs = std::filesystem;
using namespace soldyn;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "runs";
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "run configuration file")->required();
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_flag("--quiet", args.quiet, "suppress progress output");
}

struct LoadedConfig {
    io::RunConfig config;
    std::string run_id;
    fs::path run_dir;
};

LoadedConfig prepare(const CommonArgs& args, bool create_dir) {
    std::string text = io::read_text_file(args.config_path);
    LoadedConfig lc;
    lc.config = io::parse_config(text, args.config_path);
    lc.run_id = io::run_identifier(text);
    lc.run_dir = fs::path(args.out_dir) / lc.run_id;
    if (create_dir) fs::create_directories(lc.run_dir);
    return lc;
}

void say(const CommonArgs& args, const std::string& msg) {
    if (!args.quiet) std::cout << msg << "\n";
}

int cmd_ground_state(const CommonArgs& args) {
    LoadedConfig lc = prepare(args, true);
    RunSetup setup = lc.config.single_setup();

    NonlinearitySpec w1 = NonlinearitySpec::make(setup.nu, 1.0, setup.grid.dim(), setup.amplitude);
    GroundStateOptions opts;
    opts.tolerance = setup.ground_state_tolerance;
    GroundState gs =
        solve_ground_state(w1, PhysicalParams::make(setup.mass, 1.0), setup.grid, opts);

    std::string ckpt = (lc.run_dir / "ground_state.bin").string();
    io::save_checkpoint(ckpt, embed(gs.profile), lc.run_id);

    std::ofstream meta(lc.run_dir / "ground_state.json");
    meta << "{\n"
         << "  \"run_id\": \"" << lc.run_id << "\",\n"
         << "  \"omega1\": " << io::format_double(gs.omega1) << ",\n"
         << "  \"c0\": " << io::format_double(gs.c0) << ",\n"
         << "  \"residual_norm\": " << io::format_double(gs.residual_norm) << ",\n"
         << "  \"iterations\": " << gs.iterations << "\n}\n";

    say(args, "ground state: omega1 = " + std::to_string(gs.omega1) +
                  ", c0 = " + std::to_string(gs.c0) + ", residual = " +
                  std::to_string(gs.residual_norm) + " -> " + lc.run_dir.string());
    return 0;
}

int cmd_evolve(const CommonArgs& args) {
    LoadedConfig lc = prepare(args, true);
    RunSetup setup = lc.config.single_setup();

    fs::path ckpt_dir = lc.run_dir / "checkpoints";
    CheckpointSink sink;
    if (setup.evolution.checkpoint_stride > 0) {
        fs::create_directories(ckpt_dir);
        sink = [&](long long step, const ComplexField& psi) {
            char name[40];
            std::snprintf(name, sizeof name, "ckpt_%08lld.bin", step);
            io::save_checkpoint((ckpt_dir / name).string(), psi, lc.run_id);
        };
    }

    RunResult result = run_single(setup, nullptr, sink);

    if (lc.config.output.csv)
        io::write_timeseries(result.series, (lc.run_dir / "timeseries.csv").string());
    if (lc.config.output.json)
        io::write_run_report(result, setup, lc.run_id, (lc.run_dir / "report.json").string());
    if (lc.config.output.svg) io::emit_run_plots(result.series, lc.run_dir.string());

    say(args, "evolve: " + std::to_string(result.series.size()) + " samples, sup|q-q_cl| = " +
                  std::to_string(result.comparison.sup_position_error) + " -> " +
                  lc.run_dir.string());
    return 0;
}

int cmd_sweep(const CommonArgs& args) {
    LoadedConfig lc = prepare(args, true);
    SweepPlan plan = lc.config.sweep_plan();

    SweepArtifacts artifacts;
    SweepReport report = run_sweep(plan, &artifacts);

    if (lc.config.output.json)
        io::write_sweep_report(report, plan, lc.run_id, (lc.run_dir / "sweep.json").string());
    if (lc.config.output.csv) {
        for (std::size_t i = 0; i < report.outcomes.size(); ++i) {
            if (!report.outcomes[i].completed || artifacts.series[i].size() == 0) continue;
            char name[48];
            std::snprintf(name, sizeof name, "timeseries_eps%g.csv",
                          report.outcomes[i].epsilon);
            std::string file = name;
            for (auto& c : file)
                if (c == '.') c = 'p';
            file.resize(file.size() - 4);
            io::write_timeseries(artifacts.series[i], (lc.run_dir / (file + ".csv")).string());
        }
    }
    if (lc.config.output.svg)
        io::emit_sweep_plots(report, artifacts.series, lc.run_dir.string());

    int failures = 0;
    for (const auto& o : report.outcomes)
        if (!o.completed) ++failures;
    say(args, "sweep: " + std::to_string(report.outcomes.size() - failures) + "/" +
                  std::to_string(report.outcomes.size()) + " runs completed -> " +
                  lc.run_dir.string());
    return failures == 0 ? 0 : 2;
}

int cmd_compare(const CommonArgs& args) {
    LoadedConfig lc = prepare(args, false);
    fs::path csv = lc.run_dir / "timeseries.csv";
    if (!fs::exists(csv))
        fail(Error::Kind::io,
             "no timeseries.csv under " + lc.run_dir.string() + "; run `soldyn evolve` first");

    RunSeries series = io::read_timeseries(csv.string());
    series.epsilon = lc.config.epsilons.size() == 1 ? lc.config.epsilons[0] : 0.0;

    ClassicalTrajectory classical;
    classical.times = series.times;
    classical.positions = series.classical_q;
    classical.momenta = series.classical_p;
    classical.energies.assign(series.size(), 0.0);
    ComparisonReport rep = compare(series, classical);
    EffectiveResiduals res = replay_effective(series, lc.config.potential, lc.config.mass);

    std::ofstream out(lc.run_dir / "compare.json");
    out << "{\n"
        << "  \"sup_position_error\": " << io::format_double(rep.sup_position_error) << ",\n"
        << "  \"sup_momentum_error\": " << io::format_double(rep.sup_momentum_error) << ",\n"
        << "  \"max_velocity_correction\": " << io::format_double(rep.max_velocity_correction)
        << ",\n"
        << "  \"max_combined_halo\": " << io::format_double(rep.max_combined_halo) << ",\n"
        << "  \"pressure_coefficient\": " << io::format_double(rep.pressure_coefficient) << ",\n"
        << "  \"max_position_law_residual\": " << io::format_double(res.max_position_law)
        << ",\n"
        << "  \"max_momentum_law_residual\": " << io::format_double(res.max_momentum_law)
        << "\n}\n";

    say(args, "compare: sup position error " + std::to_string(rep.sup_position_error) + " -> " +
                  (lc.run_dir / "compare.json").string());
    return 0;
}

int cmd_emit_plots(const CommonArgs& args) {
    LoadedConfig lc = prepare(args, false);
    fs::path sweep_json = lc.run_dir / "sweep.json";
    fs::path csv = lc.run_dir / "timeseries.csv";

    io::EmittedFiles emitted;
    if (fs::exists(sweep_json)) {
        io::SweepSummary s = io::read_sweep_summary(sweep_json.string());
        if (s.epsilons.empty()) {
            emitted.notice = "sweep report has no completed runs: no plot files emitted";
        } else {
            std::string chart = (lc.run_dir / "trend.svg").string();
            io::write_svg_chart(
                chart, "Soliton-vs-particle error and halo terms", "epsilon", "magnitude",
                {io::PlotSeries{"sup |q_eps - q|", s.epsilons, s.sup_position_errors, "#1f6fb4",
                                false},
                 io::PlotSeries{"max |K_eps|", s.epsilons, s.max_velocity_corrections, "#c23b22",
                                false},
                 io::PlotSeries{"max |H_eps|", s.epsilons, s.max_combined_halos, "#2e8b57",
                                false},
                 io::PlotSeries{"F coefficient", s.epsilons, s.pressure_coefficients, "#8860b0",
                                false}},
                true, true);
            emitted.files.push_back(chart);
        }
        // per-epsilon overlays from the emitted series files
        for (const auto& entry : fs::directory_iterator(lc.run_dir)) {
            std::string name = entry.path().filename().string();
            if (name.rfind("timeseries_eps", 0) == 0 && entry.path().extension() == ".csv") {
                RunSeries series = io::read_timeseries(entry.path().string());
                std::string stem = "trajectory_" + name.substr(11, name.size() - 15);
                auto sub = io::emit_run_plots(series, lc.run_dir.string(), stem);
                emitted.files.insert(emitted.files.end(), sub.files.begin(), sub.files.end());
            }
        }
    } else if (fs::exists(csv)) {
        RunSeries series = io::read_timeseries(csv.string());
        emitted = io::emit_run_plots(series, lc.run_dir.string());
    } else {
        emitted.notice = "nothing to plot under " + lc.run_dir.string() +
                         " (no timeseries.csv or sweep.json)";
    }

    if (!emitted.notice.empty()) {
        say(args, emitted.notice);
    } else {
        say(args, "emitted " + std::to_string(emitted.files.size()) + " plot file(s) -> " +
                      lc.run_dir.string());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"soliton dynamics laboratory for the nonlinear Schroedinger equation"};
    app.require_subcommand(1);

    CommonArgs gs_args, ev_args, sw_args, cp_args, pl_args;
    auto* gs = app.add_subcommand("ground-state", "solve the constrained ground state");
    add_common(gs, gs_args);
    auto* ev = app.add_subcommand("evolve", "run one evolution with full observables");
    add_common(ev, ev_args);
    auto* sw = app.add_subcommand("sweep", "run an epsilon sweep and aggregate trends");
    add_common(sw, sw_args);
    auto* cp = app.add_subcommand("compare", "recompute comparison from an emitted series");
    add_common(cp, cp_args);
    auto* pl = app.add_subcommand("emit-plots", "emit SVG charts for a finished run");
    add_common(pl, pl_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gs->parsed()) return cmd_ground_state(gs_args);
        if (ev->parsed()) return cmd_evolve(ev_args);
        if (sw->parsed()) return cmd_sweep(sw_args);
        if (cp->parsed()) return cmd_compare(cp_args);
        if (pl->parsed()) return cmd_emit_plots(pl_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == Error::Kind::config_invalid ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
