#include "soldyn/io/report.hpp"

#include <fstream>

#include <json.hpp>

#include "soldyn/errors.hpp"

namespace soldyn::io {

namespace {

using json = nlohmann::ordered_json;

json vec_json(const Vec3& v, int dim) {
    json arr = json::array();
    for (int a = 0; a < dim; ++a) arr.push_back(v[a]);
    return arr;
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(Error::Kind::io, "cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
    if (!out) fail(Error::Kind::io, "short write to '" + path + "'");
}

json comparison_json(const ComparisonReport& c) {
    return json{{"sup_position_error", c.sup_position_error},
                {"sup_momentum_error", c.sup_momentum_error},
                {"max_velocity_correction", c.max_velocity_correction},
                {"max_combined_halo", c.max_combined_halo},
                {"pressure_coefficient", c.pressure_coefficient},
                {"epsilon", c.epsilon},
                {"eta", c.eta},
                {"support_radius", c.support_radius}};
}

json fit_json(const TrendFit& f) {
    return json{
        {"slope", f.slope}, {"r_squared", f.r_squared}, {"valid", f.valid}, {"note", f.note}};
}

}  // namespace

void write_run_report(const RunResult& result, const RunSetup& setup, const std::string& run_id,
                      const std::string& path) {
    const int dim = setup.grid.dim();
    json j;
    j["format_version"] = 1;
    j["run_id"] = run_id;
    j["grid"] = {{"N", dim}, {"L", setup.grid.extent(0)}, {"n", setup.grid.points(0)}};
    j["physics"] = {{"m", setup.mass},
                    {"nu", setup.nu},
                    {"epsilon", setup.epsilon},
                    {"potential", setup.potential.describe()},
                    {"eta", setup.eta()}};
    j["time"] = {{"dt", setup.evolution.dt},
                 {"T", setup.evolution.horizon},
                 {"sample_stride", setup.evolution.sample_stride},
                 {"kinetic_phase_max", result.diagnostics.kinetic_phase_max}};
    j["ground_state"] = {{"omega1", result.ground_state.omega1},
                         {"c0", result.ground_state.c0},
                         {"residual_norm", result.ground_state.residual_norm},
                         {"iterations", result.ground_state.iterations},
                         {"omega_eps", result.rescaled.omega_eps}};
    j["initial"] = {{"qbar", vec_json(result.initial.qbar, dim)},
                    {"pbar", vec_json(result.initial.pbar, dim)},
                    {"omega", result.initial.omega},
                    {"realized_headroom", result.initial.realized_headroom},
                    {"norm_deviation", result.initial.norm_deviation}};
    j["diagnostics"] = {{"max_charge_deviation", result.diagnostics.max_charge_deviation},
                        {"max_energy_drift", result.diagnostics.max_energy_drift},
                        {"max_center_mismatch", result.diagnostics.max_center_mismatch},
                        {"halo_contained", result.diagnostics.halo_contained},
                        {"samples", result.series.size()}};
    j["comparison"] = comparison_json(result.comparison);
    j["replay"] = {{"max_position_law_residual", result.residuals.max_position_law},
                   {"max_momentum_law_residual", result.residuals.max_momentum_law}};
    write_json(j, path);
}

void write_sweep_report(const SweepReport& report, const SweepPlan& plan,
                        const std::string& run_id, const std::string& path) {
    json j;
    j["format_version"] = 1;
    j["run_id"] = run_id;
    j["plan"] = {{"epsilons", plan.sorted_epsilons()},
                 {"N", plan.dim},
                 {"L", plan.extent},
                 {"base_n", plan.base_points},
                 {"m", plan.mass},
                 {"nu", plan.nu},
                 {"potential", plan.potential.describe()},
                 {"qbar", vec_json(plan.qbar, plan.dim)},
                 {"pbar", vec_json(plan.pbar, plan.dim)},
                 {"dt", plan.dt},
                 {"T", plan.horizon},
                 {"sample_stride", plan.sample_stride}};
    j["ground_state"] = {{"omega1", report.ground_state.omega1},
                         {"c0", report.ground_state.c0},
                         {"residual_norm", report.ground_state.residual_norm},
                         {"iterations", report.ground_state.iterations}};
    json outcomes = json::array();
    for (const auto& o : report.outcomes) {
        json oj;
        oj["epsilon"] = o.epsilon;
        oj["grid_n"] = o.grid_points;
        oj["completed"] = o.completed;
        if (!o.completed) {
            oj["failure"] = o.failure;
        } else {
            oj["comparison"] = comparison_json(o.report);
            oj["replay"] = {{"max_position_law_residual", o.max_replay_position},
                            {"max_momentum_law_residual", o.max_replay_momentum}};
            oj["conservation"] = {{"max_charge_deviation", o.max_charge_deviation},
                                  {"max_energy_drift", o.max_energy_drift}};
            oj["geometry"] = {{"halo_contained", o.halo_contained},
                              {"max_center_mismatch", o.max_center_mismatch}};
        }
        outcomes.push_back(std::move(oj));
    }
    j["outcomes"] = std::move(outcomes);
    j["verdicts"] = {
        {"position_error_decreasing", report.position_error_decreasing},
        {"velocity_correction_decreasing", report.velocity_correction_decreasing},
        {"combined_halo_decreasing", report.combined_halo_decreasing},
        {"pressure_coefficient_decreasing", report.pressure_coefficient_decreasing}};
    j["fits"] = {{"position", fit_json(report.position_fit)},
                 {"velocity_correction", fit_json(report.velocity_correction_fit)},
                 {"combined_halo", fit_json(report.combined_halo_fit)},
                 {"pressure", fit_json(report.pressure_fit)}};
    write_json(j, path);
}

SweepSummary read_sweep_summary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Error::Kind::io, "cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(Error::Kind::corrupt, "'" + path + "': " + e.what());
    }
    SweepSummary s;
    for (const auto& o : j.at("outcomes")) {
        if (!o.value("completed", false)) continue;
        s.epsilons.push_back(o.at("epsilon").get<double>());
        const auto& c = o.at("comparison");
        s.sup_position_errors.push_back(c.at("sup_position_error").get<double>());
        s.max_velocity_corrections.push_back(c.at("max_velocity_correction").get<double>());
        s.max_combined_halos.push_back(c.at("max_combined_halo").get<double>());
        s.pressure_coefficients.push_back(c.at("pressure_coefficient").get<double>());
    }
    return s;
}

}  // namespace soldyn::io
