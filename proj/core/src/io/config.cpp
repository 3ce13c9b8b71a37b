#include "soldyn/io/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>

#include "soldyn/errors.hpp"

namespace soldyn::io {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

using SectionMap = std::map<std::string, std::map<std::string, Entry>>;

// Collects every problem; the caller throws once with the full list.
struct Validator {
    SectionMap sections;
    std::vector<std::string> problems;
    std::string origin;

    void problem(const std::string& what) { problems.push_back(what); }

    Entry* find(const std::string& section, const std::string& key) {
        auto s = sections.find(section);
        if (s == sections.end()) return nullptr;
        auto k = s->second.find(key);
        if (k == s->second.end()) return nullptr;
        k->second.used = true;
        return &k->second;
    }

    bool get_double(const std::string& section, const std::string& key, double& out) {
        Entry* e = find(section, key);
        if (!e) return false;
        try {
            std::size_t pos = 0;
            out = std::stod(e->value, &pos);
            if (pos != e->value.size()) throw std::invalid_argument("trailing");
        } catch (...) {
            problem("[" + section + "]." + key + " (line " + std::to_string(e->line) +
                    "): not a number: '" + e->value + "'");
            return false;
        }
        return true;
    }

    bool get_int(const std::string& section, const std::string& key, int& out) {
        Entry* e = find(section, key);
        if (!e) return false;
        try {
            std::size_t pos = 0;
            long v = std::stol(e->value, &pos);
            if (pos != e->value.size()) throw std::invalid_argument("trailing");
            out = static_cast<int>(v);
        } catch (...) {
            problem("[" + section + "]." + key + " (line " + std::to_string(e->line) +
                    "): not an integer: '" + e->value + "'");
            return false;
        }
        return true;
    }

    bool get_string(const std::string& section, const std::string& key, std::string& out) {
        Entry* e = find(section, key);
        if (!e) return false;
        out = e->value;
        return true;
    }

    bool get_double_list(const std::string& section, const std::string& key,
                         std::vector<double>& out) {
        Entry* e = find(section, key);
        if (!e) return false;
        out.clear();
        std::stringstream ss(e->value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            try {
                std::size_t pos = 0;
                out.push_back(std::stod(item, &pos));
                if (pos != item.size()) throw std::invalid_argument("trailing");
            } catch (...) {
                problem("[" + section + "]." + key + " (line " + std::to_string(e->line) +
                        "): not a number: '" + item + "'");
                return false;
            }
        }
        if (out.empty()) {
            problem("[" + section + "]." + key + ": empty list");
            return false;
        }
        return true;
    }

    bool get_vec3(const std::string& section, const std::string& key, Vec3& out, int dim) {
        std::vector<double> list;
        Entry* e = find(section, key);
        if (!e) return false;
        std::stringstream ss(e->value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            try {
                std::size_t pos = 0;
                list.push_back(std::stod(item, &pos));
                if (pos != item.size()) throw std::invalid_argument("trailing");
            } catch (...) {
                problem("[" + section + "]." + key + " (line " + std::to_string(e->line) +
                        "): not a number: '" + item + "'");
                return false;
            }
        }
        if (static_cast<int>(list.size()) != dim) {
            problem("[" + section + "]." + key + " (line " + std::to_string(e->line) +
                    "): expected " + std::to_string(dim) + " component(s), got " +
                    std::to_string(list.size()));
            return false;
        }
        out = kZeroVec;
        for (int a = 0; a < dim; ++a) out[a] = list[a];
        return true;
    }

    void check_unknown() {
        static const std::map<std::string, std::vector<std::string>> schema = {
            {"grid", {"N", "L", "n"}},
            {"physics", {"m", "nu", "epsilon", "potential", "k", "g", "depth", "width", "center"}},
            {"initial",
             {"qbar", "pbar", "perturbation", "perturbation_amplitude", "perturbation_width",
              "perturbation_center", "M"}},
            {"time", {"dt", "T", "sample_stride", "checkpoint_stride"}},
            {"halo", {"eta"}},
            {"output", {"dir", "formats"}},
        };
        for (const auto& [name, keys] : sections) {
            auto it = schema.find(name);
            if (it == schema.end()) {
                problem("unknown section [" + name + "]");
                continue;
            }
            for (const auto& [key, entry] : keys) {
                if (std::find(it->second.begin(), it->second.end(), key) == it->second.end())
                    problem("unknown key [" + name + "]." + key + " (line " +
                            std::to_string(entry.line) + ")");
            }
        }
    }
};

SectionMap parse_sections(const std::string& text, std::vector<std::string>& problems) {
    SectionMap out;
    std::stringstream ss(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                problems.push_back("line " + std::to_string(lineno) +
                                   ": malformed section header '" + t + "'");
                continue;
            }
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                problems.push_back("line " + std::to_string(lineno) + ": empty section name");
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            problems.push_back("line " + std::to_string(lineno) + ": expected 'key = value', got '" +
                               t + "'");
            continue;
        }
        if (section.empty()) {
            problems.push_back("line " + std::to_string(lineno) + ": key outside any section");
            continue;
        }
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) {
            problems.push_back("line " + std::to_string(lineno) + ": empty key");
            continue;
        }
        if (out[section].count(key))
            problems.push_back("line " + std::to_string(lineno) + ": duplicate key [" + section +
                               "]." + key);
        out[section][key] = Entry{value, lineno, false};
    }
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
    Validator v;
    v.origin = origin;
    v.sections = parse_sections(text, v.problems);

    RunConfig cfg;

    v.get_int("grid", "N", cfg.dim);
    v.get_double("grid", "L", cfg.extent);
    v.get_int("grid", "n", cfg.points);

    if (cfg.dim < 1 || cfg.dim > 3) v.problem("[grid].N: must be 1, 2 or 3");
    if (!(cfg.extent > 0.0)) v.problem("[grid].L: must be positive");
    if (cfg.points < 16 || (cfg.points & (cfg.points - 1)) != 0)
        v.problem("[grid].n: must be a power of two >= 16");

    v.get_double("physics", "m", cfg.mass);
    v.get_double("physics", "nu", cfg.nu);
    v.get_double_list("physics", "epsilon", cfg.epsilons);

    if (!(cfg.mass > 0.0)) v.problem("[physics].m: must be positive");
    if (cfg.dim >= 1 && cfg.dim <= 3) {
        double critical = 2.0 + 4.0 / cfg.dim;
        if (!(cfg.nu > 2.0 && cfg.nu < critical))
            v.problem("[physics].nu: " + std::to_string(cfg.nu) +
                      " violates the mass-subcritical bound 2 < nu < 2 + 4/N = " +
                      std::to_string(critical));
    }
    {
        std::vector<double> sorted = cfg.epsilons;
        std::sort(sorted.begin(), sorted.end(), std::greater<double>());
        for (double e : cfg.epsilons)
            if (!(e > 0.0 && e <= 1.0))
                v.problem("[physics].epsilon: value " + std::to_string(e) + " outside (0, 1]");
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i] == sorted[i - 1])
                v.problem("[physics].epsilon: duplicate value " + std::to_string(sorted[i]));
    }

    std::string pot_name = "harmonic";
    v.get_string("physics", "potential", pot_name);
    double stiffness = 1.0, depth = 1.0, width_ = 1.0;
    Vec3 slope{1.0, 0.0, 0.0}, well_center = kZeroVec;
    bool have_k = v.get_double("physics", "k", stiffness);
    bool have_g = v.get_vec3("physics", "g", slope, cfg.dim);
    bool have_depth = v.get_double("physics", "depth", depth);
    bool have_width = v.get_double("physics", "width", width_);
    v.get_vec3("physics", "center", well_center, cfg.dim);
    try {
        if (pot_name == "zero") {
            cfg.potential = PotentialSpec::zero();
        } else if (pot_name == "harmonic") {
            cfg.potential = PotentialSpec::harmonic(stiffness);
        } else if (pot_name == "linear") {
            if (!have_g) v.problem("[physics].g: linear potential needs a slope vector");
            cfg.potential = PotentialSpec::linear(slope);
        } else if (pot_name == "well") {
            if (!have_depth || !have_width)
                v.problem("[physics]: well potential needs depth and width");
            cfg.potential = PotentialSpec::bounded_well(depth, width_, well_center);
        } else {
            v.problem("[physics].potential: unknown selector '" + pot_name +
                      "' (zero|harmonic|linear|well)");
        }
    } catch (const Error& e) {
        v.problem(std::string("[physics]: ") + e.what());
    }
    if (have_k && pot_name != "harmonic")
        v.problem("[physics].k: only meaningful for the harmonic selector");

    v.get_vec3("initial", "qbar", cfg.qbar, cfg.dim);
    v.get_vec3("initial", "pbar", cfg.pbar, cfg.dim);
    std::string pert = "none";
    v.get_string("initial", "perturbation", pert);
    if (pert == "none") {
        cfg.perturbation.kind = PerturbationRecipe::Kind::none;
    } else if (pert == "gaussian") {
        cfg.perturbation.kind = PerturbationRecipe::Kind::gaussian;
    } else {
        v.problem("[initial].perturbation: unknown recipe '" + pert + "' (none|gaussian)");
    }
    v.get_double("initial", "perturbation_amplitude", cfg.perturbation.amplitude);
    v.get_double("initial", "perturbation_width", cfg.perturbation.width);
    v.get_vec3("initial", "perturbation_center", cfg.perturbation.center, cfg.dim);
    if (cfg.perturbation.kind == PerturbationRecipe::Kind::gaussian &&
        !(cfg.perturbation.width > 0.0))
        v.problem("[initial].perturbation_width: must be positive");
    v.get_double("initial", "M", cfg.headroom_bound);
    if (!(cfg.headroom_bound > 0.0)) v.problem("[initial].M: must be positive");

    v.get_double("time", "dt", cfg.dt);
    v.get_double("time", "T", cfg.horizon);
    v.get_int("time", "sample_stride", cfg.sample_stride);
    v.get_int("time", "checkpoint_stride", cfg.checkpoint_stride);
    if (!(cfg.dt > 0.0)) v.problem("[time].dt: must be positive");
    if (!(cfg.horizon >= 0.0)) v.problem("[time].T: must be nonnegative");
    if (cfg.sample_stride < 1) v.problem("[time].sample_stride: must be >= 1");
    if (cfg.checkpoint_stride < 0) v.problem("[time].checkpoint_stride: must be >= 0");

    std::string eta = "equal-epsilon";
    v.get_string("halo", "eta", eta);
    if (eta == "equal-epsilon") {
        cfg.eta_equals_epsilon = true;
    } else {
        try {
            std::size_t pos = 0;
            cfg.eta_value = std::stod(eta, &pos);
            if (pos != eta.size()) throw std::invalid_argument("trailing");
            cfg.eta_equals_epsilon = false;
            if (!(cfg.eta_value > 0.0 && cfg.eta_value < 1.0))
                v.problem("[halo].eta: fixed value must lie in (0, 1)");
        } catch (const std::invalid_argument&) {
            v.problem("[halo].eta: expected 'equal-epsilon' or a number, got '" + eta + "'");
        }
    }

    v.get_string("output", "dir", cfg.output.directory);
    std::string formats;
    if (v.get_string("output", "formats", formats)) {
        cfg.output.csv = cfg.output.json = cfg.output.svg = false;
        std::stringstream ss(formats);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item == "csv")
                cfg.output.csv = true;
            else if (item == "json")
                cfg.output.json = true;
            else if (item == "svg")
                cfg.output.svg = true;
            else if (!item.empty())
                v.problem("[output].formats: unknown format '" + item + "' (csv,json,svg)");
        }
        if (!cfg.output.csv && !cfg.output.json && !cfg.output.svg)
            v.problem("[output].formats: at least one of csv,json,svg required");
    }

    // initial center must keep a 10*eps margin to the box boundary
    if (!cfg.epsilons.empty() && cfg.dim >= 1 && cfg.extent > 0.0) {
        double max_eps = *std::max_element(cfg.epsilons.begin(), cfg.epsilons.end());
        for (int a = 0; a < cfg.dim; ++a) {
            double margin = 0.5 * cfg.extent - std::abs(cfg.qbar[a]);
            if (margin < 10.0 * max_eps)
                v.problem("[initial].qbar: component " + std::to_string(a) +
                          " leaves margin " + std::to_string(margin) +
                          " to the boundary; need >= 10*epsilon = " +
                          std::to_string(10.0 * max_eps));
        }
    }

    v.check_unknown();

    if (!v.problems.empty()) {
        std::string msg = origin + ": configuration rejected (" +
                          std::to_string(v.problems.size()) + " violation(s)):";
        for (const auto& p : v.problems) msg += "\n  - " + p;
        fail(Error::Kind::config_invalid, msg);
    }
    return cfg;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Error::Kind::io, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig load_config(const std::string& path) {
    return parse_config(read_text_file(path), path);
}

std::string run_identifier(const std::string& config_text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : config_text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

RunSetup RunConfig::single_setup() const {
    if (epsilons.size() != 1)
        fail(Error::Kind::config_invalid,
             "this command needs exactly one epsilon; the config lists " +
                 std::to_string(epsilons.size()));
    RunSetup s;
    s.grid = SpatialGrid::uniform(dim, points, extent);
    s.mass = mass;
    s.nu = nu;
    s.epsilon = epsilons[0];
    s.potential = potential;
    s.qbar = qbar;
    s.pbar = pbar;
    s.perturbation = perturbation;
    s.headroom_bound = headroom_bound;
    s.eta_equals_epsilon = eta_equals_epsilon;
    s.eta_value = eta_value;
    s.evolution.dt = dt;
    s.evolution.horizon = horizon;
    s.evolution.sample_stride = sample_stride;
    s.evolution.checkpoint_stride = checkpoint_stride;
    return s;
}

SweepPlan RunConfig::sweep_plan() const {
    SweepPlan p;
    p.epsilons = epsilons;
    p.dim = dim;
    p.extent = extent;
    p.base_points = points;
    p.mass = mass;
    p.nu = nu;
    p.potential = potential;
    p.qbar = qbar;
    p.pbar = pbar;
    p.perturbation = perturbation;
    p.headroom_bound = headroom_bound;
    p.eta_equals_epsilon = eta_equals_epsilon;
    p.eta_value = eta_value;
    p.dt = dt;
    p.horizon = horizon;
    p.sample_stride = sample_stride;
    return p;
}

}  // namespace soldyn::io
