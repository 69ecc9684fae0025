#include "braggsim/cli.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>

namespace braggsim {

using nlohmann::json;

namespace {

const std::set<std::string> known_keys = {
    "n", "omega0", "gamma", "gamma_f", "shifts", "shift_pattern", "positions",
    "spacing", "span", "grid", "threshold", "gf_span", "gf_grid", "shift_atoms",
    "d1_span", "d1_grid", "d2_span", "d2_grid", "delta_span", "delta_grid",
    "out", "format"};

double require_number(const json& j, const std::string& key) {
    if (!j.is_number()) throw ValidationError("'" + key + "' must be a number");
    return j.get<double>();
}

int require_int(const json& j, const std::string& key) {
    if (!j.is_number_integer()) throw ValidationError("'" + key + "' must be an integer");
    return j.get<int>();
}

Span require_span(const json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError("'" + key + "' must be [lo, hi]");
    Span s{j[0].get<double>(), j[1].get<double>()};
    if (!(s.hi > s.lo)) throw ValidationError("'" + key + "' must satisfy lo < hi");
    return s;
}

std::vector<double> require_number_array(const json& j, const std::string& key) {
    if (!j.is_array()) throw ValidationError("'" + key + "' must be an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw ValidationError("'" + key + "' must be an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<double> linspace(const Span& s, int npts) {
    if (npts < 2) throw ValidationError("grid must have at least 2 points");
    std::vector<double> g(static_cast<size_t>(npts));
    const double step = (s.hi - s.lo) / (npts - 1);
    for (int k = 0; k < npts; ++k) g[static_cast<size_t>(k)] = s.lo + k * step;
    return g;
}

}  // namespace

std::string RunConfig::regime() const { return scenario.is_bragg() ? "bragg" : "general"; }

RunConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("config must be a JSON object");

    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known_keys.count(it.key()))
            throw ValidationError("unknown config key '" + it.key() + "'");

    RunConfig rc;
    if (!j.contains("n")) throw ValidationError("'n' is required");
    const int n = require_int(j["n"], "n");
    if (n < 1) throw ValidationError("n must be >= 1");

    const double omega0 = j.contains("omega0") ? require_number(j["omega0"], "omega0") : 0.0;
    const double gamma = j.contains("gamma") ? require_number(j["gamma"], "gamma") : 1.0;
    if (!(gamma > 0.0)) throw ValidationError("gamma must be > 0");
    const double gamma_f = j.contains("gamma_f") ? require_number(j["gamma_f"], "gamma_f") : 0.0;
    if (!(gamma_f >= 0.0)) throw ValidationError("gamma_f must be >= 0");

    std::vector<double> shifts(static_cast<size_t>(n), 0.0);
    if (j.contains("shifts") && j.contains("shift_pattern"))
        throw ValidationError("'shifts' and 'shift_pattern' are mutually exclusive");
    if (j.contains("shifts")) {
        shifts = require_number_array(j["shifts"], "shifts");
        if (shifts.size() != static_cast<size_t>(n))
            throw ValidationError("'shifts' must have length n");
    } else if (j.contains("shift_pattern")) {
        const json& p = j["shift_pattern"];
        if (!p.is_object() || !p.contains("type"))
            throw ValidationError("'shift_pattern' must be an object with a 'type'");
        for (auto it = p.begin(); it != p.end(); ++it)
            if (it.key() != "type" && it.key() != "delta")
                throw ValidationError("unknown shift_pattern key '" + it.key() + "'");
        const std::string type = p["type"].get<std::string>();
        const double delta =
            p.contains("delta") ? require_number(p["delta"], "shift_pattern.delta") : 0.0;
        if (type == "equal_difference") {
            for (int i = 0; i < n; ++i) shifts[static_cast<size_t>(i)] = i * delta;
            rc.pattern_delta = delta;
        } else if (type == "single") {
            shifts[0] = delta;
        } else {
            throw ValidationError("shift_pattern.type must be 'equal_difference' or 'single'");
        }
    }

    if (j.contains("positions") && j.contains("spacing"))
        throw ValidationError("'positions' and 'spacing' are mutually exclusive");
    if (j.contains("positions")) {
        auto pos = require_number_array(j["positions"], "positions");
        rc.scenario.positions = std::move(pos);
        rc.scenario.n = n;
        rc.scenario.omega0 = omega0;
        rc.scenario.gamma = gamma;
        rc.scenario.gamma_f = gamma_f;
        rc.scenario.shifts = std::move(shifts);
        rc.scenario.validate();
    } else {
        const double spacing = j.contains("spacing") ? require_number(j["spacing"], "spacing") : 0.5;
        if (!(spacing > 0.0)) throw ValidationError("spacing must be > 0");
        rc.scenario = ArrayConfig::bragg(n, std::move(shifts), gamma, gamma_f, omega0, spacing);
    }

    if (j.contains("span")) rc.span = require_span(j["span"], "span");
    if (j.contains("grid")) rc.grid = require_int(j["grid"], "grid");
    if (rc.grid < 2) throw ValidationError("grid must be >= 2");
    if (j.contains("threshold")) rc.threshold = require_number(j["threshold"], "threshold");
    if (!(rc.threshold > 0.0 && rc.threshold <= 1.0))
        throw ValidationError("threshold must be in (0, 1]");

    if (j.contains("gf_span")) rc.gf_span = require_span(j["gf_span"], "gf_span");
    if (!(rc.gf_span.lo >= 0.0)) throw ValidationError("gf_span must be nonnegative");
    if (j.contains("gf_grid")) rc.gf_grid = require_int(j["gf_grid"], "gf_grid");
    if (rc.gf_grid < 2) throw ValidationError("gf_grid must be >= 2");

    if (j.contains("shift_atoms")) {
        const json& a = j["shift_atoms"];
        if (!a.is_array() || a.size() != 2)
            throw ValidationError("'shift_atoms' must be [i, j] (1-based)");
        const int ia = require_int(a[0], "shift_atoms[0]");
        const int ib = require_int(a[1], "shift_atoms[1]");
        if (ia < 1 || ia > n || ib < 1 || ib > n || ia == ib)
            throw ValidationError("'shift_atoms' must be two distinct atoms in [1, n]");
        rc.shift_atoms = {ia - 1, ib - 1};
    }
    if (j.contains("d1_span")) rc.d1_span = require_span(j["d1_span"], "d1_span");
    if (j.contains("d1_grid")) rc.d1_grid = require_int(j["d1_grid"], "d1_grid");
    if (j.contains("d2_span")) rc.d2_span = require_span(j["d2_span"], "d2_span");
    if (j.contains("d2_grid")) rc.d2_grid = require_int(j["d2_grid"], "d2_grid");
    if (rc.d1_grid < 2 || rc.d2_grid < 2) throw ValidationError("decay-map grids must be >= 2");

    if (j.contains("delta_span")) rc.delta_span = require_span(j["delta_span"], "delta_span");
    if (j.contains("delta_grid")) rc.delta_grid = require_int(j["delta_grid"], "delta_grid");
    if (rc.delta_grid < 2) throw ValidationError("delta_grid must be >= 2");

    if (j.contains("out")) rc.out = j["out"].get<std::string>();
    if (j.contains("format")) rc.format = j["format"].get<std::string>();
    if (rc.format != "csv" && rc.format != "json")
        throw ValidationError("format must be 'csv' or 'json'");
    return rc;
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open config: " + path.string());
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return parse_config_text(text);
}

std::string run_config_to_json(const RunConfig& rc) {
    json j;
    j["n"] = rc.scenario.n;
    j["omega0"] = rc.scenario.omega0;
    j["gamma"] = rc.scenario.gamma;
    j["gamma_f"] = rc.scenario.gamma_f;
    j["shifts"] = rc.scenario.shifts;
    j["positions"] = rc.scenario.positions;
    j["span"] = {rc.span.lo, rc.span.hi};
    j["grid"] = rc.grid;
    j["threshold"] = rc.threshold;
    j["gf_span"] = {rc.gf_span.lo, rc.gf_span.hi};
    j["gf_grid"] = rc.gf_grid;
    j["shift_atoms"] = {rc.shift_atoms.first + 1, rc.shift_atoms.second + 1};
    j["d1_span"] = {rc.d1_span.lo, rc.d1_span.hi};
    j["d1_grid"] = rc.d1_grid;
    j["d2_span"] = {rc.d2_span.lo, rc.d2_span.hi};
    j["d2_grid"] = rc.d2_grid;
    j["delta_span"] = {rc.delta_span.lo, rc.delta_span.hi};
    j["delta_grid"] = rc.delta_grid;
    j["out"] = rc.out;
    j["format"] = rc.format;
    return j.dump(2) + "\n";
}

namespace {

void write_tables(const RunConfig& rc, const std::string& command, const Table& main,
                  const Table* features) {
    const OutputMeta meta{command, rc.regime()};
    if (meta.regime == "general") {
        bool any_shift = false;
        for (double s : rc.scenario.shifts) any_shift |= s != 0.0;
        if (any_shift)
            std::cerr << "note: non-Bragg spacing combined with nonzero shifts; "
                         "results are outside the validated regime\n";
    }
    const std::filesystem::path out(rc.out);
    if (rc.format == "csv") {
        write_csv(main, out);
        if (features) write_csv(*features, features_path(out));
    } else {
        write_json(main, meta, out);
        if (features) write_json(*features, meta, features_path(out));
    }
}

Table spectrum_table(const SweepResult& sweep) {
    Table t;
    t.header = {"delta_probe", "re_t", "im_t", "re_r", "im_r", "T", "R", "eta"};
    for (size_t k = 0; k < sweep.points.size(); ++k) {
        const ScatteringResult& s = sweep.points[k];
        t.add_row({sweep.grid[k], s.t.real(), s.t.imag(), s.r.real(), s.r.imag(),
                   s.transmission, s.reflection, s.eta});
    }
    return t;
}

Table spectrum_features(const SweepResult& sweep) {
    Table t;
    t.header = {"kind", "delta_probe", "value"};
    for (const auto& w : sweep.windows)
        t.add_row({std::string("window"), w.delta_probe, w.transmission});
    for (const auto& p : sweep.absorption_peaks)
        t.add_row({std::string("absorption_peak"), p.delta_probe, p.eta});
    return t;
}

void run_spectrum(const RunConfig& rc, const std::string& command, const ArrayConfig& scenario) {
    SweepResult sweep = sweep_spectrum(scenario, rc.span.lo, rc.span.hi, rc.grid);
    find_transparency_windows(sweep, rc.threshold);
    find_absorption_peaks(sweep);
    const Table main = spectrum_table(sweep);
    const Table features = spectrum_features(sweep);
    write_tables(rc, command, main, &features);
}

void run_eigs(const RunConfig& rc) {
    const Eigensystem es = solve_modes(rc.scenario);
    Table t;
    t.header = {"index", "class", "re_E", "im_E", "decay",
                "re_xi", "im_xi", "re_xi_tilde", "im_xi_tilde"};
    for (size_t k = 0; k < es.modes.size(); ++k) {
        const EigenMode& m = es.modes[k];
        t.add_row({double(k), std::string(to_string(m.cls)), m.energy.real(),
                   m.energy.imag(), m.decay(), m.xi.real(), m.xi.imag(),
                   m.xi_tilde.real(), m.xi_tilde.imag()});
    }
    write_tables(rc, "eigs", t, nullptr);
}

void run_absorption(const RunConfig& rc) {
    const CiaScan scan = cia_operating_points(rc.scenario, linspace(rc.gf_span, rc.gf_grid));
    Table t;
    t.header = {"gamma_f", "eta_max", "delta_peak"};
    for (const CiaPoint& p : scan.points) t.add_row({p.gamma_f, p.eta_max, p.delta_peak});
    Table features;
    features.header = {"kind", "gamma_f", "eta_max", "delta_peak"};
    for (const CiaPoint& p : scan.stationary)
        features.add_row({std::string("stationary"), p.gamma_f, p.eta_max, p.delta_peak});
    write_tables(rc, "absorption", t, &features);
}

void run_extrema(const RunConfig& rc) {
    if (rc.scenario.n != 2)
        throw ValidationError("extrema command requires a two-atom scenario");
    const double delta = rc.scenario.shifts[0] - rc.scenario.shifts[1];
    const double gamma = rc.scenario.gamma;
    const AbsorptionExtrema ex = absorption_extrema(gamma, delta);
    Table t;
    t.header = {"case", "gamma_f", "eta"};
    const auto eta = [&](double gf) { return absorption_resonance_two_atom(gamma, gf, delta); };
    t.add_row({std::string("I"), ex.gf_subradiant, eta(ex.gf_subradiant)});
    t.add_row({std::string("II"), ex.gf_minimum, eta(ex.gf_minimum)});
    t.add_row({std::string("III"), ex.gf_superradiant, eta(ex.gf_superradiant)});
    write_tables(rc, "extrema", t, nullptr);
}

void run_decaymap(const RunConfig& rc) {
    const DecayMap map =
        subradiant_decay_map(rc.scenario.n, rc.shift_atoms, linspace(rc.d1_span, rc.d1_grid),
                             linspace(rc.d2_span, rc.d2_grid), rc.scenario.gamma);
    Table t;
    t.header = {"delta1", "delta2", "gamma_mode1", "gamma_mode2"};
    Table features;
    features.header = {"kind", "delta1", "delta2"};
    for (size_t i1 = 0; i1 < map.delta1_grid.size(); ++i1) {
        for (size_t i2 = 0; i2 < map.delta2_grid.size(); ++i2) {
            const size_t k = map.index(i1, i2);
            t.add_row({map.delta1_grid[i1], map.delta2_grid[i2], map.gamma_mode1[k],
                       map.gamma_mode2[k]});
            if (map.ambiguous[k])
                features.add_row({std::string("ambiguous_cell"), map.delta1_grid[i1],
                                  map.delta2_grid[i2]});
        }
    }
    write_tables(rc, "decaymap", t, &features);
}

void run_comb(const RunConfig& rc) {
    if (!rc.pattern_delta)
        throw ValidationError(
            "comb command requires shift_pattern {\"type\": \"equal_difference\", ...}");
    const ArrayConfig cfg = comb_config(rc.scenario.n, *rc.pattern_delta, rc.scenario.gamma,
                                        rc.scenario.gamma_f);
    run_spectrum(rc, "comb", cfg);
}

void run_cia_search(const RunConfig& rc) {
    const ShiftSearchResult res = cia_shift_search(rc.scenario.n, rc.scenario.gamma_f,
                                                   linspace(rc.delta_span, rc.delta_grid));
    Table t;
    t.header = {"delta", "eta_min_peak"};
    for (const auto& [delta, eta] : res.profile) t.add_row({delta, eta});
    Table features;
    features.header = {"kind", "delta", "value"};
    double best = 0.0;
    for (const auto& [delta, eta] : res.profile)
        if (delta == res.delta_star) best = eta;
    features.add_row({std::string("optimum"), res.delta_star, best});
    write_tables(rc, "cia-search", t, &features);
}

}  // namespace

void run_command(const std::string& command, const RunConfig& rc) {
    if (command == "spectrum")
        run_spectrum(rc, "spectrum", rc.scenario);
    else if (command == "eigs")
        run_eigs(rc);
    else if (command == "absorption")
        run_absorption(rc);
    else if (command == "extrema")
        run_extrema(rc);
    else if (command == "decaymap")
        run_decaymap(rc);
    else if (command == "comb")
        run_comb(rc);
    else if (command == "cia-search")
        run_cia_search(rc);
    else
        throw ValidationError("unknown command '" + command + "'");
}

}  // namespace braggsim
