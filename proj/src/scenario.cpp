#include "faraday/scenario.hpp"

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

namespace faraday {

using nlohmann::json;

std::string to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::fig2: return "fig2";
        case ScenarioKind::rotation: return "rotation";
        case ScenarioKind::sweep_b: return "sweep_b";
        case ScenarioKind::cross_mod: return "cross_mod";
        case ScenarioKind::regime_check: return "regime_check";
    }
    return "unknown";
}

ScenarioKind scenario_from_string(const std::string& name) {
    if (name == "fig2") return ScenarioKind::fig2;
    if (name == "rotation") return ScenarioKind::rotation;
    if (name == "sweep_b") return ScenarioKind::sweep_b;
    if (name == "cross_mod") return ScenarioKind::cross_mod;
    if (name == "regime_check") return ScenarioKind::regime_check;
    throw SchemaError("scenario", "unknown scenario '" + name + "'");
}

SystemParams ScenarioConfig::system_gamma_units() const {
    return units == UnitSystem::si ? system.in_gamma_units() : system;
}

TimeGrid ScenarioConfig::grid_gamma_units() const {
    if (units != UnitSystem::si) return grid;
    const double g = system.Gamma();
    return TimeGrid{grid.t_start * g, grid.t_end * g, grid.sample_count};
}

namespace {

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) throw UnknownKey(path.empty() ? it.key() : path + "." + it.key());
    }
}

const json* find(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw SchemaError(path, "expected a number");
    return v.get<double>();
}

double number_or(const json& obj, const std::string& parent, const char* key,
                 double fallback) {
    const json* v = find(obj, key);
    return v ? as_number(*v, parent + "." + key) : fallback;
}

bool bool_or(const json& obj, const std::string& parent, const char* key, bool fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw SchemaError(parent + "." + key, "expected a boolean");
    return v->get<bool>();
}

long integer_at(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
    return v.get<long>();
}

std::vector<double> number_array(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) throw SchemaError(path, "expected a non-empty array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

std::string delta_tag(double delta) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", delta);
    std::string s = buf;
    for (char& c : s)
        if (c == '.') c = 'p';
    return s;
}

json regime_to_json(const RegimeReport& r) {
    auto finite_or_null = [](double v) -> json {
        return std::isfinite(v) ? json(v) : json(nullptr);
    };
    json j{{"eit_lhs", r.eit_lhs},
           {"eit_rhs_1", r.eit_rhs_1},
           {"eit_rhs_2", r.eit_rhs_2},
           {"margin_1", finite_or_null(r.margin_1)},
           {"margin_2", finite_or_null(r.margin_2)},
           {"eit_1_pass", r.eit_1_pass},
           {"eit_2_pass", r.eit_2_pass}};
    if (r.has_medium) {
        j["thin_medium_value"] = finite_or_null(r.thin_medium_value);
        j["thin_medium_pass"] = r.thin_medium_pass;
    } else {
        j["thin_medium_value"] = nullptr;
        j["thin_medium_pass"] = nullptr;
    }
    return j;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("<document>", std::string("invalid JSON: ") + e.what());
    }
    return parse_config_json(doc);
}

ScenarioConfig parse_config_json(const json& doc) {
    if (!doc.is_object()) throw SchemaError("<document>", "expected a JSON object");
    check_keys(doc, "",
               {"scenario", "units", "system", "zeeman", "medium", "grid", "doppler",
                "tolerances", "fig2", "sweep", "cross", "slices", "output_dir", "seed"});

    ScenarioConfig cfg;

    const json* scen = find(doc, "scenario");
    if (!scen) throw SchemaError("scenario", "required field is missing");
    if (!scen->is_string()) throw SchemaError("scenario", "expected a string");
    cfg.scenario = scenario_from_string(scen->get<std::string>());

    if (const json* units = find(doc, "units")) {
        if (!units->is_string()) throw SchemaError("units", "expected a string");
        const std::string u = units->get<std::string>();
        if (u == "gamma_units")
            cfg.units = UnitSystem::gamma_units;
        else if (u == "si")
            cfg.units = UnitSystem::si;
        else
            throw SchemaError("units", "expected 'gamma_units' or 'si'");
    }
    const bool si = cfg.units == UnitSystem::si;

    json system = doc.contains("system") ? doc.at("system") : json::object();
    if (!system.is_object()) throw SchemaError("system", "expected an object");
    check_keys(system, "system",
               {"gamma", "gamma0", "omega_c", "omega_p", "phi1", "phi2", "delta",
                "delta0", "delta_c"});

    double gamma_opt = 1.0;  // Gamma, the optical linewidth, in input units
    if (si) {
        const json* g = find(system, "gamma");
        if (!g) throw UnitError("si units require system.gamma (rad/s)");
        const double gamma_val = as_number(*g, "system.gamma");
        if (!(gamma_val > 0.0)) throw SchemaError("system.gamma", "must be positive");
        cfg.system.gamma = gamma_val;
        gamma_opt = 1.5 * gamma_val;
    } else {
        if (find(system, "gamma"))
            throw UnitError("system.gamma is fixed at 2/3 in gamma_units; use si units");
        cfg.system.gamma = 2.0 / 3.0;
    }

    cfg.system.gamma0 = number_or(system, "system", "gamma0", 1e-4 * gamma_opt);
    cfg.system.omega_c = number_or(system, "system", "omega_c", 1.0 * gamma_opt);
    cfg.system.omega_p = number_or(system, "system", "omega_p", 0.3 * gamma_opt);
    cfg.system.phi1 = number_or(system, "system", "phi1", 0.0);
    cfg.system.phi2 = number_or(system, "system", "phi2", 0.0);

    const json* zeeman = find(doc, "zeeman");
    if (zeeman) {
        if (!si) throw UnitError("zeeman block requires si units");
        if (!zeeman->is_object()) throw SchemaError("zeeman", "expected an object");
        check_keys(*zeeman, "zeeman", {"g_lande", "g0", "m0", "b_field"});
        if (find(system, "delta"))
            throw SchemaError("system.delta", "conflicts with the zeeman block");
        if (find(system, "delta0"))
            throw SchemaError("system.delta0", "conflicts with the zeeman block");
        ZeemanParams z;
        z.g_lande = number_or(*zeeman, "zeeman", "g_lande", 0.5);
        z.g0 = number_or(*zeeman, "zeeman", "g0", 0.5);
        if (const json* m0 = find(*zeeman, "m0"))
            z.m0 = static_cast<int>(integer_at(*m0, "zeeman.m0"));
        z.b_field = number_or(*zeeman, "zeeman", "b_field", 0.0);
        try {
            const ZeemanShifts shifts = zeeman_shifts(z);
            cfg.system.delta = shifts.delta;
            cfg.system.delta0 = shifts.delta0;
        } catch (const std::invalid_argument& e) {
            throw SchemaError("zeeman", e.what());
        }
        cfg.zeeman = z;
    } else {
        cfg.system.delta = number_or(system, "system", "delta", 0.03 * gamma_opt);
        cfg.system.delta0 = number_or(system, "system", "delta0", 0.0);
    }
    cfg.system.delta_c = number_or(system, "system", "delta_c", 0.0);
    // symmetric-mode construction; delta_c above covers the asymmetric case
    cfg.system.delta_1 = +cfg.system.delta;
    cfg.system.delta_2 = -cfg.system.delta;

    if (const json* medium = find(doc, "medium")) {
        if (!medium->is_object()) throw SchemaError("medium", "expected an object");
        check_keys(*medium, "medium",
                   {"number_density", "cell_length", "cross_section", "dipole_moment",
                    "optical_frequency"});
        const json* nd = find(*medium, "number_density");
        const json* cl = find(*medium, "cell_length");
        if (!nd) throw SchemaError("medium.number_density", "required field is missing");
        if (!cl) throw SchemaError("medium.cell_length", "required field is missing");
        const double density = as_number(*nd, "medium.number_density");
        const double length = as_number(*cl, "medium.cell_length");
        const json* sigma = find(*medium, "cross_section");
        const json* dipole = find(*medium, "dipole_moment");
        try {
            if (dipole) {
                if (!si) throw UnitError("dipole-derived cross section requires si units");
                const json* wopt = find(*medium, "optical_frequency");
                if (!wopt)
                    throw SchemaError("medium.optical_frequency",
                                      "required alongside dipole_moment");
                std::optional<double> direct;
                if (sigma) direct = as_number(*sigma, "medium.cross_section");
                cfg.medium = MediumParams::from_dipole(
                    density, length, as_number(*dipole, "medium.dipole_moment"),
                    as_number(*wopt, "medium.optical_frequency"), gamma_opt, direct);
            } else {
                if (!sigma)
                    throw SchemaError("medium.cross_section",
                                      "required (or dipole_moment + optical_frequency)");
                if (find(*medium, "optical_frequency"))
                    throw SchemaError("medium.optical_frequency",
                                      "only valid alongside dipole_moment");
                cfg.medium = MediumParams::from_cross_section(
                    density, length, as_number(*sigma, "medium.cross_section"));
            }
        } catch (const std::invalid_argument& e) {
            throw SchemaError("medium", e.what());
        }
    }

    cfg.grid = TimeGrid{0.0, si ? 400.0 / gamma_opt : 400.0, 4000};
    if (const json* grid = find(doc, "grid")) {
        if (!grid->is_object()) throw SchemaError("grid", "expected an object");
        check_keys(*grid, "grid", {"t_start", "t_end", "samples"});
        cfg.grid.t_start = number_or(*grid, "grid", "t_start", cfg.grid.t_start);
        cfg.grid.t_end = number_or(*grid, "grid", "t_end", cfg.grid.t_end);
        if (const json* s = find(*grid, "samples"))
            cfg.grid.sample_count = static_cast<int>(integer_at(*s, "grid.samples"));
        try {
            cfg.grid.validate();
        } catch (const std::invalid_argument& e) {
            throw SchemaError("grid", e.what());
        }
    }

    if (const json* dop = find(doc, "doppler")) {
        if (!dop->is_object()) throw SchemaError("doppler", "expected an object");
        check_keys(*dop, "doppler", {"enabled", "width", "points"});
        cfg.doppler.enabled = bool_or(*dop, "doppler", "enabled", false);
        cfg.doppler.width = number_or(*dop, "doppler", "width", 0.0);
        if (const json* pts = find(*dop, "points"))
            cfg.doppler.quadrature_points =
                static_cast<int>(integer_at(*pts, "doppler.points"));
        try {
            cfg.doppler.validate();
        } catch (const std::invalid_argument& e) {
            throw SchemaError("doppler", e.what());
        }
    }
    cfg.system.doppler_width = cfg.doppler.active() ? cfg.doppler.width : 0.0;

    if (const json* tol = find(doc, "tolerances")) {
        if (!tol->is_object()) throw SchemaError("tolerances", "expected an object");
        check_keys(*tol, "tolerances", {"rel", "abs"});
        cfg.rel_tol = number_or(*tol, "tolerances", "rel", cfg.rel_tol);
        cfg.abs_tol = number_or(*tol, "tolerances", "abs", cfg.abs_tol);
    }

    if (const json* fig2 = find(doc, "fig2")) {
        if (cfg.scenario != ScenarioKind::fig2)
            throw SchemaError("fig2", "block is only valid for scenario 'fig2'");
        if (!fig2->is_object()) throw SchemaError("fig2", "expected an object");
        check_keys(*fig2, "fig2", {"deltas", "asymmetric", "asymmetric_delta"});
        if (const json* d = find(*fig2, "deltas"))
            cfg.fig2_deltas = number_array(*d, "fig2.deltas");
        cfg.fig2_asymmetric = bool_or(*fig2, "fig2", "asymmetric", cfg.fig2_asymmetric);
        cfg.fig2_asymmetric_delta = number_or(*fig2, "fig2", "asymmetric_delta",
                                              si ? 0.03 * gamma_opt : 0.03);
    } else if (si) {
        for (double& d : cfg.fig2_deltas) d *= gamma_opt;
        cfg.fig2_asymmetric_delta *= gamma_opt;
    }

    if (const json* sweep = find(doc, "sweep")) {
        if (cfg.scenario != ScenarioKind::sweep_b)
            throw SchemaError("sweep", "block is only valid for scenario 'sweep_b'");
        if (!sweep->is_object()) throw SchemaError("sweep", "expected an object");
        check_keys(*sweep, "sweep", {"deltas"});
        if (const json* d = find(*sweep, "deltas"))
            cfg.sweep_deltas = number_array(*d, "sweep.deltas");
    } else if (si) {
        for (double& d : cfg.sweep_deltas) d *= gamma_opt;
    }

    if (const json* cross = find(doc, "cross")) {
        if (cfg.scenario != ScenarioKind::cross_mod)
            throw SchemaError("cross", "block is only valid for scenario 'cross_mod'");
        if (!cross->is_object()) throw SchemaError("cross", "expected an object");
        check_keys(*cross, "cross", {"omega2_sq", "omega2_sq_values"});
        cfg.cross_omega2_sq = number_or(*cross, "cross", "omega2_sq",
                                        si ? 0.09 * gamma_opt * gamma_opt : 0.09);
        if (const json* v = find(*cross, "omega2_sq_values"))
            cfg.cross_omega2_sq_values = number_array(*v, "cross.omega2_sq_values");
        else if (si)
            for (double& w : cfg.cross_omega2_sq_values) w *= gamma_opt * gamma_opt;
    } else if (si) {
        cfg.cross_omega2_sq *= gamma_opt * gamma_opt;
        for (double& w : cfg.cross_omega2_sq_values) w *= gamma_opt * gamma_opt;
    }

    if (const json* slices = find(doc, "slices")) {
        if (cfg.scenario != ScenarioKind::rotation)
            throw SchemaError("slices", "only valid for scenario 'rotation'");
        cfg.n_slices = static_cast<int>(integer_at(*slices, "slices"));
        if (cfg.n_slices < 1) throw SchemaError("slices", "must be at least 1");
    }

    if (const json* out = find(doc, "output_dir")) {
        if (!out->is_string()) throw SchemaError("output_dir", "expected a string");
        cfg.output_dir = out->get<std::string>();
    }
    if (const json* seed = find(doc, "seed")) cfg.seed = integer_at(*seed, "seed");

    const bool needs_medium = cfg.scenario == ScenarioKind::rotation ||
                              cfg.scenario == ScenarioKind::cross_mod ||
                              cfg.scenario == ScenarioKind::regime_check;
    if (needs_medium && !cfg.medium)
        throw SchemaError("medium",
                          "required for scenario '" + to_string(cfg.scenario) + "'");

    try {
        cfg.system.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError("system", e.what());
    }
    return cfg;
}

void apply_overrides(json& doc, const std::map<std::string, std::string>& overrides) {
    for (const auto& [path, value] : overrides) {
        json* node = &doc;
        std::size_t begin = 0;
        while (true) {
            const std::size_t dot = path.find('.', begin);
            const std::string key = path.substr(begin, dot - begin);
            if (key.empty()) throw SchemaError(path, "empty key segment in override");
            if (dot == std::string::npos) {
                json parsed;
                try {
                    parsed = json::parse(value);
                } catch (const json::parse_error&) {
                    parsed = value;  // bare strings stay strings
                }
                (*node)[key] = parsed;
                break;
            }
            node = &(*node)[key];
            if (!node->is_object() && !node->is_null())
                throw SchemaError(path, "override path crosses a non-object value");
            begin = dot + 1;
        }
    }
}

json resolved_config_json(const ScenarioConfig& cfg) {
    const bool si = cfg.units == UnitSystem::si;
    json system{{"gamma0", cfg.system.gamma0}, {"omega_c", cfg.system.omega_c},
                {"omega_p", cfg.system.omega_p}, {"phi1", cfg.system.phi1},
                {"phi2", cfg.system.phi2},       {"delta_c", cfg.system.delta_c}};
    if (si) system["gamma"] = cfg.system.gamma;
    if (!cfg.zeeman) {
        system["delta"] = cfg.system.delta;
        system["delta0"] = cfg.system.delta0;
    }

    json doc{{"scenario", to_string(cfg.scenario)},
             {"units", si ? "si" : "gamma_units"},
             {"system", system},
             {"grid",
              {{"t_start", cfg.grid.t_start},
               {"t_end", cfg.grid.t_end},
               {"samples", cfg.grid.sample_count}}},
             {"doppler",
              {{"enabled", cfg.doppler.enabled},
               {"width", cfg.doppler.width},
               {"points", cfg.doppler.quadrature_points}}},
             {"tolerances", {{"rel", cfg.rel_tol}, {"abs", cfg.abs_tol}}},
             {"output_dir", cfg.output_dir}};

    if (cfg.zeeman)
        doc["zeeman"] = {{"g_lande", cfg.zeeman->g_lande},
                         {"g0", cfg.zeeman->g0},
                         {"m0", cfg.zeeman->m0},
                         {"b_field", cfg.zeeman->b_field}};
    if (cfg.medium)
        doc["medium"] = {{"number_density", cfg.medium->number_density},
                         {"cell_length", cfg.medium->cell_length},
                         {"cross_section", cfg.medium->cross_section}};

    switch (cfg.scenario) {
        case ScenarioKind::fig2:
            doc["fig2"] = {{"deltas", cfg.fig2_deltas},
                           {"asymmetric", cfg.fig2_asymmetric},
                           {"asymmetric_delta", cfg.fig2_asymmetric_delta}};
            break;
        case ScenarioKind::sweep_b:
            doc["sweep"] = {{"deltas", cfg.sweep_deltas}};
            break;
        case ScenarioKind::cross_mod:
            doc["cross"] = {{"omega2_sq", cfg.cross_omega2_sq},
                            {"omega2_sq_values", cfg.cross_omega2_sq_values}};
            break;
        case ScenarioKind::rotation:
            doc["slices"] = cfg.n_slices;
            break;
        case ScenarioKind::regime_check:
            break;
    }
    if (cfg.seed) doc["seed"] = *cfg.seed;
    return doc;
}

std::string config_hash(const json& resolved) {
    const std::string text = resolved.dump();
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, hash);
    return buf;
}

void write_series(const std::string& path,
                  const std::vector<std::pair<std::string, std::vector<double>>>& columns) {
    if (columns.empty()) throw LengthMismatch("series needs at least one column");
    const std::size_t rows = columns.front().second.size();
    if (rows == 0) throw LengthMismatch("series needs at least one row");
    for (const auto& [name, data] : columns)
        if (data.size() != rows)
            throw LengthMismatch("column '" + name + "' length differs");

    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open '" + path + "' for writing");

    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) file << ',';
        file << columns[c].first;
    }
    file << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) file << ',';
            file << format_double(columns[c].second[r]);
        }
        file << '\n';
    }
    file.flush();
    if (!file) throw IoError("failed writing '" + path + "'");
}

namespace {

struct Fig2Case {
    double delta = 0.0;
    double delta_c = 0.0;
    double delta0 = 0.0;
    std::string tag;
};

/// Zeeman-coherence series of one numeric run, Doppler-averaged when active.
/// A common shift is added to all three detunings per velocity class.
std::vector<Complex> numeric_rho21_series(const SystemParams& p, const TimeGrid& grid,
                                          const DopplerConfig& doppler, double rel_tol,
                                          double abs_tol) {
    auto run_at_shift = [&](double shift) {
        SystemParams ps = p;
        ps.delta_1 += shift;
        ps.delta_2 += shift;
        ps.delta_c += shift;
        const Superoperator op = build_liouvillian(ps);
        return evolve(DensityMatrix::equal_zeeman_mixture(), op, grid, rel_tol, abs_tol)
            .rho21_series();
    };
    return doppler_average(run_at_shift, doppler);
}

struct FitRow {
    double delta;
    double delta_c;
    OscillationFit fit;
    double freq_pred;
    double damping_pred;
    double start_paper;
    double time_avg;
};

FitRow fit_case(const SystemParams& p, const TimeGrid& grid,
                const std::vector<Complex>& series) {
    std::vector<double> t_all(grid.sample_count), re_all(grid.sample_count);
    for (int k = 0; k < grid.sample_count; ++k) {
        t_all[k] = grid.time(k);
        re_all[k] = series[k].real();
    }
    std::vector<double> tw, yw;
    for (int k = 0; k < grid.sample_count; ++k) {
        if (t_all[k] < kFitWindowStart) continue;
        tw.push_back(t_all[k]);
        yw.push_back(re_all[k]);
    }

    FitRow row;
    row.delta = p.delta;
    row.delta_c = p.delta_c;
    row.fit = fit_oscillation(tw, yw);
    row.freq_pred = 2.0 * std::abs(p.delta);
    row.damping_pred = damping_rate(p);
    row.start_paper = beat_start_value(p);
    double acc = 0.0;
    for (double v : yw) acc += v;
    row.time_avg = yw.empty() ? 0.0 : acc / static_cast<double>(yw.size());
    return row;
}

void run_fig2(const ScenarioConfig& cfg, RunManifest& man) {
    const SystemParams base = cfg.system_gamma_units();
    const TimeGrid grid = cfg.grid_gamma_units();
    const bool si = cfg.units == UnitSystem::si;
    const double gamma_opt = cfg.system.Gamma();  // input-unit linewidth
    const double t_out_scale = si ? 1.0 / gamma_opt : 1.0;
    const double rate_out_scale = si ? gamma_opt : 1.0;

    DopplerConfig doppler = cfg.doppler;
    if (si) doppler.width /= gamma_opt;

    std::vector<Fig2Case> cases;
    for (double d : cfg.fig2_deltas) {
        const double dg = si ? d / gamma_opt : d;
        cases.push_back({dg, 0.0, 0.0, "delta_" + delta_tag(d)});
    }
    if (cfg.fig2_asymmetric) {
        const double d = cfg.fig2_asymmetric_delta;
        const double dg = si ? d / gamma_opt : d;
        cases.push_back({dg, dg, dg, "delta_" + delta_tag(d) + "_asymmetric"});
    }

    std::vector<double> col_delta, col_delta_c, col_freq, col_freq_pred, col_damp,
        col_damp_pred, col_amp, col_offset, col_phase, col_start, col_start_paper,
        col_resid, col_ident, col_timeavg;

    for (const Fig2Case& kase : cases) {
        SystemParams p = SystemParams::symmetric(base.omega_c, base.omega_p, base.gamma0,
                                                 kase.delta, base.gamma);
        p.phi1 = base.phi1;
        p.phi2 = base.phi2;
        p.delta_c = kase.delta_c;
        p.delta0 = kase.delta0;
        p.doppler_width = base.doppler_width;

        const std::vector<Complex> numeric =
            numeric_rho21_series(p, grid, doppler, cfg.rel_tol, cfg.abs_tol);

        std::vector<double> t(grid.sample_count), re_num(grid.sample_count),
            im_num(grid.sample_count), re_ana(grid.sample_count), im_ana(grid.sample_count);
        for (int k = 0; k < grid.sample_count; ++k) {
            const double tg = grid.time(k);
            t[k] = tg * t_out_scale;
            re_num[k] = numeric[k].real();
            im_num[k] = numeric[k].imag();
            const Complex ana = rho21_analytic(p, tg);
            re_ana[k] = ana.real();
            im_ana[k] = ana.imag();
        }

        const std::string file = "fig2_" + kase.tag + ".csv";
        write_series(cfg.output_dir + "/" + file,
                     {{"t", t},
                      {"re_rho21_num", re_num},
                      {"im_rho21_num", im_num},
                      {"re_rho21_ana", re_ana},
                      {"im_rho21_ana", im_ana}});
        man.outputs.push_back(file);

        const FitRow row = fit_case(p, grid, numeric);
        col_delta.push_back(row.delta * rate_out_scale);
        col_delta_c.push_back(row.delta_c * rate_out_scale);
        col_freq.push_back(row.fit.frequency * rate_out_scale);
        col_freq_pred.push_back(row.freq_pred * rate_out_scale);
        col_damp.push_back(row.fit.damping * rate_out_scale);
        col_damp_pred.push_back(row.damping_pred * rate_out_scale);
        col_amp.push_back(row.fit.amplitude);
        col_offset.push_back(row.fit.offset);
        col_phase.push_back(row.fit.phase);
        col_start.push_back(row.fit.frequency_identifiable ? row.fit.start_value()
                                                           : row.time_avg);
        col_start_paper.push_back(row.start_paper);
        col_resid.push_back(row.fit.residual_rms);
        col_ident.push_back(row.fit.frequency_identifiable ? 1.0 : 0.0);
        col_timeavg.push_back(row.time_avg);
    }

    write_series(cfg.output_dir + "/fig2_fits.csv",
                 {{"delta", col_delta},
                  {"delta_c", col_delta_c},
                  {"freq_fit", col_freq},
                  {"freq_2delta", col_freq_pred},
                  {"damping_fit", col_damp},
                  {"damping_eq9", col_damp_pred},
                  {"amplitude", col_amp},
                  {"offset", col_offset},
                  {"phase", col_phase},
                  {"start_value", col_start},
                  {"start_paper", col_start_paper},
                  {"residual_rms", col_resid},
                  {"freq_identifiable", col_ident},
                  {"time_avg", col_timeavg}});
    man.outputs.push_back("fig2_fits.csv");
}

void run_rotation(const ScenarioConfig& cfg, RunManifest& man) {
    const SystemParams& p = cfg.system;
    const MediumParams& m = *cfg.medium;

    std::vector<double> t(cfg.grid.sample_count), phi_thin(cfg.grid.sample_count);
    bool thin_ok = true;
    for (int k = 0; k < cfg.grid.sample_count; ++k) {
        t[k] = cfg.grid.time(k);
        const ThinRotation r = rotation_angle_thin(p, m, t[k]);
        phi_thin[k] = r.phi;
        thin_ok = r.thin_medium_ok;
    }

    const ProbeObservables sliced = propagate_z_sliced(p, m, cfg.grid, cfg.n_slices);

    write_series(cfg.output_dir + "/rotation.csv",
                 {{"t", t},
                  {"phi_thin", phi_thin},
                  {"phi_sliced", sliced.phi},
                  {"power_ratio", sliced.power_ratio}});
    man.outputs.push_back("rotation.csv");

    const double v_g = group_velocity(p, m);
    man.derived = {{"eta", sliced.eta},
                   {"group_velocity", v_g},
                   {"transit_time", m.cell_length / v_g},
                   {"damping_rate", damping_rate(p)},
                   {"thin_medium_ok", thin_ok},
                   {"n_slices", cfg.n_slices}};
}

void run_sweep_b(const ScenarioConfig& cfg, RunManifest& man) {
    const SystemParams base = cfg.system_gamma_units();
    const TimeGrid grid = cfg.grid_gamma_units();
    const bool si = cfg.units == UnitSystem::si;
    const double gamma_opt = cfg.system.Gamma();
    const double rate_out_scale = si ? gamma_opt : 1.0;

    DopplerConfig doppler = cfg.doppler;
    if (si) doppler.width /= gamma_opt;

    std::vector<double> col_delta, col_b, col_freq, col_freq_pred, col_damp,
        col_damp_pred, col_amp, col_start, col_resid;

    for (double delta_in : cfg.sweep_deltas) {
        const double dg = si ? delta_in / gamma_opt : delta_in;
        SystemParams p = SystemParams::symmetric(base.omega_c, base.omega_p, base.gamma0,
                                                 dg, base.gamma);
        p.phi1 = base.phi1;
        p.phi2 = base.phi2;
        p.doppler_width = base.doppler_width;

        const std::vector<Complex> numeric =
            numeric_rho21_series(p, grid, doppler, cfg.rel_tol, cfg.abs_tol);
        const FitRow row = fit_case(p, grid, numeric);

        col_delta.push_back(delta_in);
        if (cfg.zeeman)
            col_b.push_back(delta_in * rate_out_scale /
                            (cfg.zeeman->g_lande * constants::kMuBOverHbar));
        col_freq.push_back(row.fit.frequency * rate_out_scale);
        col_freq_pred.push_back(row.freq_pred * rate_out_scale);
        col_damp.push_back(row.fit.damping * rate_out_scale);
        col_damp_pred.push_back(row.damping_pred * rate_out_scale);
        col_amp.push_back(row.fit.amplitude);
        col_start.push_back(row.fit.start_value());
        col_resid.push_back(row.fit.residual_rms);
    }

    std::vector<std::pair<std::string, std::vector<double>>> columns;
    columns.emplace_back("delta", col_delta);
    if (cfg.zeeman) columns.emplace_back("b_field", col_b);
    columns.emplace_back("freq_fit", col_freq);
    columns.emplace_back("freq_2delta", col_freq_pred);
    columns.emplace_back("damping_fit", col_damp);
    columns.emplace_back("damping_eq9", col_damp_pred);
    columns.emplace_back("amplitude", col_amp);
    columns.emplace_back("start_value", col_start);
    columns.emplace_back("residual_rms", col_resid);
    write_series(cfg.output_dir + "/sweep_b.csv", columns);
    man.outputs.push_back("sweep_b.csv");
}

void run_cross_mod(const ScenarioConfig& cfg, RunManifest& man) {
    const SystemParams& p = cfg.system;
    const MediumParams& m = *cfg.medium;

    std::vector<double> t(cfg.grid.sample_count), shift(cfg.grid.sample_count);
    for (int k = 0; k < cfg.grid.sample_count; ++k) {
        t[k] = cfg.grid.time(k);
        shift[k] = cross_modulation_phase(p, m, cfg.cross_omega2_sq, t[k]);
    }
    write_series(cfg.output_dir + "/cross_mod_time.csv",
                 {{"t", t}, {"phase_shift", shift}});
    man.outputs.push_back("cross_mod_time.csv");

    std::vector<double> w2 = cfg.cross_omega2_sq_values;
    std::vector<double> amp(w2.size());
    for (std::size_t i = 0; i < w2.size(); ++i)
        amp[i] = std::abs(cross_modulation_phase(p, m, w2[i], 0.0));
    write_series(cfg.output_dir + "/cross_mod_intensity.csv",
                 {{"omega2_sq", w2}, {"phase_amplitude", amp}});
    man.outputs.push_back("cross_mod_intensity.csv");

    man.derived = {{"omega2_sq", cfg.cross_omega2_sq},
                   {"damping_rate", damping_rate(p)},
                   {"beat_frequency", 2.0 * std::abs(p.delta)}};
}

}  // namespace

json RunManifest::to_json() const {
    json j{{"tool", {{"name", tool_name}, {"version", tool_version}}},
           {"config_hash", config_hash},
           {"resolved_config", resolved_config},
           {"regime", regime_to_json(regime)},
           {"timing_seconds", timing_seconds},
           {"outputs", outputs}};
    if (!derived.is_null()) j["derived"] = derived;
    return j;
}

RunManifest run_scenario(const ScenarioConfig& cfg) {
    const auto wall_start = std::chrono::steady_clock::now();

    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + cfg.output_dir + "'");

    RunManifest man;
    man.tool_name = kToolName;
    man.tool_version = kToolVersion;
    man.resolved_config = resolved_config_json(cfg);
    man.config_hash = faraday::config_hash(man.resolved_config);
    man.regime = cfg.medium ? check_regime(cfg.system, *cfg.medium)
                            : check_regime_eit_only(cfg.system);

    if (cfg.strict && !man.regime.all_pass())
        throw RegimeViolation("regime conditions violated in strict mode");

    switch (cfg.scenario) {
        case ScenarioKind::fig2: run_fig2(cfg, man); break;
        case ScenarioKind::rotation: run_rotation(cfg, man); break;
        case ScenarioKind::sweep_b: run_sweep_b(cfg, man); break;
        case ScenarioKind::cross_mod: run_cross_mod(cfg, man); break;
        case ScenarioKind::regime_check: break;  // report only
    }

    man.timing_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start)
            .count();

    std::ofstream out(cfg.output_dir + "/manifest.json", std::ios::binary);
    if (!out) throw IoError("cannot write manifest.json");
    out << man.to_json().dump(2) << '\n';
    return man;
}

}  // namespace faraday
