// Copyright 2026 The geothermo Authors
// SPDX-License-Identifier: Apache-2.0

// experiments.hpp: Free-energy sweeps for the oscillator and spin ensemble,
// the Rabi Otto-engine sweep, and the seeded identity / bound suites, with
// CSV and JSON writers. The geothermo CLI is a thin layer over this header.

#pragma once

#include "geothermo/engine.hpp"
#include "geothermo/models.hpp"
#include "geothermo/serialize.hpp"
#include "geothermo/thermo.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace geothermo {

enum class Experiment { Fig1a, Fig1b, Fig2, Identities, Bounds };
enum class OutputFormat { Csv, Json };

inline std::string_view to_string(Experiment e) noexcept {
    switch (e) {
        case Experiment::Fig1a: return "fig1a";
        case Experiment::Fig1b: return "fig1b";
        case Experiment::Fig2: return "fig2";
        case Experiment::Identities: return "identities";
        case Experiment::Bounds: return "bounds";
    }
    return "unknown";
}

struct ExperimentConfig {
    Experiment experiment{Experiment::Fig1a};

    // Models. Temperatures are in units of omega.
    double omega{1.0};
    std::uint64_t n_levels{100};
    std::uint64_t n_spins{25};
    std::uint64_t n_boson{30};

    // Free-energy sweep
    double t_initial{0.1};
    double t_final_min{0.1};
    double t_final_max{3.0};
    std::uint64_t t_final_points{59};
    double g_const{kDefaultGConst};

    // Otto engine sweep
    double t_cold{0.05};
    std::vector<double> t_hot{0.2, 0.25};
    double omega_ratio{2.0};
    double epsilon_ratio{0.005};
    double coupling_min{0.0};
    double coupling_max{1.5};
    std::uint64_t coupling_points{61};
    bool coupling_scales_with_omega{true};

    // Randomized checks
    std::optional<std::uint64_t> seed;
    std::uint64_t sweep_size{1000};
    std::uint64_t max_dim{64};
    double t_min{0.01};
    double t_max{100.0};

    std::string out_path;  // empty: stdout
    OutputFormat format{OutputFormat::Csv};
};

// ------------------------------ Configuration --------------------------------

namespace detail {

template <class T>
void read_key(const json& j, const char* key, T& into) {
    if (!j.contains(key)) return;
    try {
        into = j.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(ErrorKind::ConfigError, std::string("bad value for '") + key + "': " + e.what());
    }
}

inline void config_check(bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::ConfigError, what);
}

} // namespace detail

// Keys mirror the ExperimentConfig field names; unknown keys are rejected.
inline void apply_json(ExperimentConfig& c, const json& j) {
    static const std::vector<std::string> known = {
        "omega", "n_levels", "n_spins", "n_boson", "t_initial", "t_final_min", "t_final_max", "t_final_points",
        "g_const", "t_cold", "t_hot", "omega_ratio", "epsilon_ratio", "coupling_min", "coupling_max",
        "coupling_points", "coupling_scales_with_omega", "seed", "sweep_size", "max_dim", "t_min", "t_max",
        "out", "format"};
    if (!j.is_object()) fail(ErrorKind::ConfigError, "config must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            fail(ErrorKind::ConfigError, "unknown config key '" + key + "'");
        }
    }
    detail::read_key(j, "omega", c.omega);
    detail::read_key(j, "n_levels", c.n_levels);
    detail::read_key(j, "n_spins", c.n_spins);
    detail::read_key(j, "n_boson", c.n_boson);
    detail::read_key(j, "t_initial", c.t_initial);
    detail::read_key(j, "t_final_min", c.t_final_min);
    detail::read_key(j, "t_final_max", c.t_final_max);
    detail::read_key(j, "t_final_points", c.t_final_points);
    detail::read_key(j, "g_const", c.g_const);
    detail::read_key(j, "t_cold", c.t_cold);
    detail::read_key(j, "t_hot", c.t_hot);
    detail::read_key(j, "omega_ratio", c.omega_ratio);
    detail::read_key(j, "epsilon_ratio", c.epsilon_ratio);
    detail::read_key(j, "coupling_min", c.coupling_min);
    detail::read_key(j, "coupling_max", c.coupling_max);
    detail::read_key(j, "coupling_points", c.coupling_points);
    detail::read_key(j, "coupling_scales_with_omega", c.coupling_scales_with_omega);
    if (j.contains("seed")) {
        std::uint64_t s = 0;
        detail::read_key(j, "seed", s);
        c.seed = s;
    }
    detail::read_key(j, "sweep_size", c.sweep_size);
    detail::read_key(j, "max_dim", c.max_dim);
    detail::read_key(j, "t_min", c.t_min);
    detail::read_key(j, "t_max", c.t_max);
    detail::read_key(j, "out", c.out_path);
    if (j.contains("format")) {
        std::string f;
        detail::read_key(j, "format", f);
        if (f == "csv") {
            c.format = OutputFormat::Csv;
        } else if (f == "json") {
            c.format = OutputFormat::Json;
        } else {
            fail(ErrorKind::ConfigError, "format must be csv or json");
        }
    }
}

inline void load_config_file(ExperimentConfig& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ConfigError, "cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(ErrorKind::ConfigError, std::string("config is not valid JSON: ") + e.what());
    }
    apply_json(c, j);
}

inline void validate_config(const ExperimentConfig& c) {
    using detail::config_check;
    config_check(c.omega > 0.0, "omega must be positive");
    switch (c.experiment) {
        case Experiment::Fig1a:
        case Experiment::Fig1b:
            config_check(c.t_initial > 0.0 && c.t_final_min > 0.0, "temperatures must be positive");
            config_check(c.t_final_points >= 1 && c.t_final_max >= c.t_final_min, "empty T_f range");
            config_check(c.experiment == Experiment::Fig1b || c.n_levels >= 1, "n_levels must be >= 1");
            config_check(c.experiment == Experiment::Fig1a || (c.n_spins >= 1 && c.n_spins <= kMaxSpins),
                         "n_spins must be in [1, 60]");
            break;
        case Experiment::Fig2:
            config_check(c.t_cold > 0.0, "t_cold must be positive");
            config_check(!c.t_hot.empty(), "t_hot list is empty");
            for (double t : c.t_hot) config_check(t > c.t_cold, "every t_hot must exceed t_cold");
            config_check(c.coupling_points >= 1 && c.coupling_max >= c.coupling_min && c.coupling_min >= 0.0,
                         "empty or negative coupling range");
            config_check(c.n_boson >= 2, "n_boson must be >= 2");
            config_check(c.omega_ratio > 0.0, "omega_ratio must be positive");
            break;
        case Experiment::Identities:
        case Experiment::Bounds:
            config_check(c.seed.has_value(), "checks need an explicit seed (--seed or \"seed\")");
            config_check(c.sweep_size >= 1, "sweep_size must be >= 1");
            config_check(c.max_dim >= 1, "max_dim must be >= 1");
            config_check(c.t_min > 0.0 && c.t_max >= c.t_min, "temperature range must be positive and nonempty");
            break;
    }
}

inline std::vector<double> linspace(double lo, double hi, std::uint64_t points) {
    std::vector<double> out;
    if (points == 1) return {lo};
    out.reserve(static_cast<std::size_t>(points));
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::uint64_t i = 0; i < points; ++i) out.push_back(lo + step * static_cast<double>(i));
    out.back() = hi;
    return out;
}

// ------------------------------ Free energy ----------------------------------

struct Fig1Row {
    double t_final{0.0};         // T_f / omega
    double exact{0.0};           // T_f ln Z_f - T_i ln Z_i
    double geometric{0.0};       // Delta_T S_R - dOmega' - dT ln N
    double approx{0.0};          // -Delta_T h - dT
};

struct Fig1Table {
    Experiment experiment{Experiment::Fig1a};
    std::string model;
    std::uint64_t n{0};
    double omega{1.0};
    double t_initial{0.1};
    double g_const{kDefaultGConst};
    std::vector<Fig1Row> rows;
};

// -Omega change from the exact partition functions and from the geometric route.
inline Fig1Row free_energy_row(const ThermalEnsemble& initial, const ThermalEnsemble& final_state, double g_const) {
    const double ti = initial.temperature();
    const double tf = final_state.temperature();
    Fig1Row row;
    row.t_final = tf;
    row.exact = tf * final_state.ln_z() - ti * initial.ln_z();
    const double d_omega_prime = final_state.potentials().omega_prime - initial.potentials().omega_prime;
    row.geometric = delta_T(s_half_geometric(final_state), s_half_geometric(initial), tf, ti) - d_omega_prime -
                    (tf - ti) * initial.ln_dim();
    row.approx = geo_free_change_approx(initial, final_state, g_const).minus_delta_omega_approx;
    return row;
}

inline Fig1Table run_fig1(const ExperimentConfig& c) {
    if (c.experiment != Experiment::Fig1a && c.experiment != Experiment::Fig1b) {
        fail(ErrorKind::ConfigError, "run_fig1 needs experiment fig1a or fig1b");
    }
    validate_config(c);
    const bool oscillator = c.experiment == Experiment::Fig1a;
    const Spectrum spectrum = oscillator ? harmonic_spectrum(c.omega, c.n_levels) : spin_ensemble_spectrum(c.omega, c.n_spins);

    Fig1Table t;
    t.experiment = c.experiment;
    t.model = oscillator ? "harmonic_oscillator" : "spin_ensemble";
    t.n = spectrum.total_dim();
    t.omega = c.omega;
    t.t_initial = c.t_initial;
    t.g_const = c.g_const;
    const ThermalEnsemble initial(spectrum, c.t_initial * c.omega);
    for (double tf : linspace(c.t_final_min, c.t_final_max, c.t_final_points)) {
        auto row = free_energy_row(initial, ThermalEnsemble(spectrum, tf * c.omega), c.g_const);
        row.t_final = tf;
        t.rows.push_back(row);
    }
    return t;
}

// ------------------------------- Otto engine ---------------------------------

struct Fig2Row {
    double g_over_omega{0.0};
    double t_hot{0.0};
    double W_net{0.0};
    double kappa{0.0};
    double zeta{0.0};
    double efficiency{0.0};
    double eta_c{0.0};
};

struct Fig2Table {
    RabiEngineSettings settings;
    double t_cold{0.05};
    std::vector<double> t_hot;
    std::uint64_t n{0};
    std::vector<Fig2Row> rows;
};

inline Fig2Table run_fig2(const ExperimentConfig& c) {
    if (c.experiment != Experiment::Fig2) fail(ErrorKind::ConfigError, "run_fig2 needs experiment fig2");
    validate_config(c);
    Fig2Table t;
    t.settings = {c.omega, c.omega_ratio, c.epsilon_ratio, c.n_boson, c.coupling_scales_with_omega};
    t.t_cold = c.t_cold;
    t.t_hot = c.t_hot;
    t.n = 2 * c.n_boson;
    for (double g : linspace(c.coupling_min, c.coupling_max, c.coupling_points)) {
        for (double th : c.t_hot) {
            const auto r = rabi_otto_cycle(t.settings, g, c.t_cold * c.omega, th * c.omega);
            t.rows.push_back({g, th, r.W_net, r.kappa, r.zeta, r.efficiency, r.eta_c});
        }
    }
    return t;
}

// ----------------------------- Randomized checks -----------------------------

struct CheckEntry {
    std::string name;
    std::string metric;  // "max_residual" or "min_slack"
    double value{0.0};
    double tolerance{0.0};
    bool passed{false};
};

struct CheckReport {
    std::string suite;
    std::uint64_t seed{0};
    std::uint64_t sweep_size{0};
    std::vector<CheckEntry> entries;

    bool passed() const noexcept {
        return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.passed; });
    }
};

inline constexpr double kIdentityTolerance = 1e-9;
inline constexpr double kBoundTolerance = 1e-10;

// Random spectrum with total dimension in [1, max_dim], energies in [-10, 10],
// and occasional degenerate levels.
template <class Rng>
Spectrum random_spectrum(Rng& rng, std::uint64_t max_dim) {
    std::uniform_int_distribution<std::uint64_t> dim_dist(1, max_dim);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uint64_t remaining = dim_dist(rng);
    std::vector<std::uint64_t> mults;
    while (remaining > 0) {
        std::uint64_t m = 1;
        if (unit(rng) < 0.25) m = std::min<std::uint64_t>(remaining, 1 + static_cast<std::uint64_t>(unit(rng) * 4.0));
        mults.push_back(m);
        remaining -= m;
    }
    std::vector<double> energies(mults.size());
    for (;;) {
        for (double& e : energies) e = -10.0 + 20.0 * unit(rng);
        std::sort(energies.begin(), energies.end());
        if (std::adjacent_find(energies.begin(), energies.end()) == energies.end()) break;
    }
    std::vector<Level> levels(mults.size());
    for (std::size_t i = 0; i < mults.size(); ++i) levels[i] = {energies[i], mults[i]};
    return Spectrum(std::move(levels));
}

// Log-uniform temperature in [t_min, t_max].
template <class Rng>
double random_temperature(Rng& rng, double t_min, double t_max) {
    std::uniform_real_distribution<double> u(std::log(t_min), std::log(t_max));
    return std::exp(u(rng));
}

namespace detail {

struct Tracker {
    std::string name;
    std::string metric;
    double tolerance;
    double value;

    void residual(double r) { value = std::max(value, r); }
    void slack(double s) { value = std::min(value, s); }
};

inline CheckEntry finish(const Tracker& t) {
    const bool ok = t.metric == "max_residual" ? t.value <= t.tolerance : t.value >= -t.tolerance;
    return {t.name, t.metric, t.value, t.tolerance, ok};
}

} // namespace detail

inline CheckReport run_checks(const ExperimentConfig& c) {
    if (c.experiment != Experiment::Identities && c.experiment != Experiment::Bounds) {
        fail(ErrorKind::ConfigError, "run_checks needs experiment identities or bounds");
    }
    validate_config(c);
    CheckReport report;
    report.suite = std::string(to_string(c.experiment));
    report.seed = *c.seed;
    report.sweep_size = c.sweep_size;

    std::mt19937_64 rng(*c.seed);
    const bool identities = c.experiment == Experiment::Identities;
    auto res = [](const char* name) { return detail::Tracker{name, "max_residual", kIdentityTolerance, 0.0}; };
    auto slk = [](const char* name) { return detail::Tracker{name, "min_slack", kBoundTolerance, kInfinity}; };

    std::vector<detail::Tracker> t;
    if (identities) {
        t = {res("sqrt_population_sum"), res("fidelity_pairwise"), res("z_prime_fidelity"), res("z_prime_wootters"), res("s_half_two_routes"),
             res("free_energy_relation"), res("omega_prime_decomposition"), res("trivial_relation"), res("classical_consistency"), res("occupation")};
    } else {
        t = {slk("ln_n_ge_s_half"), slk("jensen_z_prime"), slk("entropy_bound")};
    }

    for (std::uint64_t k = 0; k < c.sweep_size; ++k) {
        const Spectrum spectrum = random_spectrum(rng, c.max_dim);
        double t1 = random_temperature(rng, c.t_min, c.t_max);
        double t2 = random_temperature(rng, c.t_min, c.t_max);
        if (t2 < t1) std::swap(t1, t2);
        const ThermalEnsemble e1(spectrum, t1);
        const ThermalEnsemble e2(spectrum, t2);
        if (identities) {
            for (const auto* e : {&e1, &e2}) {
                t[0].residual(sqrt_sum_residual(*e));
                t[1].residual(verify_fund7(thermal_geometry(*e), e->dim()));
                const auto zp = z_prime_identity(*e);
                t[2].residual(zp.fidelity_form);
                t[3].residual(zp.wootters_form);
                t[4].residual(s_half_route_residual(*e));
                t[6].residual(omega_prime_decomposition(*e));
                t[9].residual(occupation_residual(*e));
            }
            t[5].residual(free_energy_relation(e1, e2).residual);
            t[7].residual(trivial_relation(e1, e2).residual);
            t[8].residual(classical_consistency(e1, e2));
        } else {
            for (const auto* e : {&e1, &e2}) {
                t[0].slack(divergence_bound(*e).slack);
                t[1].slack(jensen_bound(*e).slack);
                t[2].slack(entropy_bound(*e).slack);
            }
        }
    }
    for (const auto& tr : t) report.entries.push_back(detail::finish(tr));
    return report;
}

// --------------------------------- Writers -----------------------------------

// Shortest round-trippable decimal with '.' separator (classic locale printf).
inline std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline const std::vector<std::string>& fig1_columns() {
    static const std::vector<std::string> cols = {"T_f_over_omega", "minus_delta_omega_exact",
                                                  "minus_delta_omega_geometric", "minus_delta_omega_approx"};
    return cols;
}

inline const std::vector<std::string>& fig2_columns() {
    static const std::vector<std::string> cols = {"g_over_omega", "T2",         "W_net", "kappa",
                                                  "zeta",         "efficiency", "eta_c"};
    return cols;
}

inline const std::vector<std::string>& check_columns() {
    static const std::vector<std::string> cols = {"name", "metric", "value", "tolerance", "passed"};
    return cols;
}

namespace detail {

inline void write_header(std::ostream& os, const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
}

inline void write_row(std::ostream& os, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        os << (first ? "" : ",") << format_number(v);
        first = false;
    }
    os << '\n';
}

} // namespace detail

inline void write_csv(std::ostream& os, const Fig1Table& t) {
    detail::write_header(os, fig1_columns());
    for (const auto& r : t.rows) detail::write_row(os, {r.t_final, r.exact, r.geometric, r.approx});
}

inline void write_csv(std::ostream& os, const Fig2Table& t) {
    detail::write_header(os, fig2_columns());
    for (const auto& r : t.rows) detail::write_row(os, {r.g_over_omega, r.t_hot, r.W_net, r.kappa, r.zeta, r.efficiency, r.eta_c});
}

inline void write_csv(std::ostream& os, const CheckReport& r) {
    detail::write_header(os, check_columns());
    for (const auto& e : r.entries) {
        os << e.name << ',' << e.metric << ',' << format_number(e.value) << ',' << format_number(e.tolerance) << ','
           << (e.passed ? "true" : "false") << '\n';
    }
}

inline json to_json_doc(const Fig1Table& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"T_f_over_omega", r.t_final},
                        {"minus_delta_omega_exact", r.exact},
                        {"minus_delta_omega_geometric", r.geometric},
                        {"minus_delta_omega_approx", r.approx}});
    }
    return {{"experiment", std::string(to_string(t.experiment))},
            {"metadata",
             {{"model", t.model}, {"N", t.n}, {"omega", t.omega}, {"T_i_over_omega", t.t_initial}, {"g_const", t.g_const}}},
            {"columns", fig1_columns()},
            {"rows", std::move(rows)}};
}

inline json to_json_doc(const Fig2Table& t) {
    json zetas = json::array();
    for (double th : t.t_hot) zetas.push_back((th - t.t_cold) / t.t_cold);
    json rows = json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"g_over_omega", r.g_over_omega},
                        {"T2", r.t_hot},
                        {"W_net", r.W_net},
                        {"kappa", r.kappa},
                        {"zeta", r.zeta},
                        {"efficiency", r.efficiency},
                        {"eta_c", r.eta_c}});
    }
    return {{"experiment", "fig2"},
            {"metadata",
             {{"N", t.n},
              {"n_boson", t.settings.n_boson},
              {"omega", t.settings.omega},
              {"omega_ratio", t.settings.omega_ratio},
              {"epsilon_ratio", t.settings.epsilon_ratio},
              {"epsilon_scales_with_omega", true},
              {"coupling_scales_with_omega", t.settings.coupling_scales_with_omega},
              {"T1", t.t_cold},
              {"T2", t.t_hot},
              {"zeta", zetas}}},
            {"columns", fig2_columns()},
            {"rows", std::move(rows)}};
}

inline json to_json_doc(const CheckReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries) {
        entries.push_back(
            {{"name", e.name}, {"metric", e.metric}, {"value", e.value}, {"tolerance", e.tolerance}, {"passed", e.passed}});
    }
    return {{"suite", r.suite}, {"seed", r.seed}, {"sweep_size", r.sweep_size}, {"passed", r.passed()},
            {"checks", std::move(entries)}};
}

template <class Table>
void write_output(std::ostream& os, const Table& t, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        write_csv(os, t);
    } else {
        os << to_json_doc(t).dump(2) << '\n';
    }
}

} // namespace geothermo
