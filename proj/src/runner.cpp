#include "lagvac/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;

namespace lagvac {

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

const char* kCsvHeader =
    "t,sup_m,sup_n,energy,dissipation,momentum,sup_cq,lp_cq_gamma,moment_2n,grad_cq_beta,"
    "q_left,q_right,balance_residual,w_norm,lyapunov,log1p_t,diss_visc_cum,diss_total_cum";

std::string csv_row(const DiagnosticsRecord& r, const Sample& s) {
    std::string line;
    line.reserve(420);
    const double vals[] = {r.t,        r.sup_m,         r.sup_n,      r.energy,       r.dissipation,
                           r.momentum, r.sup_cq,        r.lp_cq_gamma, r.moment_2n,   r.grad_cq_beta,
                           r.q_left,   r.q_right,       r.balance_residual, r.w_norm, r.lyapunov,
                           std::log1p(r.t), s.diss_visc_cum, s.diss_total_cum};
    for (std::size_t i = 0; i < std::size(vals); ++i) {
        if (i) line += ',';
        line += format17(vals[i]);
    }
    return line;
}

/// Ordered key-value store flushed to MANIFEST; written on every exit path.
class Manifest {
public:
    explicit Manifest(std::string path) : path_(std::move(path)) {}

    void set(const std::string& key, const std::string& value) {
        for (auto& kv : items_) {
            if (kv.first == key) {
                kv.second = value;
                return;
            }
        }
        items_.emplace_back(key, value);
    }
    void set(const std::string& key, double v) { set(key, format17(v)); }
    void set(const std::string& key, long v) { set(key, std::to_string(v)); }

    void write() const {
        std::ofstream out(path_);
        for (const auto& [k, v] : items_) out << k << " = " << v << "\n";
    }

private:
    std::string path_;
    std::vector<std::pair<std::string, std::string>> items_;
};

std::string regime_name(const VacuumRegime& r) {
    return r.is_continuous() ? "continuous" : "discontinuous";
}

void describe(Manifest& m, const RunConfig& cfg, const RateInfo& rate) {
    m.set("version", kVersion);
    m.set("gamma", cfg.params.gamma);
    m.set("beta", cfg.params.beta);
    m.set("rho_l", cfg.params.rho_l);
    m.set("moment_n", static_cast<long>(cfg.params.moment_n));
    m.set("regime", regime_name(cfg.regime));
    if (cfg.regime.is_continuous()) {
        m.set("alpha", cfg.regime.alpha);
        m.set("k1", cfg.regime.k1);
        m.set("k2", cfg.regime.k2);
        m.set("k3", cfg.regime.k3);
        m.set("k4", cfg.regime.k4);
    }
    m.set("n_cells", static_cast<long>(cfg.n_cells));
    m.set("dt_init", cfg.ctrl.dt_init);
    m.set("dt_min", cfg.ctrl.dt_min);
    m.set("t_end", cfg.ctrl.t_end);
    m.set("positivity_guard", cfg.ctrl.positivity_guard);
    m.set("sample_count", static_cast<long>(cfg.sample_count));
    m.set("spacing", cfg.log_spacing ? "log" : "linear");
    m.set("probe_x", cfg.probe_x);
    m.set("seed", static_cast<long>(cfg.seed));
    m.set("theta", rate.theta);
    m.set("rate", rate.rate);
    m.set("log_corrected", rate.log_corrected ? "true" : "false");
    m.set("log_power", rate.log_power);
    m.set("fit_t_lo", cfg.fit_window_lo());
    m.set("fit_t_hi", cfg.fit_window_hi());
    m.set("fit_slack", cfg.fit.slack);
    m.set("momentum_tol", 1e-8);
    const double scale = std::max(1.0, 256.0 / cfg.n_cells) * std::max(1.0, cfg.ctrl.dt_init / 1e-3);
    m.set("residual_tol", 1e-3 * scale);
    m.set("boundary_tol", 0.02 * std::max(1.0, 256.0 / cfg.n_cells));
}

}  // namespace

void write_snapshot(const std::string& path, const Sample& sample, double rho_l) {
    std::ofstream out(path);
    const LagrangianState& s = sample.state;
    const std::size_t n = s.cells();
    out << "# lagvac snapshot\n";
    out << "# t = " << format17(s.t) << "\n";
    out << "# a_left = " << format17(sample.a_left) << "\n";
    out << "# diss_visc_cum = " << format17(sample.diss_visc_cum) << "\n";
    out << "# diss_total_cum = " << format17(sample.diss_total_cum) << "\n";
    out << "# cells: xi c q m n\n";
    for (std::size_t i = 0; i < n; ++i) {
        const double m = m_of_q(s.q[i], rho_l);
        out << format17((i + 0.5) / n) << ' ' << format17(s.c[i]) << ' ' << format17(s.q[i]) << ' '
            << format17(m) << ' ' << format17(s.c[i] * m) << "\n";
    }
    out << "# nodes: xi u\n";
    for (std::size_t i = 0; i <= n; ++i) {
        out << format17(static_cast<double>(i) / n) << ' ' << format17(s.u[i]) << "\n";
    }
}

Sample read_snapshot(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open snapshot: " + path);
    Sample sample;
    LagrangianState& s = sample.state;
    std::string line;
    bool in_cells = false, in_nodes = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::istringstream hs(line.substr(1));
            std::string key, eq;
            hs >> key;
            if (key == "t" || key == "a_left" || key == "diss_visc_cum" || key == "diss_total_cum") {
                double v;
                if (!(hs >> eq >> v) || eq != "=") throw std::runtime_error("malformed header in " + path);
                if (key == "t") s.t = v;
                if (key == "a_left") sample.a_left = v;
                if (key == "diss_visc_cum") sample.diss_visc_cum = v;
                if (key == "diss_total_cum") sample.diss_total_cum = v;
            } else if (key == "cells:") {
                in_cells = true;
                in_nodes = false;
            } else if (key == "nodes:") {
                in_cells = false;
                in_nodes = true;
            }
            continue;
        }
        std::istringstream row(line);
        if (in_cells) {
            double xi, c, q, m, nn;
            if (!(row >> xi >> c >> q >> m >> nn)) throw std::runtime_error("malformed cell row in " + path);
            s.c.push_back(c);
            s.q.push_back(q);
        } else if (in_nodes) {
            double xi, u;
            if (!(row >> xi >> u)) throw std::runtime_error("malformed node row in " + path);
            s.u.push_back(u);
        } else {
            throw std::runtime_error("data before any section in " + path);
        }
    }
    if (s.c.empty() || s.u.size() != s.c.size() + 1) {
        throw std::runtime_error("inconsistent snapshot layout in " + path);
    }
    return sample;
}

std::map<std::string, std::string> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open MANIFEST: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CSV: " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
    std::istringstream hs(line);
    std::string tok;
    while (std::getline(hs, tok, ',')) table.header.push_back(tok);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream rs(line);
        while (std::getline(rs, tok, ',')) row.push_back(std::strtod(tok.c_str(), nullptr));
        if (row.size() != table.header.size()) throw std::runtime_error("ragged CSV row in " + path);
        table.rows.push_back(std::move(row));
    }
    return table;
}

int cmd_run(const RunConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory " << cfg.out_dir << ": " << ec.message() << "\n";
        return 1;
    }

    const RateInfo rate = theoretical_rate(cfg.params, cfg.regime);
    Manifest manifest((fs::path(cfg.out_dir) / "MANIFEST").string());
    describe(manifest, cfg, rate);

    InitialData initial;
    try {
        initial = make_initial_data(cfg.params, cfg.regime, cfg.profile, cfg.n_cells);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        manifest.set("status", "incomplete");
        manifest.set("error", e.what());
        manifest.write();
        return 1;
    }

    LagrangianState state0;
    state0.c = initial.c0;
    state0.q = initial.q0;
    state0.u = initial.u0;
    DiagnosticsHistory history(state0, cfg.params, cfg.regime, cfg.probe_x, cfg.w_diagnostics);
    manifest.set("probe_cell", static_cast<long>(history.probe_cell()));
    manifest.set("w_enabled", history.w_enabled() ? "true" : "false");

    std::ofstream csv(fs::path(cfg.out_dir) / "diagnostics.csv");
    csv << kCsvHeader << "\n";

    std::vector<double> ts, sup_m, sup_n;
    long snapshots = 0;
    long steps = 0;
    std::string error;
    try {
        steps = run(initial, cfg.params, cfg.regime, cfg.ctrl, cfg.sample_times(), [&](const Sample& s) {
            const DiagnosticsRecord rec = history.record(s.state);
            csv << csv_row(rec, s) << "\n";
            csv.flush();
            char name[40];
            std::snprintf(name, sizeof(name), "snap_%06ld.txt", snapshots);
            write_snapshot((fs::path(cfg.out_dir) / name).string(), s, cfg.params.rho_l);
            ++snapshots;
            ts.push_back(rec.t);
            sup_m.push_back(rec.sup_m);
            sup_n.push_back(rec.sup_n);
        });
    } catch (const std::exception& e) {
        error = e.what();
    }
    manifest.set("snapshots", snapshots);
    manifest.set("steps", steps);
    if (!error.empty()) {
        std::cerr << "error: " << error << "\n";
        manifest.set("status", "incomplete");
        manifest.set("error", error);
        manifest.write();
        return 1;
    }

    // Decay verdicts for sup_m and sup_n over the fit window.
    std::ofstream summary(fs::path(cfg.out_dir) / "summary.txt");
    summary << "version = " << kVersion << "\n";
    summary << "steps = " << steps << "\n";
    summary << "snapshots = " << snapshots << "\n";
    summary << "theta = " << format17(rate.theta) << "\n";
    summary << "theoretical_rate = " << format17(rate.rate) << "\n";
    summary << "log_corrected = " << (rate.log_corrected ? "true" : "false") << "\n";

    bool verdict_fail = false;
    bool fitted = false;
    if (cfg.fit.enabled && cfg.ctrl.t_end > 0.0) {
        try {
            for (const auto& [name, series] : {std::pair<std::string, const std::vector<double>*>{"sup_m", &sup_m},
                                               {"sup_n", &sup_n}}) {
                const DecayFit fit = fit_decay(ts, *series, cfg.fit_window_lo(), cfg.fit_window_hi(),
                                               rate.log_corrected, rate.log_power, rate.rate, cfg.fit.slack);
                summary << "fit_" << name << "_exponent = " << format17(fit.exponent) << "\n";
                summary << "fit_" << name << "_r2 = " << format17(fit.r2) << "\n";
                summary << "fit_" << name << "_threshold = " << format17(-rate.rate * (1.0 - cfg.fit.slack))
                        << "\n";
                summary << "fit_" << name << "_verdict = " << (fit.pass ? "pass" : "fail") << "\n";
                manifest.set("exponent_" + name, fit.exponent);
                manifest.set("verdict_" + name, fit.pass ? "pass" : "fail");
                if (!fit.pass) verdict_fail = true;
                fitted = true;
            }
        } catch (const FitError& e) {
            summary << "fit_note = skipped: " << e.what() << "\n";
            manifest.set("verdict_sup_m", "skipped");
            manifest.set("verdict_sup_n", "skipped");
        }
    } else {
        summary << "fit_note = disabled\n";
        manifest.set("verdict_sup_m", "skipped");
        manifest.set("verdict_sup_n", "skipped");
    }
    summary << "status = " << (verdict_fail ? "verdict_failed" : "ok") << "\n";

    manifest.set("status", "complete");
    manifest.write();
    std::cout << "run complete: " << steps << " steps, " << snapshots << " snapshots -> " << cfg.out_dir
              << "\n";
    if (fitted) {
        std::cout << "decay verdicts: sup_m/sup_n " << (verdict_fail ? "FAIL" : "pass") << "\n";
    }
    return verdict_fail ? 2 : 0;
}

SweepGrid parse_grid(const std::string& spec) {
    SweepGrid grid;
    std::istringstream in(spec);
    std::string part;
    while (std::getline(in, part, ',')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw ConfigError("grid: expected var=v1:v2:..., got '" + part + "'");
        const std::string name = part.substr(0, eq);
        auto* target = (name == "gamma") ? &grid.gamma : (name == "beta") ? &grid.beta : nullptr;
        if (!target) throw ConfigError("grid: unknown variable '" + name + "'");
        std::istringstream vals(part.substr(eq + 1));
        std::string tok;
        while (std::getline(vals, tok, ':')) {
            char* end = nullptr;
            const double v = std::strtod(tok.c_str(), &end);
            if (end == tok.c_str() || *end != '\0') throw ConfigError("grid: bad number '" + tok + "'");
            target->emplace_back(tok, v);
        }
    }
    if (grid.gamma.empty() && grid.beta.empty()) throw ConfigError("grid: no variables given");
    return grid;
}

int cmd_sweep(const RunConfig& base, const std::string& grid_spec, int jobs, const std::string& out_root) {
    SweepGrid grid;
    try {
        grid = parse_grid(grid_spec);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (grid.gamma.empty()) grid.gamma.emplace_back(format17(base.params.gamma), base.params.gamma);
    if (grid.beta.empty()) grid.beta.emplace_back(format17(base.params.beta), base.params.beta);

    struct Cell {
        std::string gamma_tok, beta_tok;
        double gamma = 0.0, beta = 0.0;
        std::string dir;
        std::string error;
        int exit_code = -1;
        double theta = 0.0, rate = 0.0, exp_m = 0.0, exp_n = 0.0;
        bool fitted = false;
    };
    std::vector<Cell> cells;
    for (const auto& [gt, gv] : grid.gamma) {
        for (const auto& [bt, bv] : grid.beta) {
            Cell c;
            c.gamma_tok = gt;
            c.beta_tok = bt;
            c.gamma = gv;
            c.beta = bv;
            c.dir = (fs::path(out_root) / ("cell_g" + gt + "_b" + bt)).string();
            cells.push_back(std::move(c));
        }
    }

    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (std::size_t i = cursor.fetch_add(1); i < cells.size(); i = cursor.fetch_add(1)) {
            Cell& cell = cells[i];
            try {
                RunConfig cfg = base;
                cfg.params = ModelParams(cell.gamma, cell.beta, base.params.rho_l, 0);
                cfg.out_dir = cell.dir;
                const RateInfo rate = theoretical_rate(cfg.params, cfg.regime);
                cell.theta = rate.theta;
                cell.rate = rate.rate;
                cell.exit_code = cmd_run(cfg);
                const auto manifest = read_manifest((fs::path(cell.dir) / "MANIFEST").string());
                if (manifest.count("exponent_sup_m")) {
                    cell.exp_m = std::strtod(manifest.at("exponent_sup_m").c_str(), nullptr);
                    cell.exp_n = std::strtod(manifest.at("exponent_sup_n").c_str(), nullptr);
                    cell.fitted = true;
                }
            } catch (const std::exception& e) {
                cell.error = e.what();
                cell.exit_code = 1;
            }
        }
    };

    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    const int n_threads = std::max(1, std::min<int>(jobs > 0 ? jobs : hw, static_cast<int>(cells.size())));
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::ostringstream table;
    table << "gamma beta regime theta rate fitted_sup_m fitted_sup_n verdict\n";
    bool any_error = false, any_fail = false;
    for (const Cell& cell : cells) {
        table << cell.gamma_tok << ' ' << cell.beta_tok << ' ' << regime_name(base.regime) << ' ';
        if (!cell.error.empty()) {
            table << "- - - - ERROR: " << cell.error << "\n";
            any_error = true;
            continue;
        }
        table << format17(cell.theta) << ' ' << format17(cell.rate) << ' ';
        if (cell.fitted) {
            table << format17(cell.exp_m) << ' ' << format17(cell.exp_n) << ' ';
        } else {
            table << "- - ";
        }
        if (cell.exit_code == 0) {
            table << "pass\n";
        } else if (cell.exit_code == 2) {
            table << "fail\n";
            any_fail = true;
        } else {
            table << "error\n";
            any_error = true;
        }
    }
    std::cout << table.str();
    std::error_code ec;
    fs::create_directories(out_root, ec);
    std::ofstream(fs::path(out_root) / "sweep_summary.txt") << table.str();
    return any_error ? 1 : (any_fail ? 2 : 0);
}

namespace {

struct CheckTable {
    bool all_pass = true;

    void row(const std::string& name, bool pass, const std::string& detail) {
        std::printf("%-26s %s  %s\n", name.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
        if (!pass) all_pass = false;
    }
};

double manifest_number(const std::map<std::string, std::string>& m, const std::string& key, double fallback) {
    const auto it = m.find(key);
    return it == m.end() ? fallback : std::strtod(it->second.c_str(), nullptr);
}

}  // namespace

int cmd_verify(const std::string& run_dir) {
    std::map<std::string, std::string> manifest;
    CsvTable csv;
    std::vector<Sample> snaps;
    try {
        manifest = read_manifest((fs::path(run_dir) / "MANIFEST").string());
        csv = read_csv((fs::path(run_dir) / "diagnostics.csv").string());
        const long count = static_cast<long>(manifest_number(manifest, "snapshots", -1));
        if (count < 1) throw std::runtime_error("MANIFEST reports no snapshots in " + run_dir);
        for (long k = 0; k < count; ++k) {
            char name[40];
            std::snprintf(name, sizeof(name), "snap_%06ld.txt", k);
            snaps.push_back(read_snapshot((fs::path(run_dir) / name).string()));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    std::optional<ModelParams> maybe_params;
    VacuumRegime regime = VacuumRegime::discontinuous();
    try {
        maybe_params.emplace(manifest_number(manifest, "gamma", 0.0), manifest_number(manifest, "beta", 0.0),
                             manifest_number(manifest, "rho_l", 0.0),
                             static_cast<int>(manifest_number(manifest, "moment_n", 0)));
        if (manifest.count("regime") && manifest.at("regime") == "continuous") {
            regime = VacuumRegime::continuous(manifest_number(manifest, "alpha", 0.5),
                                              manifest_number(manifest, "k1", 1), manifest_number(manifest, "k2", 1),
                                              manifest_number(manifest, "k3", 1), manifest_number(manifest, "k4", 1));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: invalid MANIFEST parameters: " << e.what() << "\n";
        return 1;
    }
    const ModelParams& params = *maybe_params;

    CheckTable table;

    // Energy: recomputed from the snapshots, checked against the CSV column
    // and for monotone decrease.
    const int col_energy = csv.column("energy");
    const int col_t = csv.column("t");
    if (col_energy < 0 || col_t < 0 || csv.rows.size() != snaps.size()) {
        std::cerr << "error: diagnostics.csv does not match the snapshots in " << run_dir << "\n";
        return 1;
    }
    double max_growth = 0.0, max_csv_diff = 0.0;
    double prev_energy = 0.0;
    for (std::size_t k = 0; k < snaps.size(); ++k) {
        const double e = energy(snaps[k].state, params);
        max_csv_diff = std::max(max_csv_diff, std::abs(e - csv.rows[k][col_energy]) / std::max(1e-300, e));
        if (k > 0 && prev_energy > 0.0) {
            max_growth = std::max(max_growth, e / prev_energy - 1.0);
        }
        prev_energy = e;
    }
    table.row("energy_monotonic", max_growth <= 1e-8, "max relative growth = " + format17(max_growth));
    table.row("energy_csv_consistent", max_csv_diff <= 1e-12, "max relative diff = " + format17(max_csv_diff));

    // Momentum conservation against the first snapshot.
    const double mom_tol = manifest_number(manifest, "momentum_tol", 1e-8);
    double max_drift = 0.0;
    const double mom0 = momentum(snaps.front().state);
    for (const Sample& s : snaps) max_drift = std::max(max_drift, std::abs(momentum(s.state) - mom0));
    table.row("momentum_conservation", max_drift <= mom_tol,
              "max drift = " + format17(max_drift) + " (tol " + format17(mom_tol) + ")");

    // Impulse balance at the probe over the early, densely sampled horizon.
    const double res_tol = manifest_number(manifest, "residual_tol", 1e-3);
    const double probe_x = manifest_number(manifest, "probe_x", 0.5);
    std::vector<LagrangianState> states;
    states.reserve(snaps.size());
    for (const Sample& s : snaps) states.push_back(s.state);
    const std::vector<double> residual = momentum_balance_residual(states, probe_x, params);
    double max_res = 0.0;
    for (std::size_t k = 0; k < residual.size(); ++k) {
        if (states[k].t <= 10.0) max_res = std::max(max_res, std::abs(residual[k]));
    }
    table.row("balance_residual", max_res <= res_tol,
              "max |residual| (t <= 10) = " + format17(max_res) + " (tol " + format17(res_tol) + ")");

    // Boundary oracle, discontinuous regime only.
    if (!regime.is_continuous()) {
        const double btol = manifest_number(manifest, "boundary_tol", 0.02);
        InitialData from_first;
        from_first.c0 = snaps.front().state.c;
        from_first.q0 = snaps.front().state.q;
        from_first.u0 = snaps.front().state.u;
        double max_rel = 0.0;
        for (const Sample& s : snaps) {
            const double exact = exact_boundary_q(s.state.t, Endpoint::Left, params, regime, from_first);
            max_rel = std::max(max_rel, std::abs(s.state.q.front() - exact) / exact);
        }
        table.row("boundary_oracle", max_rel <= btol,
                  "max rel err = " + format17(max_rel) + " (tol " + format17(btol) + ")");
    }

    // Re-fit the decay of sup_m and sup_n and compare with the recorded fit.
    if (manifest.count("verdict_sup_m") && manifest.at("verdict_sup_m") != "skipped") {
        const int col_m = csv.column("sup_m");
        const int col_n = csv.column("sup_n");
        std::vector<double> ts, vm, vn;
        for (const auto& row : csv.rows) {
            ts.push_back(row[col_t]);
            vm.push_back(row[col_m]);
            vn.push_back(row[col_n]);
        }
        try {
            const bool logc = manifest.count("log_corrected") && manifest.at("log_corrected") == "true";
            const DecayFit fm =
                fit_decay(ts, vm, manifest_number(manifest, "fit_t_lo", 0.0),
                          manifest_number(manifest, "fit_t_hi", 0.0), logc, manifest_number(manifest, "log_power", 0.0),
                          manifest_number(manifest, "rate", 0.0), manifest_number(manifest, "fit_slack", 0.2));
            const DecayFit fn =
                fit_decay(ts, vn, manifest_number(manifest, "fit_t_lo", 0.0),
                          manifest_number(manifest, "fit_t_hi", 0.0), logc, manifest_number(manifest, "log_power", 0.0),
                          manifest_number(manifest, "rate", 0.0), manifest_number(manifest, "fit_slack", 0.2));
            const double dm = std::abs(fm.exponent - manifest_number(manifest, "exponent_sup_m", 1e300));
            const double dn = std::abs(fn.exponent - manifest_number(manifest, "exponent_sup_n", 1e300));
            table.row("decay_refit_sup_m", dm <= 1e-9 && fm.pass == (manifest.at("verdict_sup_m") == "pass"),
                      "exponent = " + format17(fm.exponent));
            table.row("decay_refit_sup_n", dn <= 1e-9 && fn.pass == (manifest.at("verdict_sup_n") == "pass"),
                      "exponent = " + format17(fn.exponent));
        } catch (const FitError& e) {
            table.row("decay_refit", false, std::string("fit failed: ") + e.what());
        }
    }

    std::printf("verify %s: %s\n", run_dir.c_str(), table.all_pass ? "all checks passed" : "CHECKS FAILED");
    return table.all_pass ? 0 : 2;
}

}  // namespace lagvac
