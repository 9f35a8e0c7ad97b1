#include "lagvac/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace lagvac {

std::vector<double> RunConfig::sample_times() const {
    if (ctrl.t_end <= 0.0) return {0.0};
    const int count = std::max(2, sample_count);
    std::vector<double> ts(count);
    for (int i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / (count - 1);
        ts[i] = log_spacing ? std::expm1(std::log1p(ctrl.t_end) * f) : ctrl.t_end * f;
    }
    ts.front() = 0.0;
    ts.back() = ctrl.t_end;
    return ts;
}

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

using Section = std::map<std::string, Entry>;
using Tree = std::map<std::string, Section>;

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"params", {"gamma", "beta", "rho_l", "moment_n"}},
        {"regime", {"kind", "alpha", "k1", "k2", "k3", "k4"}},
        {"profile",
         {"kind", "m0", "n0", "m0_base", "m0_amp", "n0_base", "n0_amp", "bump_width", "k_m", "k_n", "u0_kind",
          "u0_amp"}},
        {"grid", {"n"}},
        {"step", {"dt_init", "t_end", "dt_min", "positivity_guard", "cfl_visc"}},
        {"sampling", {"count", "spacing"}},
        {"output", {"dir"}},
        {"diagnostics", {"probe_x", "w_mode"}},
        {"fit", {"t_lo", "t_hi", "slack", "enabled"}},
        {"run", {"seed"}},
    };
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

Tree parse_tree(const std::string& text, const std::string& origin) {
    Tree tree;
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(origin, line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (schema().find(section) == schema().end()) fail(origin, line, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(origin, line, "expected key = value");
        if (section.empty()) fail(origin, line, "key outside any section");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        const auto& allowed = schema().at(section);
        if (allowed.find(key) == allowed.end()) {
            fail(origin, line, "unknown key '" + key + "' in section [" + section + "]");
        }
        auto [it, inserted] = tree[section].emplace(key, Entry{value, line});
        (void)it;
        if (!inserted) fail(origin, line, "duplicate key '" + key + "' in section [" + section + "]");
    }
    return tree;
}

class Reader {
public:
    Reader(const Tree& tree, std::string origin) : tree_(tree), origin_(std::move(origin)) {}

    bool has(const std::string& sec, const std::string& key) const {
        const auto s = tree_.find(sec);
        return s != tree_.end() && s->second.find(key) != s->second.end();
    }

    double number(const std::string& sec, const std::string& key, double fallback) const {
        if (!has(sec, key)) return fallback;
        const Entry& e = tree_.at(sec).at(key);
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(e.value.c_str(), &end);
        if (end == e.value.c_str() || *end != '\0' || errno == ERANGE) {
            fail(origin_, e.line, "expected a number for '" + key + "', got '" + e.value + "'");
        }
        return v;
    }

    long integer(const std::string& sec, const std::string& key, long fallback) const {
        if (!has(sec, key)) return fallback;
        const Entry& e = tree_.at(sec).at(key);
        const double v = number(sec, key, 0.0);
        if (v != std::floor(v)) fail(origin_, e.line, "expected an integer for '" + key + "'");
        return static_cast<long>(v);
    }

    std::string word(const std::string& sec, const std::string& key, const std::string& fallback,
                     const std::set<std::string>& allowed) const {
        if (!has(sec, key)) return fallback;
        const Entry& e = tree_.at(sec).at(key);
        if (allowed.find(e.value) == allowed.end()) {
            fail(origin_, e.line, "invalid value '" + e.value + "' for '" + key + "'");
        }
        return e.value;
    }

    int line_of(const std::string& sec, const std::string& key) const { return tree_.at(sec).at(key).line; }

private:
    const Tree& tree_;
    std::string origin_;
};

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
    const Tree tree = parse_tree(text, origin);
    const Reader r(tree, origin);

    RunConfig cfg;
    const double gamma = r.number("params", "gamma", 2.0);
    const double beta = r.number("params", "beta", 0.5);
    const double rho_l = r.number("params", "rho_l", 1.0);
    const int moment_n = static_cast<int>(r.integer("params", "moment_n", 0));
    cfg.params = ModelParams(gamma, beta, rho_l, moment_n);

    const std::string kind = r.word("regime", "kind", "discontinuous", {"discontinuous", "continuous"});
    if (kind == "continuous") {
        cfg.regime = VacuumRegime::continuous(r.number("regime", "alpha", 0.5), r.number("regime", "k1", 0.7),
                                              r.number("regime", "k2", 0.7), r.number("regime", "k3", 0.7),
                                              r.number("regime", "k4", 0.7));
    } else {
        cfg.regime = VacuumRegime::discontinuous();
    }

    const std::string pkind = r.word("profile", "kind",
                                     cfg.regime.is_continuous() ? "phi_power" : "constant",
                                     {"constant", "bump", "phi_power"});
    if (pkind == "constant") {
        cfg.profile = ProfileSpec::constant(r.number("profile", "m0", 0.5), r.number("profile", "n0", 0.5));
    } else if (pkind == "bump") {
        cfg.profile = ProfileSpec::bump(r.number("profile", "m0_base", 0.45), r.number("profile", "m0_amp", 0.2),
                                        r.number("profile", "n0_base", 0.45), r.number("profile", "n0_amp", 0.2),
                                        r.number("profile", "bump_width", 0.15));
    } else {
        cfg.profile = ProfileSpec::phi_power(r.number("profile", "k_m", cfg.regime.k1),
                                             r.number("profile", "k_n", cfg.regime.k3));
    }
    const std::string ukind = r.word("profile", "u0_kind", "zero", {"zero", "constant", "sine"});
    cfg.profile.u0_amp = r.number("profile", "u0_amp", 0.0);
    if (ukind == "constant") {
        cfg.profile.u0_kind = ProfileSpec::Velocity::Constant;
    } else if (ukind == "sine") {
        cfg.profile.u0_kind = ProfileSpec::Velocity::Sine;
    } else {
        cfg.profile.u0_kind = ProfileSpec::Velocity::Zero;
        if (cfg.profile.u0_amp != 0.0) {
            fail(origin, r.line_of("profile", "u0_amp"), "u0_amp requires u0_kind constant or sine");
        }
    }

    cfg.n_cells = static_cast<int>(r.integer("grid", "n", 256));
    if (cfg.n_cells < 8) {
        fail(origin, r.has("grid", "n") ? r.line_of("grid", "n") : 0, "grid n must be at least 8");
    }

    cfg.ctrl.dt_init = r.number("step", "dt_init", 1e-3);
    cfg.ctrl.t_end = r.number("step", "t_end", 200.0);
    cfg.ctrl.dt_min = r.number("step", "dt_min", 1e-10);
    cfg.ctrl.positivity_guard = r.number("step", "positivity_guard", 0.5);
    cfg.ctrl.cfl_visc = r.number("step", "cfl_visc", 1.0);
    validate(cfg.ctrl);

    cfg.sample_count = static_cast<int>(r.integer("sampling", "count", 201));
    if (cfg.sample_count < 1) fail(origin, r.line_of("sampling", "count"), "sampling count must be positive");
    cfg.log_spacing = r.word("sampling", "spacing", "log", {"log", "linear"}) == "log";

    if (r.has("output", "dir")) cfg.out_dir = tree.at("output").at("dir").value;

    cfg.probe_x = r.number("diagnostics", "probe_x", 0.5);
    if (!(cfg.probe_x >= 0.0 && cfg.probe_x <= 1.0)) {
        fail(origin, r.line_of("diagnostics", "probe_x"), "probe_x must lie in [0, 1]");
    }
    cfg.w_diagnostics = r.word("diagnostics", "w_mode", "auto", {"auto", "off"}) == "auto";

    cfg.fit.enabled = r.word("fit", "enabled", "auto", {"auto", "on", "off"}) != "off";
    cfg.fit.t_lo = r.number("fit", "t_lo", -1.0);
    cfg.fit.t_hi = r.number("fit", "t_hi", -1.0);
    cfg.fit.slack = r.number("fit", "slack", 0.2);
    if (!(cfg.fit.slack >= 0.0 && cfg.fit.slack < 1.0)) {
        fail(origin, r.line_of("fit", "slack"), "fit slack must lie in [0, 1)");
    }

    const long seed = r.integer("run", "seed", 0);
    if (seed < 0) fail(origin, r.line_of("run", "seed"), "seed must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(seed);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

}  // namespace lagvac
