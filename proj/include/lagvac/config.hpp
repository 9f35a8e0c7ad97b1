#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lagvac/model.hpp"
#include "lagvac/solver.hpp"

namespace lagvac {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Decay-fit settings. Negative window bounds select the default window
/// [t_end / 10, t_end].
struct FitSettings {
    bool enabled = true;
    double t_lo = -1.0;
    double t_hi = -1.0;
    double slack = 0.2;
};

/// Fully validated run configuration. Construction revalidates every model
/// invariant, so a RunConfig in hand is safe to execute.
struct RunConfig {
    ModelParams params;
    VacuumRegime regime;
    ProfileSpec profile;
    int n_cells = 256;
    StepControl ctrl;
    int sample_count = 201;
    bool log_spacing = true;
    std::string out_dir = "out";
    double probe_x = 0.5;
    bool w_diagnostics = true;
    FitSettings fit;
    std::uint64_t seed = 0;

    RunConfig() : params(2.0, 0.5, 1.0), regime(VacuumRegime::discontinuous()) {}

    std::vector<double> sample_times() const;
    double fit_window_lo() const { return fit.t_lo >= 0.0 ? fit.t_lo : ctrl.t_end / 10.0; }
    double fit_window_hi() const { return fit.t_hi >= 0.0 ? fit.t_hi : ctrl.t_end; }
};

/// Parses a sectioned key-value config file. Unknown sections or keys,
/// duplicate keys and malformed values are rejected with the line number;
/// model invariants are rejected with the violated assumption named.
RunConfig load_config(const std::string& path);

/// Same parser over an in-memory string; origin names the source in errors.
RunConfig parse_config(const std::string& text, const std::string& origin = "<string>");

}  // namespace lagvac
