#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lagvac/model.hpp"

namespace lagvac {

/// Uniform staggered grid over the unit mass interval. Cell centers carry
/// c and Q, nodes carry u. Node positions evaluate as i/N so the endpoints
/// land on 0 and 1 exactly.
struct Grid {
    int n_cells = 0;

    double dxi() const { return 1.0 / n_cells; }
    double node(int i) const { return static_cast<double>(i) / n_cells; }
    double center(int i) const { return (i + 0.5) / n_cells; }
};

/// Time-step policy. The update is implicit in the viscous term; cfl_visc is
/// kept for a fully explicit variant and is unused by the implicit scheme.
struct StepControl {
    double dt_init = 1e-3;
    double cfl_visc = 1.0;
    double dt_min = 1e-12;
    double t_end = 1.0;
    double positivity_guard = 0.5;   // max relative decrease of any q per step
};

void validate(const StepControl& ctrl);

/// Raised when the step size underflows dt_min or the state goes non-finite.
class SolverAbort : public std::runtime_error {
public:
    SolverAbort(double t, const std::string& message) : std::runtime_error(message), t_(t) {}
    double time() const noexcept { return t_; }

private:
    double t_;
};

/// One emitted snapshot: the state plus quantities integrated alongside the
/// run. a_left is the Eulerian position of the left interface. diss_visc_cum
/// accumulates dt * sum(E u_xi^2); diss_total_cum additionally carries the
/// numerical dissipation of the implicit update and the compression-work
/// remainder, so energy(t) + diss_total_cum is conserved to roundoff.
struct Sample {
    LagrangianState state;
    double a_left = 0.0;
    double diss_visc_cum = 0.0;
    double diss_total_cum = 0.0;
};

struct Trajectory {
    std::vector<LagrangianState> states;
    std::vector<double> a_left;
    std::vector<double> diss_visc_cum;
    std::vector<double> diss_total_cum;
    long steps = 0;
};

/// Advances the state by one time step chosen from ctrl (dt_init capped by
/// the positivity-guard estimate, halved on a rejected update).
LagrangianState step(const LagrangianState& state, const ModelParams& params,
                     const VacuumRegime& regime, const StepControl& ctrl);

using SampleSink = std::function<void(const Sample&)>;

/// Runs from the initial data to ctrl.t_end, emitting a sample at every
/// requested time. sample_times must be increasing, within [0, t_end].
/// Samples between accepted steps are linear in t; c is copied exactly.
/// Returns the number of accepted steps.
long run(const InitialData& initial, const ModelParams& params, const VacuumRegime& regime,
         const StepControl& ctrl, const std::vector<double>& sample_times, const SampleSink& sink);

Trajectory run(const InitialData& initial, const ModelParams& params, const VacuumRegime& regime,
               const StepControl& ctrl, const std::vector<double>& sample_times);

namespace detail {

/// Thomas elimination for a tridiagonal system. lower[0] and upper[n-1] are
/// ignored. The caller guarantees strict diagonal dominance.
void solve_tridiagonal(const std::vector<double>& lower, const std::vector<double>& diag,
                       const std::vector<double>& upper, const std::vector<double>& rhs,
                       std::vector<double>& x);

}  // namespace detail

}  // namespace lagvac
