#pragma once

#include <stdexcept>
#include <vector>

#include "lagvac/model.hpp"
#include "lagvac/solver.hpp"

namespace lagvac {

/// One time-sample of every monitored functional.
struct DiagnosticsRecord {
    double t = 0.0;
    double sup_m = 0.0;              // max over cells of m = m_of_q(q)
    double sup_n = 0.0;              // max over cells of n = c * m
    double energy = 0.0;             // kinetic plus internal energy
    double dissipation = 0.0;        // instantaneous integral of E u_xi^2
    double momentum = 0.0;           // node sum of u times dxi
    double sup_cq = 0.0;             // max over cells of c * q
    double lp_cq_gamma = 0.0;        // integral of (c q)^gamma
    double moment_2n = 0.0;          // integral of u^(2n)
    double grad_cq_beta = 0.0;       // integral of ((c q)^beta)_xi^2
    double q_left = 0.0;             // q at the first cell
    double q_right = 0.0;            // q at the last cell
    double balance_residual = 0.0;   // probe-cell impulse balance residual
    double w_norm = 0.0;             // integral of w^2
    double lyapunov = 0.0;           // weighted decay functional, active case
};

/// Decay exponent data for the active parameter regime.
struct RateInfo {
    double theta = 0.0;          // weighted-estimate exponent
    double rate = 0.0;           // predicted decay rate of sup m and sup n
    double log_power = 0.0;      // exponent of the logarithmic correction
    bool log_corrected = false;
};

/// Result of a log-log decay fit against a predicted rate.
struct DecayFit {
    double exponent = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    double r2 = 0.0;
    double theoretical_rate = 0.0;
    bool log_corrected = false;
    bool pass = false;
};

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Physical-space reconstruction of one Lagrangian state.
struct EulerianSample {
    double a_t = 0.0, b_t = 0.0;       // interface positions
    std::vector<double> x;             // node positions, strictly increasing
    std::vector<double> u;             // velocity at nodes
    std::vector<double> x_center;      // cell midpoints
    std::vector<double> m, n;          // liquid and gas masses per cell
    std::vector<double> alpha_l, alpha_g, rho_g;
};

enum class Endpoint { Left, Right };

/// Kinetic plus internal energy of the state.
double energy(const LagrangianState& state, const ModelParams& params);

/// Instantaneous viscous dissipation rate, integral of E(c,Q) u_xi^2.
double dissipation_rate(const LagrangianState& state, const ModelParams& params);

/// Node sum of u weighted by dxi; conserved exactly by the scheme.
double momentum(const LagrangianState& state);

/// Closed-form decay of Q at a stress-free end. Only the discontinuous
/// regime carries a nonzero boundary value.
double exact_boundary_q(double t, Endpoint d, const ModelParams& params, const VacuumRegime& regime,
                        const InitialData& initial);

/// Predicted theta, decay rate and logarithmic correction for the regime.
RateInfo theoretical_rate(const ModelParams& params, const VacuumRegime& regime);

/// Velocity corrected by the self-similar expansion drift, per node.
/// Requires zero mean initial velocity (checked on the state, the mean is
/// conserved) and strictly positive q.
std::vector<double> w_function(const LagrangianState& state, const ModelParams& params, double t);

/// Non-time-integrated part of the weighted decay functional for the case
/// selected by beta, evaluated with weight (1+t)^theta. States with vacuum
/// cells evaluate to zero.
double lyapunov_functional(const LagrangianState& state, const ModelParams& params, double t, double theta);

/// Residual of the time-integrated impulse balance at the cell nearest
/// probe_x, one value per trajectory state. Time integrals use the trapezoid
/// rule on the state times.
std::vector<double> momentum_balance_residual(const std::vector<LagrangianState>& states, double probe_x,
                                              const ModelParams& params);

/// Least-squares slope of log(value) against log(1+t) over [t_lo, t_hi].
/// When log_corrected, log_power * log(log(1+t)) is removed from the values
/// first. Verdict: exponent <= -theoretical_rate * (1 - slack).
DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& value, double t_lo, double t_hi,
                   bool log_corrected = false, double log_power = 0.0, double theoretical_rate = 0.0,
                   double slack = 0.2);

/// Maps the state back to physical space given the left interface position.
EulerianSample reconstruct_eulerian(const LagrangianState& state, const ModelParams& params,
                                    const VacuumRegime& regime, double a_t);

/// Streaming evaluator for DiagnosticsRecord. Caches the initial probe data
/// and accumulates the probe-cell pressure integral over successive record
/// calls, which must come in non-decreasing time order.
class DiagnosticsHistory {
public:
    DiagnosticsHistory(const LagrangianState& initial, const ModelParams& params, const VacuumRegime& regime,
                       double probe_x = 0.5, bool enable_w = true);

    DiagnosticsRecord record(const LagrangianState& state);

    int probe_cell() const noexcept { return probe_cell_; }
    bool w_enabled() const noexcept { return w_enabled_; }
    const RateInfo& rate() const noexcept { return rate_; }

private:
    ModelParams params_;
    RateInfo rate_;
    int probe_cell_ = 0;
    bool w_enabled_ = false;
    double probe_b0_ = 0.0;      // initial (c^b q^b)/(b rho) at the probe
    double probe_s0_ = 0.0;      // initial partial momentum up to the probe
    double integral_ = 0.0;      // accumulated (c q)^gamma at the probe
    double last_t_ = 0.0;
    double last_g_ = 0.0;
    bool primed_ = false;
};

}  // namespace lagvac
