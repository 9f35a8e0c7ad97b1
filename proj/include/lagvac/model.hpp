#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lagvac {

/// Raised when parameters or initial data violate one of the named
/// admissibility conditions (A1), (A1)', (A2), (A3), (A4).
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string assumption, const std::string& message)
        : std::runtime_error(message), assumption_(std::move(assumption)) {}

    const std::string& assumption() const noexcept { return assumption_; }

private:
    std::string assumption_;
};

/// Physical constants of the model. gamma is the adiabatic exponent of the
/// polytropic gas law, beta the exponent of the mass-dependent viscosity,
/// rho_l the constant liquid density. moment_n is the half-order of the
/// velocity moment diagnostic (the monitored moment is u^(2n)).
struct ModelParams {
    double gamma;
    double beta;
    double rho_l;
    int moment_n;

    /// Validates beta > 0, gamma >= 1 + beta (condition (A4)), rho_l > 0 and
    /// moment_n >= ceil((2*gamma + beta) / (2*beta)) (condition (A2)).
    /// moment_n = 0 selects the smallest admissible order.
    ModelParams(double gamma, double beta, double rho_l, int moment_n = 0);

    static int min_moment_order(double gamma, double beta);
};

enum class RegimeKind { Discontinuous, Continuous };

/// Which boundary-value problem is solved. Discontinuous: strictly positive
/// masses with stress-free ends. Continuous: masses vanish at the domain ends
/// inside power-law envelopes of phi(x) = x(1-x) with exponent alpha.
struct VacuumRegime {
    RegimeKind kind = RegimeKind::Discontinuous;
    double alpha = 0.0;                        // profile exponent in (0,1)
    double k1 = 0.0, k2 = 0.0;                 // envelope constants for m0
    double k3 = 0.0, k4 = 0.0;                 // envelope constants for n0

    static VacuumRegime discontinuous();
    static VacuumRegime continuous(double alpha, double k1, double k2,
                                   double k3, double k4);

    bool is_continuous() const noexcept { return kind == RegimeKind::Continuous; }
};

/// Boundary-distance weight x(1-x) used by the continuous-regime envelopes.
inline double phi(double x) { return x * (1.0 - x); }

/// Closed-form initial profiles, sampled onto the grid by make_initial_data.
struct ProfileSpec {
    enum class Kind { Constant, Bump, PhiPower, Custom };
    enum class Velocity { Zero, Constant, Sine };

    Kind kind = Kind::Constant;

    // Constant: m0(x) = m0_value, n0(x) = n0_value.
    double m0_value = 0.5;
    double n0_value = 0.5;

    // Bump: base + amp * exp(-((x - 1/2) / width)^2).
    double m0_base = 0.45, m0_amp = 0.2;
    double n0_base = 0.45, n0_amp = 0.2;
    double bump_width = 0.15;

    // PhiPower: m0 = k_m * phi^(alpha/2), n0 = k_n * phi^alpha.
    double k_m = 0.7, k_n = 0.7;

    Velocity u0_kind = Velocity::Zero;
    double u0_amp = 0.0;   // constant value or sine amplitude

    // Custom closed forms; used by tests.
    std::function<double(double)> m0_fn, n0_fn, u0_fn;

    double m0(double x, double alpha) const;
    double n0(double x, double alpha) const;
    double u0(double x) const;

    static ProfileSpec constant(double m0, double n0, double u0 = 0.0);
    static ProfileSpec bump(double m0_base, double m0_amp, double n0_base,
                            double n0_amp, double width = 0.15);
    static ProfileSpec phi_power(double k_m, double k_n);
    static ProfileSpec custom(std::function<double(double)> m0,
                              std::function<double(double)> n0,
                              std::function<double(double)> u0);
};

/// Sampled initial data on the staggered grid: c0 = n0/m0 and q0 = Q(m0) at
/// cell centers, u0 at nodes.
struct InitialData {
    std::vector<double> c0;
    std::vector<double> q0;
    std::vector<double> u0;

    std::size_t cells() const noexcept { return c0.size(); }
};

/// Solution state at one instant. c never changes after initialization;
/// q stays strictly positive on every cell; u lives on the nodes.
struct LagrangianState {
    double t = 0.0;
    std::vector<double> c;
    std::vector<double> q;
    std::vector<double> u;

    std::size_t cells() const noexcept { return q.size(); }
};

/// Q(m) = m / (rho_l - m). Requires 0 <= m < rho_l.
double q_of_m(double m, double rho_l);

/// Inverse of q_of_m: m = rho_l * Q / (1 + Q). Requires Q >= 0.
double m_of_q(double q, double rho_l);

/// Gas pressure (c*Q)^gamma. Zero exactly when c*Q = 0.
double pressure(double c, double q, double gamma);

/// Viscosity coefficient c^beta * Q^(beta+1). Degenerates to zero at vacuum.
double visc_coeff(double c, double q, double beta);

/// Samples the profiles on n_cells cells and validates every admissibility
/// condition of the chosen regime. Throws ValidationError naming the violated
/// condition: (A1) or (A1)' for the mass envelopes, (A2) for the velocity
/// moment, (A3) for the discrete gradient bound.
InitialData make_initial_data(const ModelParams& params, const VacuumRegime& regime,
                              const ProfileSpec& profile, int n_cells);

}  // namespace lagvac
