#include "lagvac/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lagvac {

namespace {

constexpr double kEnvelopeTol = 1e-12;   // relative slack for envelope equality
constexpr double kGradBound = 1e6;       // discrete (A3) finiteness bound

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

int ModelParams::min_moment_order(double gamma, double beta) {
    const double x = (2.0 * gamma + beta) / (2.0 * beta);
    return static_cast<int>(std::ceil(x - 1e-9));
}

ModelParams::ModelParams(double gamma_, double beta_, double rho_l_, int moment_n_)
    : gamma(gamma_), beta(beta_), rho_l(rho_l_), moment_n(moment_n_) {
    if (!(beta > 0.0) || !(gamma >= 1.0 + beta)) {
        throw ValidationError("(A4)", "(A4) violated: requires beta > 0 and gamma >= 1 + beta, got gamma = " +
                                          fmt(gamma) + ", beta = " + fmt(beta));
    }
    if (!(rho_l > 0.0)) {
        throw ValidationError("(A4)", "liquid density must be positive, got rho_l = " + fmt(rho_l));
    }
    const int n_min = min_moment_order(gamma, beta);
    if (moment_n == 0) {
        moment_n = n_min;
    } else if (moment_n < n_min) {
        throw ValidationError("(A2)", "(A2) violated: moment_n = " + std::to_string(moment_n) +
                                          " below the admissible minimum " + std::to_string(n_min));
    }
}

VacuumRegime VacuumRegime::discontinuous() {
    VacuumRegime r;
    r.kind = RegimeKind::Discontinuous;
    return r;
}

VacuumRegime VacuumRegime::continuous(double alpha, double k1, double k2, double k3, double k4) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ValidationError("(A1)'", "(A1)' violated: profile exponent alpha must lie in (0,1), got " + fmt(alpha));
    }
    if (!(k1 > 0.0 && k1 <= k2)) {
        throw ValidationError("(A1)'", "(A1)' violated: requires 0 < K1 <= K2, got K1 = " + fmt(k1) +
                                           ", K2 = " + fmt(k2));
    }
    if (!(k3 > 0.0 && k3 <= k4)) {
        throw ValidationError("(A1)'", "(A1)' violated: requires 0 < K3 <= K4, got K3 = " + fmt(k3) +
                                           ", K4 = " + fmt(k4));
    }
    VacuumRegime r;
    r.kind = RegimeKind::Continuous;
    r.alpha = alpha;
    r.k1 = k1;
    r.k2 = k2;
    r.k3 = k3;
    r.k4 = k4;
    return r;
}

double ProfileSpec::m0(double x, double alpha) const {
    switch (kind) {
        case Kind::Constant: return m0_value;
        case Kind::Bump: {
            const double s = (x - 0.5) / bump_width;
            return m0_base + m0_amp * std::exp(-s * s);
        }
        case Kind::PhiPower: return k_m * std::pow(phi(x), 0.5 * alpha);
        case Kind::Custom: return m0_fn(x);
    }
    return 0.0;
}

double ProfileSpec::n0(double x, double alpha) const {
    switch (kind) {
        case Kind::Constant: return n0_value;
        case Kind::Bump: {
            const double s = (x - 0.5) / bump_width;
            return n0_base + n0_amp * std::exp(-s * s);
        }
        case Kind::PhiPower: return k_n * std::pow(phi(x), alpha);
        case Kind::Custom: return n0_fn(x);
    }
    return 0.0;
}

double ProfileSpec::u0(double x) const {
    if (kind == Kind::Custom && u0_fn) return u0_fn(x);
    switch (u0_kind) {
        case Velocity::Zero: return 0.0;
        case Velocity::Constant: return u0_amp;
        case Velocity::Sine: return u0_amp * std::sin(2.0 * M_PI * x);
    }
    return 0.0;
}

ProfileSpec ProfileSpec::constant(double m0, double n0, double u0) {
    ProfileSpec p;
    p.kind = Kind::Constant;
    p.m0_value = m0;
    p.n0_value = n0;
    if (u0 != 0.0) {
        p.u0_kind = Velocity::Constant;
        p.u0_amp = u0;
    }
    return p;
}

ProfileSpec ProfileSpec::bump(double m0_base, double m0_amp, double n0_base, double n0_amp, double width) {
    ProfileSpec p;
    p.kind = Kind::Bump;
    p.m0_base = m0_base;
    p.m0_amp = m0_amp;
    p.n0_base = n0_base;
    p.n0_amp = n0_amp;
    p.bump_width = width;
    return p;
}

ProfileSpec ProfileSpec::phi_power(double k_m, double k_n) {
    ProfileSpec p;
    p.kind = Kind::PhiPower;
    p.k_m = k_m;
    p.k_n = k_n;
    return p;
}

ProfileSpec ProfileSpec::custom(std::function<double(double)> m0, std::function<double(double)> n0,
                                std::function<double(double)> u0) {
    ProfileSpec p;
    p.kind = Kind::Custom;
    p.m0_fn = std::move(m0);
    p.n0_fn = std::move(n0);
    p.u0_fn = std::move(u0);
    return p;
}

double q_of_m(double m, double rho_l) {
    if (!(m >= 0.0) || !(m < rho_l)) {
        throw std::domain_error("q_of_m: requires 0 <= m < rho_l, got m = " + fmt(m) +
                                ", rho_l = " + fmt(rho_l));
    }
    return m / (rho_l - m);
}

double m_of_q(double q, double rho_l) {
    if (!(q >= 0.0)) {
        throw std::domain_error("m_of_q: requires Q >= 0, got Q = " + fmt(q));
    }
    return rho_l * q / (1.0 + q);
}

double pressure(double c, double q, double gamma) {
    if (!(c >= 0.0) || !(q >= 0.0)) {
        throw std::domain_error("pressure: requires c >= 0 and Q >= 0");
    }
    return std::pow(c * q, gamma);
}

double visc_coeff(double c, double q, double beta) {
    if (!(c >= 0.0) || !(q >= 0.0)) {
        throw std::domain_error("visc_coeff: requires c >= 0 and Q >= 0");
    }
    return std::pow(c * q, beta) * q;
}

namespace {

void check_discontinuous(const std::vector<double>& m0, const std::vector<double>& n0, double rho_l) {
    for (std::size_t i = 0; i < m0.size(); ++i) {
        if (!(n0[i] > 0.0)) {
            throw ValidationError("(A1)", "(A1) violated: inf n0 must be positive, n0 = " + fmt(n0[i]) +
                                              " at cell " + std::to_string(i));
        }
        if (!std::isfinite(n0[i])) {
            throw ValidationError("(A1)", "(A1) violated: sup n0 must be finite at cell " + std::to_string(i));
        }
        if (!(m0[i] > 0.0)) {
            throw ValidationError("(A1)", "(A1) violated: inf m0 must be positive, m0 = " + fmt(m0[i]) +
                                              " at cell " + std::to_string(i));
        }
        if (!(m0[i] < rho_l)) {
            throw ValidationError("(A1)", "(A1) violated: sup m0 = " + fmt(m0[i]) +
                                              " must stay below rho_l = " + fmt(rho_l) + " at cell " +
                                              std::to_string(i));
        }
    }
}

void check_continuous(const std::vector<double>& m0, const std::vector<double>& n0,
                      const VacuumRegime& r, double rho_l, int n_cells) {
    // sup of phi^(alpha/2) on [0,1] is (1/4)^(alpha/2)
    if (!(r.k2 * std::pow(0.25, 0.5 * r.alpha) < rho_l)) {
        throw ValidationError("(A1)'", "(A1)' violated: K2 * sup phi^(alpha/2) must stay below rho_l");
    }
    for (int i = 0; i < n_cells; ++i) {
        const double x = (i + 0.5) / n_cells;
        const double pm = std::pow(phi(x), 0.5 * r.alpha);
        const double pn = std::pow(phi(x), r.alpha);
        const double lo_m = r.k1 * pm, hi_m = r.k2 * pm;
        const double lo_n = r.k3 * pn, hi_n = r.k4 * pn;
        if (!(m0[i] >= lo_m * (1.0 - kEnvelopeTol)) || !(m0[i] <= hi_m * (1.0 + kEnvelopeTol))) {
            throw ValidationError("(A1)'", "(A1)' violated: m0 = " + fmt(m0[i]) + " leaves the envelope [" +
                                               fmt(lo_m) + ", " + fmt(hi_m) + "] at cell " + std::to_string(i));
        }
        if (!(n0[i] >= lo_n * (1.0 - kEnvelopeTol)) || !(n0[i] <= hi_n * (1.0 + kEnvelopeTol))) {
            throw ValidationError("(A1)'", "(A1)' violated: n0 = " + fmt(n0[i]) + " leaves the envelope [" +
                                               fmt(lo_n) + ", " + fmt(hi_n) + "] at cell " + std::to_string(i));
        }
        if (!(m0[i] < rho_l)) {
            throw ValidationError("(A1)'", "(A1)' violated: m0 must stay below rho_l at cell " + std::to_string(i));
        }
    }
}

}  // namespace

InitialData make_initial_data(const ModelParams& params, const VacuumRegime& regime,
                              const ProfileSpec& profile, int n_cells) {
    if (n_cells < 8) {
        throw std::invalid_argument("make_initial_data: need at least 8 cells, got " + std::to_string(n_cells));
    }

    std::vector<double> m0(n_cells), n0(n_cells);
    for (int i = 0; i < n_cells; ++i) {
        const double x = (i + 0.5) / n_cells;
        m0[i] = profile.m0(x, regime.alpha);
        n0[i] = profile.n0(x, regime.alpha);
    }

    if (regime.is_continuous()) {
        check_continuous(m0, n0, regime, params.rho_l, n_cells);
    } else {
        check_discontinuous(m0, n0, params.rho_l);
    }

    InitialData data;
    data.c0.resize(n_cells);
    data.q0.resize(n_cells);
    data.u0.resize(n_cells + 1);
    for (int i = 0; i < n_cells; ++i) {
        data.c0[i] = n0[i] / m0[i];
        data.q0[i] = q_of_m(m0[i], params.rho_l);
    }
    for (int i = 0; i <= n_cells; ++i) {
        data.u0[i] = profile.u0(static_cast<double>(i) / n_cells);
    }

    // (A2): the 2n-th velocity moment must be finite.
    const double dxi = 1.0 / n_cells;
    double moment = 0.0;
    for (double u : data.u0) moment += std::pow(u, 2 * params.moment_n) * dxi;
    if (!std::isfinite(moment)) {
        throw ValidationError("(A2)", "(A2) violated: the u0 moment of order " +
                                          std::to_string(2 * params.moment_n) + " is not finite");
    }

    // (A3): discrete squared gradient of (c0*q0)^beta must stay summable.
    double grad = 0.0;
    for (int i = 0; i + 1 < n_cells; ++i) {
        const double a = std::pow(data.c0[i] * data.q0[i], params.beta);
        const double b = std::pow(data.c0[i + 1] * data.q0[i + 1], params.beta);
        grad += (b - a) * (b - a) / dxi;
    }
    if (!std::isfinite(grad) || grad > kGradBound) {
        throw ValidationError("(A3)", "(A3) violated: discrete gradient of (c0 q0)^beta is " + fmt(grad) +
                                          ", bound is " + fmt(kGradBound));
    }

    return data;
}

}  // namespace lagvac
