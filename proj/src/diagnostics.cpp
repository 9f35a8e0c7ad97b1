#include "lagvac/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

namespace lagvac {

namespace {

constexpr double kMeanVelocityTol = 1e-10;

double trapz_nodes(const std::vector<double>& f, double dxi) {
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * dxi;
}

// c^beta q^(beta-1) with the vacuum limit pinned to zero: the c power wins.
double cq_power_mixed(double c, double q, double p_c, double p_q) {
    if (c == 0.0) return 0.0;
    return std::pow(c, p_c) * std::pow(q, p_q);
}

int nearest_cell(double probe_x, std::size_t n_cells) {
    const double raw = probe_x * static_cast<double>(n_cells) - 0.5;
    long idx = std::lround(raw);
    idx = std::max<long>(0, std::min<long>(static_cast<long>(n_cells) - 1, idx));
    return static_cast<int>(idx);
}

// Partial momentum over nodes 0..cell inclusive; its time derivative equals
// the momentum flux at that cell.
double partial_momentum(const LagrangianState& s, int cell) {
    const double dxi = 1.0 / static_cast<double>(s.cells());
    double acc = 0.0;
    for (int j = 0; j <= cell; ++j) acc += s.u[j];
    return acc * dxi;
}

}  // namespace

double energy(const LagrangianState& state, const ModelParams& params) {
    const std::size_t n = state.cells();
    const double dxi = 1.0 / static_cast<double>(n);
    double kin = 0.0;
    for (double u : state.u) kin += 0.5 * u * u;
    double pot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        pot += std::pow(state.c[i], params.gamma) * std::pow(state.q[i], params.gamma - 1.0);
    }
    return kin * dxi + pot * dxi / (params.rho_l * (params.gamma - 1.0));
}

double dissipation_rate(const LagrangianState& state, const ModelParams& params) {
    const std::size_t n = state.cells();
    const double dxi = 1.0 / static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double du = (state.u[i + 1] - state.u[i]) / dxi;
        acc += visc_coeff(state.c[i], state.q[i], params.beta) * du * du;
    }
    return acc * dxi;
}

double momentum(const LagrangianState& state) {
    const double dxi = 1.0 / static_cast<double>(state.cells());
    double acc = 0.0;
    for (double u : state.u) acc += u;
    return acc * dxi;
}

double exact_boundary_q(double t, Endpoint d, const ModelParams& params, const VacuumRegime& regime,
                        const InitialData& initial) {
    if (regime.is_continuous()) {
        throw std::domain_error("exact_boundary_q: boundary Q is identically zero in the continuous regime");
    }
    const double c0 = (d == Endpoint::Left) ? initial.c0.front() : initial.c0.back();
    const double q0 = (d == Endpoint::Left) ? initial.q0.front() : initial.q0.back();
    const double gb = params.gamma - params.beta;
    const double denom = gb * params.rho_l * std::pow(c0, gb) * std::pow(q0, gb) * t + 1.0;
    return q0 * std::pow(1.0 / denom, 1.0 / gb);
}

RateInfo theoretical_rate(const ModelParams& params, const VacuumRegime& regime) {
    RateInfo info;
    const double g = params.gamma, b = params.beta;
    if (b < 1.0) {
        info.theta = b;
        info.log_corrected = false;
    } else if (b == 1.0) {
        info.theta = 1.0;
        info.log_corrected = true;
    } else {
        const double ratio = (g - 1.0) / (g - b);
        info.theta = (ratio > 2.0) ? 2.0 : ratio;
        info.log_corrected = (ratio <= 2.0);
    }
    const double k = regime.is_continuous() ? 4.0 : 2.0;
    info.rate = info.theta / (g - 1.0 + k * b);
    info.log_power = info.log_corrected ? 1.0 / (g - 1.0 + k * b) : 0.0;
    return info;
}

std::vector<double> w_function(const LagrangianState& state, const ModelParams& params, double t) {
    const std::size_t n = state.cells();
    const double dxi = 1.0 / static_cast<double>(n);

    if (std::abs(momentum(state)) > kMeanVelocityTol) {
        throw std::domain_error("w_function: requires zero mean velocity");
    }
    for (double q : state.q) {
        if (!(q > 0.0)) throw std::domain_error("w_function: requires strictly positive q");
    }

    // Cumulative of 1/Q at nodes; exact for piecewise-constant Q.
    std::vector<double> cum(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) cum[i + 1] = cum[i] + dxi / state.q[i];
    const double normalizer = trapz_nodes(cum, dxi);

    const double s = 1.0 / (1.0 + t);
    std::vector<double> w(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        w[i] = params.rho_l * state.u[i] - s * (cum[i] - normalizer);
    }
    return w;
}

double lyapunov_functional(const LagrangianState& state, const ModelParams& params, double t, double theta) {
    if (!(theta > 0.0)) throw std::domain_error("lyapunov_functional: theta must be positive");
    if (params.beta == 1.0 && theta != 1.0) {
        throw std::domain_error("lyapunov_functional: beta = 1 requires theta = 1");
    }
    const std::size_t n = state.cells();
    const double dxi = 1.0 / static_cast<double>(n);

    double qmin = state.q.empty() ? 0.0 : state.q[0];
    for (double q : state.q) qmin = std::min(qmin, q);
    if (!(qmin > 0.0)) return 0.0;   // vacuum states carry no expansion drift

    std::vector<double> w = w_function(state, params, t);
    for (double& v : w) v *= v;
    const double w2 = trapz_nodes(w, dxi);

    double pgam = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        pgam += cq_power_mixed(state.c[i], state.q[i], params.gamma, params.gamma - 1.0);
    }
    pgam *= dxi;

    const double pt = 1.0 + t;
    const double wt = std::pow(pt, theta);
    if (params.beta < 1.0) {
        double pbet = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            pbet += cq_power_mixed(state.c[i], state.q[i], params.beta, params.beta - 1.0);
        }
        pbet *= dxi;
        return 0.5 * wt * w2 + std::pow(pt, theta - 1.0) / (1.0 - params.beta) * pbet +
               params.rho_l * wt / (params.gamma - 1.0) * pgam;
    }
    if (params.beta == 1.0) {
        return 0.5 * wt * w2 + params.rho_l * wt / (params.gamma - 1.0) * pgam;
    }
    return 0.5 * wt * w2 + params.rho_l * wt / (2.0 * (params.gamma - 1.0)) * pgam;
}

std::vector<double> momentum_balance_residual(const std::vector<LagrangianState>& states, double probe_x,
                                              const ModelParams& params) {
    std::vector<double> out;
    if (states.empty()) return out;
    const int cell = nearest_cell(probe_x, states.front().cells());
    const double inv_brho = 1.0 / (params.beta * params.rho_l);

    const LagrangianState& first = states.front();
    const double b0 = inv_brho * std::pow(first.c[cell] * first.q[cell], params.beta);
    const double s0 = partial_momentum(first, cell);

    double integral = 0.0, last_t = first.t;
    double last_g = std::pow(first.c[cell] * first.q[cell], params.gamma);
    out.reserve(states.size());
    for (const LagrangianState& s : states) {
        const double g = std::pow(s.c[cell] * s.q[cell], params.gamma);
        integral += 0.5 * (g + last_g) * (s.t - last_t);
        last_g = g;
        last_t = s.t;
        const double b = inv_brho * std::pow(s.c[cell] * s.q[cell], params.beta);
        out.push_back(b + integral - b0 + (partial_momentum(s, cell) - s0));
    }
    return out;
}

DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& value, double t_lo, double t_hi,
                   bool log_corrected, double log_power, double theo_rate, double slack) {
    if (t.size() != value.size()) throw FitError("fit_decay: mismatched series lengths");
    if (!(t_lo < t_hi)) throw FitError("fit_decay: requires t_lo < t_hi");
    // A shade under a full decade so the canonical window [T/10, T] passes
    // when measured in 1+t.
    if ((1.0 + t_hi) / (1.0 + t_lo) < 9.5) {
        throw FitError("fit_decay: window must span a decade of 1+t");
    }
    if (log_corrected && !(t_lo > 0.0)) {
        throw FitError("fit_decay: log-corrected fits need t_lo > 0");
    }

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi) continue;
        if (!(value[i] > 0.0)) throw FitError("fit_decay: nonpositive value inside the fit window");
        const double x = std::log1p(t[i]);
        double y = std::log(value[i]);
        if (log_corrected) y -= log_power * std::log(x);
        xs.push_back(x);
        ys.push_back(y);
    }
    if (xs.size() < 4) throw FitError("fit_decay: too few samples inside the fit window");

    const double nn = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= nn;
    my /= nn;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw FitError("fit_decay: degenerate time window");

    DecayFit fit;
    fit.exponent = sxy / sxx;
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;
    fit.theoretical_rate = theo_rate;
    fit.log_corrected = log_corrected;
    if (syy > 0.0) {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double r = ys[i] - my - fit.exponent * (xs[i] - mx);
            ss_res += r * r;
        }
        fit.r2 = std::max(0.0, 1.0 - ss_res / syy);
    } else {
        fit.r2 = 1.0;   // constant series: slope 0 describes it exactly
    }
    fit.pass = fit.exponent <= -theo_rate * (1.0 - slack);
    return fit;
}

EulerianSample reconstruct_eulerian(const LagrangianState& state, const ModelParams& params,
                                    const VacuumRegime& regime, double a_t) {
    const std::size_t n = state.cells();
    const double dxi = 1.0 / static_cast<double>(n);

    EulerianSample s;
    s.a_t = a_t;
    s.m.resize(n);
    s.n.resize(n);
    s.alpha_l.resize(n);
    s.alpha_g.resize(n);
    s.rho_g.resize(n);
    s.x.resize(n + 1);
    s.x_center.resize(n);
    s.u = state.u;

    std::vector<double> width(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double m = m_of_q(state.q[i], params.rho_l);
        if (!(m > 0.0)) {
            throw std::domain_error("reconstruct_eulerian: vanished liquid mass at cell " + std::to_string(i));
        }
        width[i] = dxi / m;
        s.m[i] = m;
    }
    if (regime.is_continuous() && n >= 2) {
        // End cells: integrate the envelope power law m ~ xi^p across the
        // cell instead of freezing the center value. The reported m becomes
        // the cell average so the mass identity stays exact.
        const double p = regime.alpha / (2.0 + regime.alpha);
        const double corr = std::pow(2.0, -p) / (1.0 - p);
        width.front() *= corr;
        width.back() *= corr;
        s.m.front() = dxi / width.front();
        s.m.back() = dxi / width.back();
    }

    s.x[0] = a_t;
    for (std::size_t i = 0; i < n; ++i) {
        s.x[i + 1] = s.x[i] + width[i];
        s.x_center[i] = 0.5 * (s.x[i] + s.x[i + 1]);
        s.n[i] = state.c[i] * s.m[i];
        s.alpha_l[i] = s.m[i] / params.rho_l;
        s.alpha_g[i] = 1.0 - s.alpha_l[i];
        s.rho_g[i] = (s.alpha_g[i] > 0.0) ? s.n[i] / s.alpha_g[i] : 0.0;
    }
    s.b_t = s.x.back();
    return s;
}

DiagnosticsHistory::DiagnosticsHistory(const LagrangianState& initial, const ModelParams& params,
                                       const VacuumRegime& regime, double probe_x, bool enable_w)
    : params_(params), rate_(theoretical_rate(params, regime)) {
    probe_cell_ = nearest_cell(probe_x, initial.cells());
    double qmin = initial.q.empty() ? 0.0 : initial.q[0];
    for (double q : initial.q) qmin = std::min(qmin, q);
    w_enabled_ = enable_w && qmin > 0.0 && std::abs(momentum(initial)) <= kMeanVelocityTol;
    probe_b0_ = std::pow(initial.c[probe_cell_] * initial.q[probe_cell_], params.beta) /
                (params.beta * params.rho_l);
    probe_s0_ = partial_momentum(initial, probe_cell_);
}

DiagnosticsRecord DiagnosticsHistory::record(const LagrangianState& state) {
    const std::size_t n = state.cells();
    const double dxi = 1.0 / static_cast<double>(n);

    DiagnosticsRecord rec;
    rec.t = state.t;
    for (std::size_t i = 0; i < n; ++i) {
        const double m = m_of_q(state.q[i], params_.rho_l);
        rec.sup_m = std::max(rec.sup_m, m);
        rec.sup_n = std::max(rec.sup_n, state.c[i] * m);
        const double cq = state.c[i] * state.q[i];
        rec.sup_cq = std::max(rec.sup_cq, cq);
        rec.lp_cq_gamma += std::pow(cq, params_.gamma) * dxi;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = std::pow(state.c[i] * state.q[i], params_.beta);
        const double b = std::pow(state.c[i + 1] * state.q[i + 1], params_.beta);
        rec.grad_cq_beta += (b - a) * (b - a) / dxi;
    }
    for (double u : state.u) rec.moment_2n += std::pow(u, 2 * params_.moment_n) * dxi;

    rec.energy = energy(state, params_);
    rec.dissipation = dissipation_rate(state, params_);
    rec.momentum = momentum(state);
    rec.q_left = state.q.front();
    rec.q_right = state.q.back();

    // Probe balance: trapezoid accumulation of the probe-cell pressure.
    const double g = std::pow(state.c[probe_cell_] * state.q[probe_cell_], params_.gamma);
    if (primed_) {
        integral_ += 0.5 * (g + last_g_) * (state.t - last_t_);
    }
    primed_ = true;
    last_t_ = state.t;
    last_g_ = g;
    const double b = std::pow(state.c[probe_cell_] * state.q[probe_cell_], params_.beta) /
                     (params_.beta * params_.rho_l);
    rec.balance_residual = b + integral_ - probe_b0_ + (partial_momentum(state, probe_cell_) - probe_s0_);

    if (w_enabled_) {
        double qmin = state.q[0];
        for (double q : state.q) qmin = std::min(qmin, q);
        if (qmin > 0.0) {
            std::vector<double> w = w_function(state, params_, state.t);
            for (double& v : w) v *= v;
            rec.w_norm = trapz_nodes(w, dxi);
            rec.lyapunov = lyapunov_functional(state, params_, state.t, rate_.theta);
        }
    }
    return rec;
}

}  // namespace lagvac
