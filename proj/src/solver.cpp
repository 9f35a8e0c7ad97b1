#include "lagvac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>

namespace lagvac {

void validate(const StepControl& ctrl) {
    if (!(ctrl.dt_min > 0.0) || !(ctrl.dt_init >= ctrl.dt_min)) {
        throw std::invalid_argument("StepControl: requires dt_init >= dt_min > 0");
    }
    if (!(ctrl.cfl_visc > 0.0 && ctrl.cfl_visc <= 1.0)) {
        throw std::invalid_argument("StepControl: requires 0 < cfl_visc <= 1");
    }
    if (!(ctrl.t_end >= 0.0)) {
        throw std::invalid_argument("StepControl: requires t_end >= 0");
    }
    if (!(ctrl.positivity_guard > 0.0 && ctrl.positivity_guard <= 1.0)) {
        throw std::invalid_argument("StepControl: requires 0 < positivity_guard <= 1");
    }
}

namespace detail {

void solve_tridiagonal(const std::vector<double>& lower, const std::vector<double>& diag,
                       const std::vector<double>& upper, const std::vector<double>& rhs,
                       std::vector<double>& x) {
    const std::size_t n = diag.size();
    static thread_local std::vector<double> scratch;
    scratch.resize(n);
    x.resize(n);

    scratch[0] = upper[0] / diag[0];
    x[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double inv = 1.0 / (diag[i] - lower[i] * scratch[i - 1]);
        scratch[i] = upper[i] * inv;
        x[i] = (rhs[i] - lower[i] * x[i - 1]) * inv;
    }
    for (std::size_t i = n - 1; i > 0; --i) {
        x[i - 1] -= scratch[i - 1] * x[i];
    }
}

}  // namespace detail

namespace {

struct Workspace {
    std::vector<double> cpow_gamma;   // c^gamma per cell, fixed over the run
    std::vector<double> cpow_beta;    // c^beta per cell, fixed over the run
    std::vector<double> fq;           // q^(gamma-1) per cell, refreshed per step
    std::vector<double> big_e, big_p;
    std::vector<double> lo, di, up, rhs, ustar;
    std::vector<double> q_new, fq_new;

    void init(const ModelParams& par, const std::vector<double>& c, const std::vector<double>& q) {
        const std::size_t n = c.size();
        cpow_gamma.resize(n);
        cpow_beta.resize(n);
        fq.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            cpow_gamma[i] = std::pow(c[i], par.gamma);
            cpow_beta[i] = std::pow(c[i], par.beta);
            fq[i] = std::pow(q[i], par.gamma - 1.0);
        }
        big_e.resize(n);
        big_p.resize(n);
        q_new.resize(n);
        fq_new.resize(n);
        lo.resize(n + 1);
        di.resize(n + 1);
        up.resize(n + 1);
        rhs.resize(n + 1);
        ustar.resize(n + 1);
    }
};

struct StepStats {
    double diss_visc = 0.0;
    double diss_total = 0.0;
};

// One backward-Euler-in-viscosity update at a fixed dt. Returns false when
// the reciprocal update loses positivity or trips the guard; the caller then
// retries with a smaller dt. On success q_new/ustar/fq_new and the
// dissipation bookkeeping are filled in.
bool try_advance(const ModelParams& par, double dxi, double guard, const std::vector<double>& q,
                 const std::vector<double>& u, double dt, Workspace& w, StepStats& stats) {
    const std::size_t n = q.size();
    const double inv_en = 1.0 / (par.rho_l * (par.gamma - 1.0));

    for (std::size_t i = 0; i < n; ++i) {
        const double qi = q[i];
        w.big_p[i] = w.cpow_gamma[i] * w.fq[i] * qi;                    // c^g q^g
        w.big_e[i] = w.cpow_beta[i] * std::pow(qi, par.beta) * qi;      // c^b q^(b+1)
    }

    // Momentum flux sigma = E u_xi - P lives at cell centers; the ghost flux
    // outside each end is zero, which realizes the stress-free closure and
    // makes the node sum of u exactly conserved.
    const double lam = dt / (dxi * dxi);
    const double mu = dt / dxi;
    for (std::size_t i = 0; i <= n; ++i) {
        const double e_left = (i > 0) ? w.big_e[i - 1] : 0.0;
        const double e_right = (i < n) ? w.big_e[i] : 0.0;
        const double p_left = (i > 0) ? w.big_p[i - 1] : 0.0;
        const double p_right = (i < n) ? w.big_p[i] : 0.0;
        w.lo[i] = -lam * e_left;
        w.up[i] = -lam * e_right;
        w.di[i] = 1.0 + lam * (e_left + e_right);
        w.rhs[i] = u[i] - mu * (p_right - p_left);
    }
    detail::solve_tridiagonal(w.lo, w.di, w.up, w.rhs, w.ustar);

    // Reciprocal update: V = 1/Q obeys V_t = rho_l u_xi, linear in the strain.
    double visc = 0.0, kin = 0.0, curv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double du = (w.ustar[i + 1] - w.ustar[i]) / dxi;
        if (du == 0.0) {
            w.q_new[i] = q[i];
            w.fq_new[i] = w.fq[i];
        } else {
            const double v_new = 1.0 / q[i] + dt * par.rho_l * du;
            if (!(v_new > 0.0)) return false;
            const double qn = 1.0 / v_new;
            if (!std::isfinite(qn) || qn < q[i] * (1.0 - guard)) return false;
            w.q_new[i] = qn;
            w.fq_new[i] = std::pow(qn, par.gamma - 1.0);
        }
        visc += w.big_e[i] * du * du;
        const double f_old = w.cpow_gamma[i] * w.fq[i] * inv_en;
        const double f_new = w.cpow_gamma[i] * w.fq_new[i] * inv_en;
        curv += f_new - f_old + dt * w.big_p[i] * du;
    }
    for (std::size_t i = 0; i <= n; ++i) {
        if (!std::isfinite(w.ustar[i])) return false;
        const double d = w.ustar[i] - u[i];
        kin += 0.5 * d * d;
    }

    stats.diss_visc = dt * visc * dxi;
    stats.diss_total = stats.diss_visc + kin * dxi - curv * dxi;
    return true;
}

double propose_dt(const ModelParams& par, double dxi, const StepControl& ctrl,
                  const std::vector<double>& q, const std::vector<double>& u) {
    double rate = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        rate = std::max(rate, par.rho_l * q[i] * std::abs(u[i + 1] - u[i]) / dxi);
    }
    double dt = ctrl.dt_init;
    if (rate > 0.0) dt = std::min(dt, 0.5 * ctrl.positivity_guard / rate);
    return dt;
}

std::string abort_message(double t, double dt, const StepControl& ctrl, const std::vector<double>& q,
                          const std::vector<double>& u) {
    double qmin = q.empty() ? 0.0 : q[0];
    double umax = 0.0;
    for (double v : q) qmin = std::min(qmin, v);
    for (double v : u) umax = std::max(umax, std::abs(v));
    std::ostringstream os;
    os << "time step underflow at t = " << t << ": dt = " << dt << " fell below dt_min = " << ctrl.dt_min
       << " (min q = " << qmin << ", max |u| = " << umax << ")";
    return os.str();
}

void check_state(const LagrangianState& s) {
    if (s.u.size() != s.q.size() + 1 || s.c.size() != s.q.size() || s.q.empty()) {
        throw std::invalid_argument("LagrangianState: expected N cells for c and q, N+1 nodes for u");
    }
    for (double v : s.q) {
        if (!std::isfinite(v) || !(v > 0.0)) throw SolverAbort(s.t, "non-finite or non-positive q in state");
    }
    for (double v : s.u) {
        if (!std::isfinite(v)) throw SolverAbort(s.t, "non-finite u in state");
    }
}

// Advances by one accepted step, halving dt until the update is admissible.
double advance(const ModelParams& par, const StepControl& ctrl, double dxi, double dt_cap, double t,
               std::vector<double>& q, std::vector<double>& u, Workspace& w, StepStats& stats) {
    double dt = dt_cap;
    while (!try_advance(par, dxi, ctrl.positivity_guard, q, u, dt, w, stats)) {
        dt *= 0.5;
        if (dt < ctrl.dt_min) throw SolverAbort(t, abort_message(t, dt, ctrl, q, u));
    }
    q.swap(w.q_new);
    w.fq.swap(w.fq_new);
    u.swap(w.ustar);
    return dt;
}

LagrangianState lerp_state(const LagrangianState& a, const LagrangianState& b, double ts) {
    if (ts >= b.t) return b;
    const double th = (ts - a.t) / (b.t - a.t);
    LagrangianState out;
    out.t = ts;
    out.c = a.c;
    out.q.resize(a.q.size());
    out.u.resize(a.u.size());
    for (std::size_t i = 0; i < a.q.size(); ++i) out.q[i] = a.q[i] + th * (b.q[i] - a.q[i]);
    for (std::size_t i = 0; i < a.u.size(); ++i) out.u[i] = a.u[i] + th * (b.u[i] - a.u[i]);
    return out;
}

double lerp(double ta, double tb, double ts, double va, double vb) {
    if (ts >= tb) return vb;
    return va + (ts - ta) / (tb - ta) * (vb - va);
}

}  // namespace

LagrangianState step(const LagrangianState& state, const ModelParams& params, const VacuumRegime&,
                     const StepControl& ctrl) {
    validate(ctrl);
    check_state(state);

    Workspace w;
    w.init(params, state.c, state.q);
    LagrangianState next = state;
    StepStats stats;
    const double dxi = 1.0 / static_cast<double>(state.cells());
    const double dt = advance(params, ctrl, dxi, propose_dt(params, dxi, ctrl, state.q, state.u), state.t,
                              next.q, next.u, w, stats);
    next.t = state.t + dt;
    return next;
}

long run(const InitialData& initial, const ModelParams& params, const VacuumRegime&, const StepControl& ctrl,
         const std::vector<double>& sample_times, const SampleSink& sink) {
    validate(ctrl);
    for (std::size_t k = 0; k < sample_times.size(); ++k) {
        const bool ordered = (k == 0) ? sample_times[k] >= 0.0 : sample_times[k] > sample_times[k - 1];
        if (!ordered || sample_times[k] > ctrl.t_end * (1.0 + 1e-12) + 1e-300) {
            throw std::invalid_argument("run: sample_times must be increasing within [0, t_end]");
        }
    }

    LagrangianState cur;
    cur.t = 0.0;
    cur.c = initial.c0;
    cur.q = initial.q0;
    cur.u = initial.u0;
    check_state(cur);

    Sample sample;
    std::size_t next_sample = 0;
    auto emit_exact = [&](const LagrangianState& s, double a, double dv, double dtot) {
        sample.state = s;
        sample.a_left = a;
        sample.diss_visc_cum = dv;
        sample.diss_total_cum = dtot;
        sink(sample);
    };

    double a_left = 0.0, diss_visc = 0.0, diss_total = 0.0;
    while (next_sample < sample_times.size() && sample_times[next_sample] <= cur.t) {
        emit_exact(cur, a_left, diss_visc, diss_total);
        ++next_sample;
    }

    Workspace w;
    w.init(params, cur.c, cur.q);
    const double dxi = 1.0 / static_cast<double>(cur.cells());

    long steps = 0;
    LagrangianState prev = cur;
    while (cur.t < ctrl.t_end && next_sample < sample_times.size()) {
        const double remaining = ctrl.t_end - cur.t;
        double dt_cap = std::min(propose_dt(params, dxi, ctrl, cur.q, cur.u), remaining);

        prev.t = cur.t;
        prev.q = cur.q;
        prev.u = cur.u;
        const double a_prev = a_left, dv_prev = diss_visc, dtot_prev = diss_total;

        StepStats stats;
        const double dt = advance(params, ctrl, dxi, dt_cap, cur.t, cur.q, cur.u, w, stats);
        cur.t = (dt >= remaining) ? ctrl.t_end : cur.t + dt;
        ++steps;
        diss_visc += stats.diss_visc;
        diss_total += stats.diss_total;
        a_left += 0.5 * dt * (prev.u[0] + cur.u[0]);

        while (next_sample < sample_times.size() && sample_times[next_sample] <= cur.t) {
            const double ts = sample_times[next_sample];
            prev.c = cur.c;   // c is shared verbatim by every snapshot
            sample.state = lerp_state(prev, cur, ts);
            sample.a_left = lerp(prev.t, cur.t, ts, a_prev, a_left);
            sample.diss_visc_cum = lerp(prev.t, cur.t, ts, dv_prev, diss_visc);
            sample.diss_total_cum = lerp(prev.t, cur.t, ts, dtot_prev, diss_total);
            sink(sample);
            ++next_sample;
        }
    }

    // Flush samples pinned to t_end that were missed by roundoff in the
    // increasing-time comparison.
    while (next_sample < sample_times.size()) {
        emit_exact(cur, a_left, diss_visc, diss_total);
        ++next_sample;
    }
    return steps;
}

Trajectory run(const InitialData& initial, const ModelParams& params, const VacuumRegime& regime,
               const StepControl& ctrl, const std::vector<double>& sample_times) {
    Trajectory traj;
    traj.steps = run(initial, params, regime, ctrl, sample_times, [&](const Sample& s) {
        traj.states.push_back(s.state);
        traj.a_left.push_back(s.a_left);
        traj.diss_visc_cum.push_back(s.diss_visc_cum);
        traj.diss_total_cum.push_back(s.diss_total_cum);
    });
    return traj;
}

}  // namespace lagvac
