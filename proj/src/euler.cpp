#include "gch/euler.hpp"

#include <cmath>

namespace gch {

namespace {

// Dealiased source F = -m^2/2 + um + u_x^2/2 - u^2/2.
GridFunction source_m_form(const GridFunction& m, const GridFunction& u,
                           const GridFunction& u_x) {
    GridFunction out = multiply_dealiased(u, m);
    out -= 0.5 * multiply_dealiased(m, m);
    out += 0.5 * multiply_dealiased(u_x, u_x);
    out -= 0.5 * multiply_dealiased(u, u);
    return out;
}

// dm/dt = u_x m_x + F(m, u).
GridFunction rhs_state_m(const GridFunction& m) {
    GridFunction u = helmholtz_inverse(m);
    GridFunction u_x = derivative(u, 1);
    GridFunction m_x = derivative(m, 1);
    GridFunction out = multiply_dealiased(u_x, m_x);
    out += source_m_form(m, u, u_x);
    return out;
}

// du/dt = u_x^2 / 2 + G * (u_x^2 + u_xx^2 / 2).
GridFunction rhs_state_u(const GridFunction& u) {
    GridFunction u_x = derivative(u, 1);
    GridFunction u_xx = derivative(u, 2);
    GridFunction src = multiply_dealiased(u_x, u_x);
    src += 0.5 * multiply_dealiased(u_xx, u_xx);
    GridFunction out = green_convolve(src);
    out += 0.5 * multiply_dealiased(u_x, u_x);
    return out;
}

template <typename Rhs>
GridFunction rk4(const GridFunction& f, double dt, Rhs&& rhs) {
    GridFunction k1 = rhs(f);
    GridFunction k2 = rhs(f + 0.5 * dt * k1);
    GridFunction k3 = rhs(f + 0.5 * dt * k2);
    GridFunction k4 = rhs(f + dt * k3);
    GridFunction out = f;
    out += (dt / 6.0) * k1;
    out += (dt / 3.0) * k2;
    out += (dt / 3.0) * k3;
    out += (dt / 6.0) * k4;
    return out;
}

void check_health(const EulerState& s, const TimeControls& controls) {
    const double linf_ux = s.fields.u_x.max_abs();
    if (!s.fields.m.all_finite() || !std::isfinite(linf_ux) || linf_ux > controls.safety)
        throw BlowupError(s.t, linf_ux);
}

EulerState advance(const EulerState& state, const TimeControls& controls, EulerForm form) {
    controls.validate();
    const double h = state.fields.m.grid.spacing();
    const double dt = controls.effective_dt(h, state.fields.u_x.max_abs());
    EulerState next;
    next.t = state.t + dt;
    next.step_count = state.step_count + 1;
    if (form == EulerForm::m_form) {
        next.fields = fields_from_momentum(rk4(state.fields.m, dt, rhs_state_m));
    } else {
        next.fields = fields_from_velocity(rk4(state.fields.u, dt, rhs_state_u));
    }
    check_health(next, controls);
    return next;
}

}  // namespace

EulerState step_m_form(const EulerState& state, const TimeControls& controls) {
    return advance(state, controls, EulerForm::m_form);
}

EulerState step_u_form(const EulerState& state, const TimeControls& controls) {
    return advance(state, controls, EulerForm::u_form);
}

namespace {

Snapshot take_snapshot(const EulerState& s, const DyadicFilterBank& bank,
                       const BesovParams& besov) {
    Snapshot snap;
    snap.t = s.t;
    snap.m = s.fields.m;
    snap.u = s.fields.u;
    snap.besov_m = besov_norm(s.fields.m, besov, bank);
    snap.linf_u = s.fields.u.max_abs();
    snap.linf_ux = s.fields.u_x.max_abs();
    snap.mass_m = integrate(s.fields.m);
    snap.l2_ux = lp_norm(s.fields.u_x, 2.0);
    snap.l2_uxx = lp_norm(s.fields.u_xx, 2.0);
    return snap;
}

}  // namespace

Trajectory simulate(const GridFunction& m0, const TimeControls& controls,
                    const DyadicFilterBank& bank, const BesovParams& besov, EulerForm form) {
    controls.validate();
    Trajectory traj;

    EulerState state;
    state.fields = fields_from_momentum(m0);
    traj.snapshots.push_back(take_snapshot(state, bank, besov));
    const double norm0 = traj.snapshots.front().besov_m;
    if (norm0 > 0.0 && controls.t_end > controls.theta / norm0) traj.horizon_warning = true;

    TimeControls step_controls = controls;
    while (state.t < controls.t_end - 1e-14) {
        const double dt_left = controls.t_end - state.t;
        step_controls.dt = std::min(controls.dt, dt_left);
        try {
            state = advance(state, step_controls, form);
        } catch (const BlowupError& e) {
            traj.aborted = true;
            traj.abort_time = e.t;
            traj.abort_reason = e.what();
            return traj;
        }
        const bool at_end = state.t >= controls.t_end - 1e-14;
        if (state.step_count % controls.output_every == 0 || at_end) {
            state.fields = fields_from_momentum(momentum(state.fields.u));
            traj.snapshots.push_back(take_snapshot(state, bank, besov));
        }
    }
    return traj;
}

MassBalanceReport mass_balance_check(const Trajectory& traj) {
    MassBalanceReport rep;
    const auto& s = traj.snapshots;
    if (s.size() < 5) return rep;  // inconclusive
    // Require a uniform, reasonably fine cadence for centered differences.
    const double dt0 = s[1].t - s[0].t;
    for (size_t k = 1; k + 1 < s.size(); ++k)
        if (std::abs((s[k + 1].t - s[k].t) - dt0) > 1e-9 * std::max(dt0, 1.0)) return rep;
    if (dt0 > 0.05) return rep;

    rep.conclusive = true;
    double scale = 0.0;
    rep.mass_nondecreasing = true;
    for (size_t k = 1; k + 1 < s.size(); ++k) {
        const double lhs = (s[k + 1].mass_m - s[k - 1].mass_m) / (2.0 * dt0);
        const double rhs = 1.5 * s[k].l2_ux * s[k].l2_ux + 0.5 * s[k].l2_uxx * s[k].l2_uxx;
        rep.max_residual = std::max(rep.max_residual, std::abs(lhs - rhs));
        scale = std::max(scale, std::abs(rhs));
    }
    for (size_t k = 1; k < s.size(); ++k)
        if (s[k].mass_m < s[k - 1].mass_m - 1e-12) rep.mass_nondecreasing = false;
    rep.rel_residual = scale > 0.0 ? rep.max_residual / scale : rep.max_residual;
    return rep;
}

}  // namespace gch
