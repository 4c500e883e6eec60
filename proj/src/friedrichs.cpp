#include "gch/friedrichs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gch {

GridFunction TimeSampledField::eval(double t) const {
    const int n = static_cast<int>(samples_.size());
    if (n == 1) return samples_[0];
    const double s = (t - t0_) / dt_;
    if (n < 4) {
        // Linear fallback for very short sample runs.
        int i = std::clamp(static_cast<int>(std::floor(s)), 0, n - 2);
        const double a = s - i;
        GridFunction out = samples_[i];
        out *= (1.0 - a);
        out += a * samples_[i + 1];
        return out;
    }
    // Cubic Lagrange through the four nearest samples.
    int i0 = std::clamp(static_cast<int>(std::floor(s)) - 1, 0, n - 4);
    const double x = s - i0;  // in sample units, nodes at 0,1,2,3
    double w[4];
    w[0] = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
    w[1] = x * (x - 2.0) * (x - 3.0) / 2.0;
    w[2] = -x * (x - 1.0) * (x - 3.0) / 2.0;
    w[3] = x * (x - 1.0) * (x - 2.0) / 6.0;
    GridFunction out = samples_[i0];
    out *= w[0];
    for (int j = 1; j < 4; ++j) out += w[j] * samples_[i0 + j];
    return out;
}

std::vector<GridFunction> linear_transport_solve(const TimeSampledField& velocity,
                                                 const TimeSampledField& source,
                                                 const GridFunction& init,
                                                 const TimeControls& controls) {
    controls.validate();
    const double h = init.grid.spacing();
    double vmax = 0.0;
    for (size_t k = 0; k < velocity.size(); ++k)
        vmax = std::max(vmax, velocity.sample(k).max_abs());
    if (controls.dt > controls.cfl_cap * h / std::max(vmax, 1e-12))
        throw std::invalid_argument("linear_transport_solve: CFL violation, reduce dt");

    auto rhs = [&](const GridFunction& f, double t) {
        GridFunction f_x = derivative(f, 1);
        GridFunction out = multiply_dealiased(velocity.eval(t), f_x);
        out *= -1.0;
        out += source.eval(t);
        return out;
    };

    const int steps = std::max(1, static_cast<int>(std::llround(controls.t_end / controls.dt)));
    const double dt = controls.t_end / steps;
    std::vector<GridFunction> out;
    out.reserve(steps + 1);
    out.push_back(init);
    GridFunction f = init;
    for (int k = 0; k < steps; ++k) {
        const double t = k * dt;
        GridFunction k1 = rhs(f, t);
        GridFunction k2 = rhs(f + (0.5 * dt) * k1, t + 0.5 * dt);
        GridFunction k3 = rhs(f + (0.5 * dt) * k2, t + 0.5 * dt);
        GridFunction k4 = rhs(f + dt * k3, t + dt);
        f += (dt / 6.0) * k1;
        f += (dt / 3.0) * k2;
        f += (dt / 3.0) * k3;
        f += (dt / 6.0) * k4;
        out.push_back(f);
    }
    return out;
}

IterationTrace iterate(const GridFunction& m0, int n_max, const TimeControls& controls,
                       const DyadicFilterBank& bank, const BesovParams& besov) {
    controls.validate();
    if (n_max < 1) throw std::invalid_argument("iterate: n_max must be >= 1");

    const int steps = std::max(1, static_cast<int>(std::llround(controls.t_end / controls.dt)));
    const double dt = controls.t_end / steps;
    TimeControls solve_controls = controls;
    solve_controls.dt = dt;

    IterationTrace trace;
    const int cadence = std::min(controls.output_every, steps);
    for (int k = 0; k <= steps; k += cadence) trace.times.push_back(k * dt);
    if (trace.times.back() < controls.t_end - 1e-14) trace.times.push_back(controls.t_end);

    auto recorded_indices = [&]() {
        std::vector<int> idx;
        for (int k = 0; k <= steps; k += cadence) idx.push_back(k);
        if (idx.back() != steps) idx.push_back(steps);
        return idx;
    }();

    auto record_norms = [&](const std::vector<GridFunction>& traj) {
        std::vector<double> norms;
        norms.reserve(recorded_indices.size());
        for (int k : recorded_indices) norms.push_back(besov_norm(traj[k], besov, bank));
        return norms;
    };

    // m_0(t, x) = m0, constant in time.
    std::vector<GridFunction> prev(steps + 1, m0);
    trace.sup_norm_series.push_back(record_norms(prev));
    const double m0_norm = trace.sup_norm_series[0][0];
    trace.sup_norms.push_back(m0_norm);
    {
        double un = 0.0;
        for (size_t k = 0; k + 1 < trace.sup_norm_series[0].size(); ++k)
            un += 0.5 * (trace.sup_norm_series[0][k] + trace.sup_norm_series[0][k + 1]) *
                  (trace.times[k + 1] - trace.times[k]);
        trace.integrated_norm.push_back(un);
    }

    for (int n = 0; n < n_max; ++n) {
        std::vector<GridFunction> vel(steps + 1, GridFunction(m0.grid));
        std::vector<GridFunction> src(steps + 1, GridFunction(m0.grid));
        for (int k = 0; k <= steps; ++k) {
            FieldPair fp = fields_from_momentum(prev[k]);
            vel[k] = -1.0 * fp.u_x;
            GridFunction f = multiply_dealiased(fp.u, fp.m);
            f -= 0.5 * multiply_dealiased(fp.m, fp.m);
            f += 0.5 * multiply_dealiased(fp.u_x, fp.u_x);
            f -= 0.5 * multiply_dealiased(fp.u, fp.u);
            src[k] = f;
        }
        TimeSampledField velocity(0.0, dt, std::move(vel));
        TimeSampledField source(0.0, dt, std::move(src));
        GridFunction init = low_cutoff(m0, n + 1, bank);
        std::vector<GridFunction> cur =
            linear_transport_solve(velocity, source, init, solve_controls);

        std::vector<double> norms = record_norms(cur);
        double sup = 0.0, diff = 0.0, un = 0.0;
        for (size_t k = 0; k < recorded_indices.size(); ++k) {
            sup = std::max(sup, norms[k]);
            diff = std::max(diff,
                            besov_norm(cur[recorded_indices[k]] - prev[recorded_indices[k]],
                                       besov, bank));
            if (k + 1 < recorded_indices.size())
                un += 0.5 * (norms[k] + norms[k + 1]) * (trace.times[k + 1] - trace.times[k]);
        }
        trace.sup_norm_series.push_back(std::move(norms));
        trace.sup_norms.push_back(sup);
        trace.diffs.push_back(diff);
        trace.integrated_norm.push_back(un);
        if (trace.diffs.size() >= 2) {
            const double d0 = trace.diffs[trace.diffs.size() - 2];
            trace.contraction_ratios.push_back(d0 > 0.0 ? diff / d0 : 0.0);
        }

        if (sup > 10.0 * std::max(m0_norm, 1e-12) && n >= 2) {
            trace.diverged = true;
            trace.stopped_at = n + 1;
            return trace;
        }
        prev = std::move(cur);

        if (n == n_max - 1) {
            trace.final_iterate.reserve(recorded_indices.size());
            for (int k : recorded_indices) trace.final_iterate.push_back(prev[k]);
        }
    }
    return trace;
}

AprioriBoundReport apriori_bound_check(const IterationTrace& trace, double m0_norm) {
    if (trace.sup_norm_series.size() < 5)
        throw std::invalid_argument("apriori_bound_check: need at least 5 iterates");
    AprioriBoundReport rep;
    const double t_final = trace.times.back();
    if (m0_norm <= 0.0) {  // zero data: any C works
        rep.fits = true;
        rep.fitted_c = 1.0;
        rep.premise_c_max = std::numeric_limits<double>::infinity();
        return rep;
    }
    rep.premise_c_max = std::sqrt(1.0 / (2.0 * t_final * m0_norm));

    auto feasible = [&](double c) {
        if (2.0 * c * c * t_final * m0_norm >= 1.0) return false;
        for (size_t n = 0; n < trace.sup_norm_series.size(); ++n) {
            for (size_t k = 0; k < trace.sup_norm_series[n].size(); ++k) {
                const double bound =
                    c * m0_norm / (1.0 - 2.0 * c * c * m0_norm * trace.times[k]);
                if (trace.sup_norm_series[n][k] > bound * (1.0 + 1e-12)) {
                    rep.violating_n = static_cast<int>(n);
                    rep.violating_t = trace.times[k];
                    return false;
                }
            }
        }
        return true;
    };

    double hi = rep.premise_c_max * (1.0 - 1e-9);
    if (hi < 1.0 || !feasible(hi)) {
        rep.fits = false;
        return rep;
    }
    double lo = 1.0;
    if (feasible(lo)) {
        rep.fits = true;
        rep.fitted_c = 1.0;
        rep.violating_n = -1;
        return rep;
    }
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid))
            hi = mid;
        else
            lo = mid;
    }
    rep.fits = true;
    rep.fitted_c = hi;
    rep.violating_n = -1;
    return rep;
}

}  // namespace gch
