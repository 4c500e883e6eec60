#include "gch/lagrange.hpp"

#include <algorithm>
#include <cmath>

namespace gch {

namespace {

// Evaluate the trigonometric interpolant of a one-sided spectrum at x. The
// DFT phase is anchored at the first node, x = -L.
double trig_eval(const Spectrum& spec, const GridSpec& grid, double x) {
    const int n = grid.n_points;
    const double xs = x + grid.half_length;
    double acc = spec[0].real();
    for (int k = 1; k < n / 2; ++k) {
        const double arg = grid.frequency(k) * xs;
        acc += 2.0 * (spec[k].real() * std::cos(arg) - spec[k].imag() * std::sin(arg));
    }
    acc += spec[n / 2].real() * std::cos(grid.frequency(n / 2) * xs);
    return acc / n;
}

std::vector<double> sample_spectrum(const Spectrum& spec, const GridSpec& grid,
                                    const std::vector<double>& points) {
    std::vector<double> out(points.size());
    for (size_t i = 0; i < points.size(); ++i) out[i] = trig_eval(spec, grid, points[i]);
    return out;
}

}  // namespace

bool ParticleEnsemble::all_finite() const {
    auto ok = [](const std::vector<double>& v) {
        for (double x : v)
            if (!std::isfinite(x)) return false;
        return true;
    };
    return ok(y) && ok(yxi) && ok(m) && ok(u) && ok(uxi);
}

ParticleEnsemble init_particles(const GridFunction& m0, int n_particles) {
    if (n_particles < 16) throw std::invalid_argument("init_particles: too few particles");
    const GridSpec& g = m0.grid;
    ParticleEnsemble ens;
    ens.half_length = g.half_length;
    ens.xi.resize(n_particles);
    const double dxi = 2.0 * g.half_length / n_particles;
    for (int i = 0; i < n_particles; ++i) ens.xi[i] = -g.half_length + i * dxi;

    Spectrum spec_m = rfft(m0);
    Spectrum spec_u(spec_m);
    Spectrum spec_ux(spec_m);
    for (int k = 0; k < g.n_modes(); ++k) {
        const double xi = g.frequency(k);
        spec_u[k] /= (1.0 + xi * xi);
        spec_ux[k] = spec_u[k] * std::complex<double>(0.0, xi);
    }
    spec_ux[g.n_points / 2] = 0.0;

    if (n_particles == g.n_points) {
        ens.m = m0.values;
        ens.u = irfft(spec_u, g).values;
        ens.uxi = irfft(spec_ux, g).values;
    } else {
        ens.m = sample_spectrum(spec_m, g, ens.xi);
        ens.u = sample_spectrum(spec_u, g, ens.xi);
        ens.uxi = sample_spectrum(spec_ux, g, ens.xi);
    }
    ens.y = ens.xi;
    ens.yxi.assign(n_particles, 1.0);
    ens.log_yxi.assign(n_particles, 0.0);
    return ens;
}

NonlocalIntegrals nonlocal_integrals(const ParticleEnsemble& ens) {
    if (!ens.monotone())
        throw BreakingError(BreakingReport{ens.min_yxi(), ens.t, true});
    const int n = ens.size();
    const double period = 2.0 * ens.half_length;
    const double dxi = ens.label_spacing();

    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
        const double ux = ens.uxi[i] / ens.yxi[i];
        const double dm = ens.u[i] - ens.m[i];
        w[i] = (ux * ux + 0.5 * dm * dm) * ens.yxi[i];
    }

    // Forward prefix P_i = sum_{j<=i} e^{-(y_i - y_j)} w_j and backward
    // suffix S_i = sum_{j>=i} e^{-(y_j - y_i)} w_j via local segment factors.
    std::vector<double> prefix(n), suffix(n);
    prefix[0] = w[0];
    for (int i = 1; i < n; ++i)
        prefix[i] = std::exp(-(ens.y[i] - ens.y[i - 1])) * prefix[i - 1] + w[i];
    suffix[n - 1] = w[n - 1];
    for (int i = n - 2; i >= 0; --i)
        suffix[i] = std::exp(-(ens.y[i + 1] - ens.y[i])) * suffix[i + 1] + w[i];

    NonlocalIntegrals out;
    out.a.resize(n);
    out.b.resize(n);
    for (int i = 0; i < n; ++i) {
        // Nearest periodic images (|k| <= 1): the left copy sits entirely
        // below xi_i, the right copy entirely above.
        const double left = prefix[n - 1] * std::exp(-(period - (ens.y[n - 1] - ens.y[i])));
        const double right = suffix[0] * std::exp(-(period - (ens.y[i] - ens.y[0])));
        const double direct_even = prefix[i] + suffix[i] - w[i];
        const double direct_odd = suffix[i] - prefix[i];
        out.a[i] = 0.5 * dxi * (direct_even + left + right);
        // b carries the odd (derivative) kernel -sign(y_i - z) e^{-|y_i - z|}/2,
        // so contributions from below y_i (prefix, left image) enter negatively.
        out.b[i] = 0.5 * dxi * (direct_odd - left + right);
    }
    return out;
}

LagrangeDerivatives rhs_lagrange(const ParticleEnsemble& ens) {
    const int n = ens.size();
    for (int i = 0; i < n; ++i)
        if (ens.yxi[i] < 1e-8)
            throw BreakingError(BreakingReport{ens.min_yxi(), ens.t, true});

    NonlocalIntegrals nl = nonlocal_integrals(ens);
    LagrangeDerivatives d;
    d.dy.resize(n);
    d.dyxi.resize(n);
    d.dm.resize(n);
    d.du.resize(n);
    d.duxi.resize(n);
    d.dlog_yxi.resize(n);
    for (int i = 0; i < n; ++i) {
        const double ux = ens.uxi[i] / ens.yxi[i];
        const double M = ens.m[i], U = ens.u[i];
        d.dy[i] = -ux;
        d.dyxi[i] = (M - U) * ens.yxi[i];
        d.dm[i] = -0.5 * M * M + U * M + 0.5 * ux * ux - 0.5 * U * U;
        d.du[i] = nl.a[i] - 0.5 * ux * ux;
        d.duxi[i] = nl.b[i] * ens.yxi[i] - ens.uxi[i] * (U - M);
        d.dlog_yxi[i] = M - U;
    }
    return d;
}

namespace {

ParticleEnsemble axpy(const ParticleEnsemble& base, double a, const LagrangeDerivatives& d) {
    ParticleEnsemble out = base;
    const int n = base.size();
    for (int i = 0; i < n; ++i) {
        out.y[i] += a * d.dy[i];
        out.yxi[i] += a * d.dyxi[i];
        out.m[i] += a * d.dm[i];
        out.u[i] += a * d.du[i];
        out.uxi[i] += a * d.duxi[i];
        out.log_yxi[i] += a * d.dlog_yxi[i];
    }
    return out;
}

void accumulate(ParticleEnsemble& acc, double a, const LagrangeDerivatives& d) {
    const int n = acc.size();
    for (int i = 0; i < n; ++i) {
        acc.y[i] += a * d.dy[i];
        acc.yxi[i] += a * d.dyxi[i];
        acc.m[i] += a * d.dm[i];
        acc.u[i] += a * d.du[i];
        acc.uxi[i] += a * d.duxi[i];
        acc.log_yxi[i] += a * d.dlog_yxi[i];
    }
}

}  // namespace

ParticleEnsemble lagrange_step(const ParticleEnsemble& ens, const TimeControls& controls) {
    controls.validate();
    double speed = 0.0, min_yxi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < ens.size(); ++i) {
        speed = std::max(speed, std::abs(ens.uxi[i] / ens.yxi[i]));
        min_yxi = std::min(min_yxi, ens.yxi[i]);
    }
    const double dt =
        std::min(controls.dt,
                 controls.cfl_cap * ens.label_spacing() * min_yxi / std::max(speed, 1e-12));

    LagrangeDerivatives k1 = rhs_lagrange(ens);
    LagrangeDerivatives k2 = rhs_lagrange(axpy(ens, 0.5 * dt, k1));
    LagrangeDerivatives k3 = rhs_lagrange(axpy(ens, 0.5 * dt, k2));
    LagrangeDerivatives k4 = rhs_lagrange(axpy(ens, dt, k3));

    ParticleEnsemble next = ens;
    accumulate(next, dt / 6.0, k1);
    accumulate(next, dt / 3.0, k2);
    accumulate(next, dt / 3.0, k3);
    accumulate(next, dt / 6.0, k4);
    next.t = ens.t + dt;

    if (!next.all_finite() || !next.monotone() || next.min_yxi() <= 0.0)
        throw BreakingError(BreakingReport{next.min_yxi(), next.t, true});
    return next;
}

LagrangeHistory run_lagrange(const GridFunction& m0, int n_particles,
                             const TimeControls& controls) {
    controls.validate();
    LagrangeHistory hist;
    ParticleEnsemble ens = init_particles(m0, n_particles);
    hist.times.push_back(0.0);
    hist.min_yxi_series.push_back(ens.min_yxi());
    hist.snapshots.push_back(ens);

    TimeControls step_controls = controls;
    long step = 0;
    while (ens.t < controls.t_end - 1e-14) {
        step_controls.dt = std::min(controls.dt, controls.t_end - ens.t);
        try {
            ens = lagrange_step(ens, step_controls);
        } catch (const BreakingError& e) {
            hist.aborted = true;
            hist.abort_time = e.report.t_of_min;
            hist.abort_reason = e.what();
            hist.times.push_back(e.report.t_of_min);
            hist.min_yxi_series.push_back(e.report.min_yxi);
            return hist;
        }
        ++step;
        hist.times.push_back(ens.t);
        hist.min_yxi_series.push_back(ens.min_yxi());
        const bool at_end = ens.t >= controls.t_end - 1e-14;
        if (step % controls.output_every == 0 || at_end) hist.snapshots.push_back(ens);
    }
    return hist;
}

BreakingReport breaking_monitor(const LagrangeHistory& history) {
    BreakingReport rep;
    rep.min_yxi = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < history.min_yxi_series.size(); ++k) {
        if (history.min_yxi_series[k] < rep.min_yxi) {
            rep.min_yxi = history.min_yxi_series[k];
            rep.t_of_min = history.times[k];
        }
    }
    rep.breached = rep.min_yxi < 0.5;
    return rep;
}

namespace {

// Periodic monotone cubic (Fritsch-Carlson) interpolation of values sampled
// at strictly increasing nodes with period P.
class PeriodicPchip {
public:
    PeriodicPchip(const std::vector<double>& nodes, const std::vector<double>& vals,
                  double period)
        : nodes_(nodes), vals_(vals), period_(period) {
        const int n = static_cast<int>(nodes.size());
        std::vector<double> h(n), d(n);
        for (int i = 0; i < n; ++i) {
            const int j = (i + 1) % n;
            h[i] = (j == 0 ? nodes_[0] + period_ : nodes_[j]) - nodes_[i];
            d[i] = ((j == 0 ? vals_[0] : vals_[j]) - vals_[i]) / h[i];
        }
        slopes_.resize(n);
        for (int i = 0; i < n; ++i) {
            const int im = (i + n - 1) % n;
            if (d[im] * d[i] <= 0.0) {
                slopes_[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[im];
                const double w2 = h[i] + 2.0 * h[im];
                slopes_[i] = (w1 + w2) / (w1 / d[im] + w2 / d[i]);
            }
        }
        h_ = std::move(h);
    }

    double eval(double x) const {
        const int n = static_cast<int>(nodes_.size());
        double xw = std::fmod(x - nodes_[0], period_);
        if (xw < 0.0) xw += period_;
        xw += nodes_[0];
        int i = static_cast<int>(std::upper_bound(nodes_.begin(), nodes_.end(), xw) -
                                 nodes_.begin()) - 1;
        if (i < 0) i = n - 1;
        const int j = (i + 1) % n;
        const double t = (xw - nodes_[i]) / h_[i];
        const double v0 = vals_[i], v1 = (j == 0 ? vals_[0] : vals_[j]);
        const double s0 = slopes_[i] * h_[i], s1 = slopes_[j] * h_[i];
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * v0 + (t3 - 2 * t2 + t) * s0 +
               (-2 * t3 + 3 * t2) * v1 + (t3 - t2) * s1;
    }

private:
    std::vector<double> nodes_, vals_, h_, slopes_;
    double period_;
};

}  // namespace

FieldPair to_eulerian(const ParticleEnsemble& ens, const GridSpec& grid) {
    if (!ens.monotone())
        throw BreakingError(BreakingReport{ens.min_yxi(), ens.t, true});
    const double period = 2.0 * ens.half_length;
    PeriodicPchip interp_u(ens.y, ens.u, period);
    PeriodicPchip interp_m(ens.y, ens.m, period);

    FieldPair fp;
    fp.u = GridFunction(grid);
    fp.m = GridFunction(grid);
    for (int i = 0; i < grid.n_points; ++i) {
        const double x = grid.node(i);
        fp.u[i] = interp_u.eval(x);
        fp.m[i] = interp_m.eval(x);
    }
    fp.u_x = derivative(fp.u, 1);
    fp.u_xx = derivative(fp.u, 2);
    return fp;
}

}  // namespace gch
