#pragma once

#include <limits>

#include "gch/euler.hpp"

namespace gch {

// Per-particle Lagrangian state for the characteristic system. Labels xi are
// uniform with spacing 2L/N; y is strictly increasing while the ensemble is
// valid and wraps with period 2L.
struct ParticleEnsemble {
    double t = 0.0;
    double half_length = 0.0;  // L; period of y - xi is 2L
    std::vector<double> xi;
    std::vector<double> y;
    std::vector<double> yxi;
    std::vector<double> m;        // M = m o y
    std::vector<double> u;        // U = u o y
    std::vector<double> uxi;      // U_xi = (u_x o y) y_xi
    std::vector<double> log_yxi;  // int_0^t (M - U) dtau, integrated alongside

    int size() const { return static_cast<int>(xi.size()); }
    double label_spacing() const { return 2.0 * half_length / size(); }

    bool monotone() const {
        for (int i = 0; i + 1 < size(); ++i)
            if (!(y[i + 1] > y[i])) return false;
        // periodic wrap: the last gap y_0 + 2L - y_{N-1} must stay positive
        return y.front() + 2.0 * half_length > y.back();
    }
    double min_yxi() const {
        double m = std::numeric_limits<double>::infinity();
        for (double v : yxi) m = std::min(m, v);
        return m;
    }
    bool all_finite() const;
};

struct BreakingReport {
    double min_yxi = 1.0;
    double t_of_min = 0.0;
    bool breached = false;  // min_yxi < 1/2
};

struct BreakingError : std::runtime_error {
    BreakingReport report;
    explicit BreakingError(const BreakingReport& r)
        : std::runtime_error("wave breaking: min y_xi = " + std::to_string(r.min_yxi) +
                             " at t = " + std::to_string(r.t_of_min)),
          report(r) {}
};

// Particles at t = 0: y = xi, y_xi = 1, M = m0(xi), U = (G*m0)(xi),
// U_xi = (G_x*m0)(xi). Off-grid particle counts are served by trigonometric
// resampling of m0.
ParticleEnsemble init_particles(const GridFunction& m0, int n_particles);

struct NonlocalIntegrals {
    std::vector<double> a;  // even kernel integral
    std::vector<double> b;  // odd (signed) kernel integral
};

// A_i = (1/2) int e^{-|y_i - y(eta)|} w deta; B_i carries the extra factor
// -sign(y_i - y(eta)), making it the derivative of the kernel convolution at
// y_i; w = ((U_eta/y_eta)^2 + (U-M)^2/2) y_eta. Trapezoid in eta over one
// period against the periodized kernel (images |k| <= 1), evaluated in O(N)
// by forward/backward recurrences over segment factors e^{-(y_{i+1}-y_i)}.
NonlocalIntegrals nonlocal_integrals(const ParticleEnsemble& ens);

struct LagrangeDerivatives {
    std::vector<double> dy, dyxi, dm, du, duxi, dlog_yxi;
};

LagrangeDerivatives rhs_lagrange(const ParticleEnsemble& ens);

// One RK4 update; monotonicity and Jacobian positivity re-checked. Throws
// BreakingError when the ensemble leaves the valid window.
ParticleEnsemble lagrange_step(const ParticleEnsemble& ens, const TimeControls& controls);

struct LagrangeHistory {
    std::vector<double> times;
    std::vector<double> min_yxi_series;
    std::vector<ParticleEnsemble> snapshots;
    bool aborted = false;
    double abort_time = 0.0;
    std::string abort_reason;
};

LagrangeHistory run_lagrange(const GridFunction& m0, int n_particles,
                             const TimeControls& controls);

BreakingReport breaking_monitor(const LagrangeHistory& history);

// Inverse Lagrangian map by monotone (PCHIP) interpolation of (y, U) and
// (y, M) onto the grid nodes with periodic wrap.
FieldPair to_eulerian(const ParticleEnsemble& ens, const GridSpec& grid);

}  // namespace gch
