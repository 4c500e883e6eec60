#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gch/core.hpp"

namespace gch {

struct TimeControls {
    double dt = 1e-3;
    double t_end = 0.5;
    double cfl_cap = 0.3;
    double safety = 50.0;     // abort once ||u_x||_inf exceeds this
    double theta = 0.5;       // existence-window heuristic T_est = theta / ||m0||
    int output_every = 10;    // snapshot cadence in steps

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("TimeControls: dt must be > 0");
        if (!(t_end >= 0.0)) throw std::invalid_argument("TimeControls: t_end must be >= 0");
        if (output_every < 1) throw std::invalid_argument("TimeControls: output_every >= 1");
    }
    double effective_dt(double h, double linf_ux) const {
        return std::min(dt, cfl_cap * h / std::max(linf_ux, 1e-12));
    }
};

struct EulerState {
    double t = 0.0;
    FieldPair fields;
    long step_count = 0;
};

// Raised when the run detects incipient blow-up (NaN/overflow or slope past
// the safety cap).
struct BlowupError : std::runtime_error {
    double t;
    double linf_ux;
    BlowupError(double t_, double linf_ux_)
        : std::runtime_error("incipient blow-up: ||u_x||_inf = " + std::to_string(linf_ux_) +
                             " at t = " + std::to_string(t_)),
          t(t_),
          linf_ux(linf_ux_) {}
};

struct Snapshot {
    double t = 0.0;
    GridFunction m;
    GridFunction u;
    double besov_m = 0.0;
    double linf_u = 0.0;
    double linf_ux = 0.0;
    double mass_m = 0.0;
    double l2_ux = 0.0;
    double l2_uxx = 0.0;
};

struct Trajectory {
    std::vector<Snapshot> snapshots;
    bool aborted = false;
    double abort_time = 0.0;
    std::string abort_reason;
    // Set when t_end exceeds the heuristic existence window theta / ||m0||.
    bool horizon_warning = false;
};

EulerState step_m_form(const EulerState& state, const TimeControls& controls);
EulerState step_u_form(const EulerState& state, const TimeControls& controls);

enum class EulerForm { m_form, u_form };

// Method-of-lines run with monitored quantities recorded every
// `output_every` steps (and at t = 0 and t_end). On blow-up the trajectory
// is returned with the abort flag set.
Trajectory simulate(const GridFunction& m0, const TimeControls& controls,
                    const DyadicFilterBank& bank, const BesovParams& besov,
                    EulerForm form = EulerForm::m_form);

struct MassBalanceReport {
    double max_residual = 0.0;      // absolute
    double rel_residual = 0.0;      // relative to the scale of the right side
    bool conclusive = false;
    bool mass_nondecreasing = false;
};

// Checks d/dt int m dx = (3/2) ||u_x||_L2^2 + (1/2) ||u_xx||_L2^2 by centered
// differences in time of the recorded mass series.
MassBalanceReport mass_balance_check(const Trajectory& traj);

}  // namespace gch
