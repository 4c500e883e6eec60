#pragma once

#include "gch/euler.hpp"

namespace gch {

// Uniformly spaced time samples of a grid function with cubic Lagrange
// interpolation between them. Exact at sample times.
class TimeSampledField {
public:
    TimeSampledField(double t0, double dt, std::vector<GridFunction> samples)
        : t0_(t0), dt_(dt), samples_(std::move(samples)) {
        if (samples_.empty()) throw std::invalid_argument("TimeSampledField: no samples");
        if (!(dt_ > 0.0)) throw std::invalid_argument("TimeSampledField: dt must be > 0");
    }

    static TimeSampledField constant(const GridFunction& f, double t0, double t1) {
        return TimeSampledField(t0, std::max(t1 - t0, 1.0), {f, f});
    }

    GridFunction eval(double t) const;
    double t0() const { return t0_; }
    double dt() const { return dt_; }
    size_t size() const { return samples_.size(); }
    const GridFunction& sample(size_t k) const { return samples_[k]; }

private:
    double t0_;
    double dt_;
    std::vector<GridFunction> samples_;
};

// Solution of f_t + v f_x = g with frozen, time-sampled coefficients, by RK4
// method of lines. Returns samples of f at every step (cadence = controls.dt).
std::vector<GridFunction> linear_transport_solve(const TimeSampledField& velocity,
                                                 const TimeSampledField& source,
                                                 const GridFunction& init,
                                                 const TimeControls& controls);

struct IterationTrace {
    // Per-iterate besov norms at recorded output times: norms[n][k] pairs
    // with times[k].
    std::vector<double> times;
    std::vector<std::vector<double>> sup_norm_series;
    std::vector<double> sup_norms;          // sup_t ||m_n||_B
    std::vector<double> diffs;              // ||m_{n+1} - m_n||_{Linf_t B}
    std::vector<double> contraction_ratios; // diffs[n+1] / diffs[n]
    std::vector<GridFunction> final_iterate;  // m_{n_max} at the recorded times
    std::vector<double> integrated_norm;      // U_n(T) = int_0^T ||m_n|| dt
    bool diverged = false;
    int stopped_at = -1;
};

// Runs the frozen-coefficient scheme: m_{n+1} solves the linear transport
// problem with velocity -d_x u_n and source F(m_n, u_n), initial data
// S_{n+1} m0.
IterationTrace iterate(const GridFunction& m0, int n_max, const TimeControls& controls,
                       const DyadicFilterBank& bank, const BesovParams& besov);

struct AprioriBoundReport {
    bool fits = false;
    double fitted_c = 0.0;
    double premise_c_max = 0.0;  // largest C allowed by 2C^2 T ||m0|| < 1
    int violating_n = -1;
    double violating_t = 0.0;
};

// Fits the smallest C >= 1 such that every recorded (n, t) satisfies
// ||m_n(t)|| <= C ||m0|| / (1 - 2 C^2 ||m0|| t), within the premise
// 2 C^2 T ||m0|| < 1.
AprioriBoundReport apriori_bound_check(const IterationTrace& trace, double m0_norm);

}  // namespace gch
