#pragma once

#include "gch/friedrichs.hpp"
#include "gch/lagrange.hpp"
#include "gch/report.hpp"

namespace gch {

// Lipschitz-stability probe: paired runs from perturbed data, ratio
// R(delta) = sup_t (||u1-u2||_inf + ||u1x-u2x||_inf) / ||m1(0)-m2(0)||_B.
// Verdict: max R / min R <= 2 over delta in {1e-2, 1e-3, 1e-4}.
ExperimentReport exp_uniqueness_stability(const RunConfig& config);

// Continuous-dependence probe: approximants S_n m0 for n = 2..7; verdict:
// E_n = sup_t ||m^n - m^inf||_B decreasing with stable fitted K (<= 20%
// drift over the non-degenerate n >= 3).
ExperimentReport exp_continuous_dependence(const RunConfig& config);

// m-form vs u-form vs Lagrangian triangle: all pairwise ||u(T)||_inf
// distances below 1e-4 at the reference resolution, refinement slope >= 1.9.
ExperimentReport exp_crosscheck(const RunConfig& config);

// Friedrichs iteration: geometric contraction, limit vs nonlinear solver,
// and the fitted-C bound across amplitude halvings {1, 1/2, 1/4}.
ExperimentReport exp_iteration(const RunConfig& config);

// Seeded property sweep of the spectral module.
ExperimentReport exp_spectral_suite(const RunConfig& config);

ExperimentReport run_experiment(const RunConfig& config);

// Deterministic band-limited random field with unit-normalized Besov norm.
GridFunction random_band_limited(const GridSpec& grid, const DyadicFilterBank& bank,
                                 std::uint64_t seed, int max_block, double besov_target,
                                 double p = 2.0);

}  // namespace gch
