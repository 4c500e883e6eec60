#pragma once

#include <limits>
#include <string>
#include <vector>

#include "gch/fft.hpp"
#include "gch/grid.hpp"

namespace gch {

// Besov space indices B^s_{p,r}. p or r may be infinity.
struct BesovParams {
    double s = 0.5;
    double p = 2.0;
    double r = 1.0;

    static constexpr double inf = std::numeric_limits<double>::infinity();

    void validate() const {
        if (!(p >= 1.0)) throw std::invalid_argument("BesovParams: p must be in [1, inf]");
        if (!(r >= 1.0)) throw std::invalid_argument("BesovParams: r must be in [1, inf]");
    }
    // The critical index pair of interest: s = 1/p, r = 1.
    static BesovParams critical(double p) { return BesovParams{1.0 / p, p, 1.0}; }
};

// Precomputed dyadic multipliers chi, phi(2^{-j} .) on the one-sided grid
// spectrum. Index j runs over [-1, j_max]; the topmost multiplier is
// flattened so the partition of unity closes exactly at the Nyquist scale.
class DyadicFilterBank {
public:
    explicit DyadicFilterBank(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    int j_min() const { return -1; }
    int j_max() const { return j_max_; }

    // Multiplier array for block j, values over bins k = 0..N/2.
    const std::vector<double>& multiplier(int j) const;

    // Smooth profiles used to build the bank (for inspection/export).
    static double chi(double xi);
    static double phi(double xi);

    void export_csv(const std::string& path) const;

private:
    GridSpec grid_;
    int j_max_ = 0;
    std::vector<std::vector<double>> multipliers_;  // [j + 1][k]
};

DyadicFilterBank make_filter_bank(const GridSpec& grid);

// Delta_j u. Returns zero for j < -1 by contract.
GridFunction dyadic_block(const GridFunction& u, int j, const DyadicFilterBank& bank);

// S_j u = sum_{j' < j} Delta_{j'} u.
GridFunction low_cutoff(const GridFunction& u, int j, const DyadicFilterBank& bank);

// Discrete L^p norm: (h sum |u_i|^p)^{1/p}; max |u_i| for p = inf.
double lp_norm(const GridFunction& u, double p);

double besov_norm(const GridFunction& u, const BesovParams& params, const DyadicFilterBank& bank);

struct InterpolationReport {
    double lhs = 0.0;  // ||u||_{B^{lam*s1+(1-lam)*s2}}
    double rhs = 0.0;  // ||u||^lam_{B^{s1}} ||u||^{1-lam}_{B^{s2}}
    bool passed = false;
    bool vacuous = false;  // u identically zero
};

// Checks the convexity inequality with constant exactly 1, tolerance 1e-12
// relative.
InterpolationReport interpolation_check(const GridFunction& u, double s1, double s2, double lambda,
                                        double p, double r, const DyadicFilterBank& bank);

struct BonyParts {
    GridFunction t_uv;  // paraproduct T_u v
    GridFunction t_vu;  // paraproduct T_v u
    GridFunction rem;   // remainder R(u, v)
    double residual = 0.0;  // max |T_u v + T_v u + R - uv|
};

BonyParts bony_decompose(const GridFunction& u, const GridFunction& v,
                         const DyadicFilterBank& bank);

// Spectral derivative of the trigonometric interpolant.
GridFunction derivative(const GridFunction& u, int order);

// Pointwise product with 2/3-rule alias control on inputs and output.
GridFunction multiply_dealiased(const GridFunction& a, const GridFunction& b);

// Zero all modes with |k| > N/3.
GridFunction dealias(const GridFunction& u);

}  // namespace gch
