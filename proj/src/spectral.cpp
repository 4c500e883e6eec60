#include "gch/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace gch {

namespace {

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// Smooth transition: 1 for t <= 1, 0 for t >= 2, strictly decreasing between.
double transition(double t) {
    const double a = bump(2.0 - t);
    const double b = bump(t - 1.0);
    return a / (a + b);
}

}  // namespace

// chi = 1 on |xi| <= 3/4, 0 on |xi| >= 4/3.
double DyadicFilterBank::chi(double xi) {
    const double t = 1.0 + (std::abs(xi) - 0.75) * (12.0 / 7.0);
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return 0.0;
    return transition(t);
}

// phi supported in 3/4 <= |xi| <= 8/3; chi + sum_j phi(2^{-j} xi) telescopes to 1.
double DyadicFilterBank::phi(double xi) { return chi(0.5 * xi) - chi(xi); }

DyadicFilterBank::DyadicFilterBank(const GridSpec& grid) : grid_(grid) {
    grid_.validate();
    const int n_modes = grid_.n_modes();
    const double xi_max = grid_.frequency(grid_.n_points / 2);

    int jm = static_cast<int>(
        std::ceil(std::log2(grid_.n_points * M_PI / (grid_.half_length * (8.0 / 3.0)))));
    // Clip so the top annulus [2^j * 3/4, ...) still reaches representable
    // frequencies.
    while (jm > 0 && std::ldexp(0.75, jm) > xi_max) --jm;
    if (jm < 0 || std::ldexp(0.75, jm) > xi_max)
        throw std::invalid_argument(
            "make_filter_bank: grid too small to host blocks j = -1, 0 "
            "(increase N or shrink L)");
    j_max_ = jm;

    multipliers_.assign(j_max_ + 2, std::vector<double>(n_modes, 0.0));
    for (int k = 0; k < n_modes; ++k) {
        const double xi = grid_.frequency(k);
        multipliers_[0][k] = chi(xi);
        double acc = multipliers_[0][k];
        for (int j = 0; j < j_max_; ++j) {
            const double v = phi(std::ldexp(xi, -j));
            multipliers_[j + 1][k] = v;
            acc += v;
        }
        // Flatten the top block to close the partition exactly at Nyquist.
        multipliers_[j_max_ + 1][k] = 1.0 - acc;
    }
}

const std::vector<double>& DyadicFilterBank::multiplier(int j) const {
    if (j < -1 || j > j_max_)
        throw std::out_of_range("DyadicFilterBank::multiplier: j out of range");
    return multipliers_[j + 1];
}

void DyadicFilterBank::export_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_csv: cannot open " + path);
    out << "xi_k,chi";
    for (int j = 0; j <= j_max_; ++j) out << ",phi_" << j;
    out << "\n";
    out.precision(17);
    for (int k = 0; k < grid_.n_modes(); ++k) {
        out << grid_.frequency(k);
        for (int j = -1; j <= j_max_; ++j) out << ',' << multiplier(j)[k];
        out << "\n";
    }
}

DyadicFilterBank make_filter_bank(const GridSpec& grid) { return DyadicFilterBank(grid); }

GridFunction dyadic_block(const GridFunction& u, int j, const DyadicFilterBank& bank) {
    if (u.grid != bank.grid())
        throw std::invalid_argument("dyadic_block: grid mismatch");
    if (j < -1) return GridFunction(u.grid);
    if (j > bank.j_max())
        throw std::out_of_range("dyadic_block: j exceeds j_max");
    return apply_multiplier(u, bank.multiplier(j));
}

GridFunction low_cutoff(const GridFunction& u, int j, const DyadicFilterBank& bank) {
    if (u.grid != bank.grid())
        throw std::invalid_argument("low_cutoff: grid mismatch");
    if (j <= -1) return GridFunction(u.grid);
    std::vector<double> sigma(u.grid.n_modes(), 0.0);
    const int top = std::min(j - 1, bank.j_max());
    for (int jj = -1; jj <= top; ++jj) {
        const auto& m = bank.multiplier(jj);
        for (size_t k = 0; k < sigma.size(); ++k) sigma[k] += m[k];
    }
    return apply_multiplier(u, sigma);
}

double lp_norm(const GridFunction& u, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be in [1, inf]");
    if (std::isinf(p)) return u.max_abs();
    const double h = u.grid.spacing();
    double s = 0.0;
    if (p == 2.0) {
        for (double v : u.values) s += v * v;
        return std::sqrt(h * s);
    }
    if (p == 1.0) {
        for (double v : u.values) s += std::abs(v);
        return h * s;
    }
    for (double v : u.values) s += std::pow(std::abs(v), p);
    return std::pow(h * s, 1.0 / p);
}

double besov_norm(const GridFunction& u, const BesovParams& params,
                  const DyadicFilterBank& bank) {
    params.validate();
    Spectrum spec = rfft(u);
    double acc = 0.0;
    for (int j = -1; j <= bank.j_max(); ++j) {
        Spectrum block(spec);
        const auto& m = bank.multiplier(j);
        for (size_t k = 0; k < block.size(); ++k) block[k] *= m[k];
        const double term =
            std::pow(2.0, j * params.s) * lp_norm(irfft(block, u.grid), params.p);
        if (std::isinf(params.r))
            acc = std::max(acc, term);
        else if (params.r == 1.0)
            acc += term;
        else
            acc += std::pow(term, params.r);
    }
    if (std::isinf(params.r) || params.r == 1.0) return acc;
    return std::pow(acc, 1.0 / params.r);
}

InterpolationReport interpolation_check(const GridFunction& u, double s1, double s2,
                                        double lambda, double p, double r,
                                        const DyadicFilterBank& bank) {
    if (!(s1 < s2)) throw std::invalid_argument("interpolation_check: need s1 < s2");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("interpolation_check: need lambda in (0,1)");
    InterpolationReport rep;
    if (u.max_abs() == 0.0) {
        rep.vacuous = true;
        rep.passed = true;
        return rep;
    }
    const double s_mid = lambda * s1 + (1.0 - lambda) * s2;
    rep.lhs = besov_norm(u, BesovParams{s_mid, p, r}, bank);
    rep.rhs = std::pow(besov_norm(u, BesovParams{s1, p, r}, bank), lambda) *
              std::pow(besov_norm(u, BesovParams{s2, p, r}, bank), 1.0 - lambda);
    rep.passed = rep.lhs <= rep.rhs * (1.0 + 1e-12);
    return rep;
}

BonyParts bony_decompose(const GridFunction& u, const GridFunction& v,
                         const DyadicFilterBank& bank) {
    u.check_same_grid(v, "bony_decompose");
    if (u.grid != bank.grid())
        throw std::invalid_argument("bony_decompose: grid mismatch with bank");

    const int jm = bank.j_max();
    std::vector<GridFunction> du(jm + 2), dv(jm + 2);
    for (int j = -1; j <= jm; ++j) {
        du[j + 1] = dyadic_block(u, j, bank);
        dv[j + 1] = dyadic_block(v, j, bank);
    }

    BonyParts parts{GridFunction(u.grid), GridFunction(u.grid), GridFunction(u.grid), 0.0};
    for (int j = -1; j <= jm; ++j) {
        GridFunction su = low_cutoff(u, j - 1, bank);
        GridFunction sv = low_cutoff(v, j - 1, bank);
        parts.t_uv += su * dv[j + 1];
        parts.t_vu += sv * du[j + 1];
        for (int jp = std::max(-1, j - 1); jp <= std::min(jm, j + 1); ++jp)
            parts.rem += du[j + 1] * dv[jp + 1];
    }
    GridFunction sum = parts.t_uv + parts.t_vu + parts.rem;
    parts.residual = max_abs_diff(sum, u * v);
    return parts;
}

GridFunction derivative(const GridFunction& u, int order) {
    if (order < 1) throw std::invalid_argument("derivative: order must be >= 1");
    Spectrum spec = rfft(u);
    const int n = u.size();
    for (int k = 0; k < static_cast<int>(spec.size()); ++k) {
        const double xi = u.grid.frequency(k);
        std::complex<double> factor = std::pow(std::complex<double>(0.0, xi), order);
        spec[k] *= factor;
    }
    // The Nyquist mode has no well-defined odd derivative on the real grid.
    if (order % 2 == 1) spec[n / 2] = 0.0;
    return irfft(spec, u.grid);
}

GridFunction dealias(const GridFunction& u) {
    Spectrum spec = rfft(u);
    const int kcut = u.size() / 3;
    for (int k = kcut + 1; k < static_cast<int>(spec.size()); ++k) spec[k] = 0.0;
    return irfft(spec, u.grid);
}

GridFunction multiply_dealiased(const GridFunction& a, const GridFunction& b) {
    return dealias(dealias(a) * dealias(b));
}

}  // namespace gch
