#include "gch/core.hpp"

#include <cmath>
#include <random>

namespace gch {

namespace {

std::vector<double> helmholtz_symbol(const GridSpec& grid, bool inverse) {
    std::vector<double> sigma(grid.n_modes());
    for (int k = 0; k < grid.n_modes(); ++k) {
        const double xi = grid.frequency(k);
        sigma[k] = inverse ? 1.0 / (1.0 + xi * xi) : 1.0 + xi * xi;
    }
    return sigma;
}

}  // namespace

GridFunction helmholtz_inverse(const GridFunction& m) {
    return apply_multiplier(m, helmholtz_symbol(m.grid, true));
}

GridFunction green_convolve(const GridFunction& f) { return helmholtz_inverse(f); }

GridFunction green_deriv_convolve(const GridFunction& f) {
    return derivative(helmholtz_inverse(f), 1);
}

GridFunction momentum(const GridFunction& u) {
    return apply_multiplier(u, helmholtz_symbol(u.grid, false));
}

FieldPair fields_from_momentum(const GridFunction& m) {
    FieldPair fp;
    fp.m = m;
    fp.u = helmholtz_inverse(m);
    fp.u_x = derivative(fp.u, 1);
    fp.u_xx = derivative(fp.u, 2);
    return fp;
}

FieldPair fields_from_velocity(const GridFunction& u) {
    FieldPair fp;
    fp.u = u;
    fp.m = momentum(u);
    fp.u_x = derivative(u, 1);
    fp.u_xx = derivative(u, 2);
    return fp;
}

GridFunction rhs_m_form(const GridFunction& m, const GridFunction& u, const GridFunction& u_x) {
    m.check_same_grid(u, "rhs_m_form");
    m.check_same_grid(u_x, "rhs_m_form");
    GridFunction out(m.grid);
    for (int i = 0; i < m.size(); ++i) {
        const double mi = m[i], ui = u[i], uxi = u_x[i];
        out[i] = -0.5 * mi * mi + ui * mi + 0.5 * uxi * uxi - 0.5 * ui * ui;
    }
    return out;
}

GridFunction rhs_u_form(const GridFunction& u) {
    GridFunction u_x = derivative(u, 1);
    GridFunction u_xx = derivative(u, 2);
    GridFunction src(u.grid);
    for (int i = 0; i < u.size(); ++i)
        src[i] = u_x[i] * u_x[i] + 0.5 * u_xx[i] * u_xx[i];
    GridFunction out = green_convolve(src);
    for (int i = 0; i < u.size(); ++i) out[i] -= 0.5 * u_x[i] * u_x[i];
    return out;
}

FieldPair make_initial_data(const InitialDataSpec& spec, const GridSpec& grid,
                            const DyadicFilterBank& bank) {
    grid.validate();
    if (!std::isfinite(spec.amplitude))
        throw std::invalid_argument("make_initial_data: amplitude must be finite");

    GridFunction m0(grid);
    bool from_velocity = false;
    GridFunction u0(grid);

    switch (spec.kind) {
        case InitialDataSpec::Kind::constant: {
            for (int i = 0; i < grid.n_points; ++i) m0[i] = spec.constant_value;
            break;
        }
        case InitialDataSpec::Kind::gaussian: {
            const double w = spec.width;
            if (!(w > 0.0)) throw std::invalid_argument("make_initial_data: width must be > 0");
            for (int i = 0; i < grid.n_points; ++i) {
                const double x = grid.node(i) - spec.center;
                m0[i] = spec.amplitude * std::exp(-(x * x) / (w * w));
            }
            break;
        }
        case InitialDataSpec::Kind::smoothed_peakon: {
            double eps = spec.smoothing;
            if (eps <= 0.0) eps = 8.0 * grid.spacing();
            if (eps < 4.0 * grid.spacing())
                throw std::invalid_argument(
                    "make_initial_data: smoothing below 4h is not grid-resolvable");
            for (int i = 0; i < grid.n_points; ++i) {
                const double x = grid.node(i) - spec.center;
                u0[i] = spec.amplitude * std::exp(-std::sqrt(x * x + eps * eps));
            }
            from_velocity = true;
            break;
        }
        case InitialDataSpec::Kind::band_limited_random: {
            std::mt19937_64 rng(spec.seed);
            auto unit = [&rng]() {
                // Uniform in [-1, 1); platform-independent given mt19937_64.
                return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
            };
            Spectrum coeffs(grid.n_modes(), 0.0);
            const double xi_top = std::ldexp(8.0 / 3.0, spec.max_block);
            for (int k = 1; k < grid.n_modes() - 1; ++k) {
                const double a = unit();
                const double b = unit();
                if (grid.frequency(k) <= xi_top) coeffs[k] = {a, b};
            }
            m0 = irfft(coeffs, grid);
            // Keep only blocks <= max_block exactly.
            m0 = low_cutoff(m0, spec.max_block + 1, bank);
            m0 *= spec.amplitude;
            break;
        }
    }

    if (from_velocity) m0 = momentum(u0);

    if (spec.normalize_besov > 0.0) {
        const double nrm = besov_norm(m0, BesovParams::critical(spec.besov_p), bank);
        if (nrm == 0.0)
            throw std::invalid_argument("make_initial_data: cannot normalize the zero field");
        m0 *= spec.normalize_besov / nrm;
    }
    return fields_from_momentum(m0);
}

}  // namespace gch
