#include <doctest.h>

#include <array>
#include <cmath>

#include "gch/experiments.hpp"
#include "gch/lagrange.hpp"

using namespace gch;

namespace {

GridFunction gaussian_m0(const GridSpec& g, double amp, double width = 2.0) {
    GridFunction m(g);
    for (int i = 0; i < g.n_points; ++i) {
        const double x = g.node(i);
        m[i] = amp * std::exp(-x * x / (width * width));
    }
    return m;
}

TimeControls controls(double dt, double t_end, int every = 1) {
    TimeControls c;
    c.dt = dt;
    c.t_end = t_end;
    c.output_every = every;
    return c;
}

// Direct double-loop evaluation of the periodized kernel sums, images
// |k| <= 1, as the slow reference for the recurrence-based version.
NonlocalIntegrals brute_force_integrals(const ParticleEnsemble& ens) {
    const int n = ens.size();
    const double period = 2.0 * ens.half_length;
    const double dxi = ens.label_spacing();
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
        const double ux = ens.uxi[i] / ens.yxi[i];
        const double dm = ens.u[i] - ens.m[i];
        w[i] = (ux * ux + 0.5 * dm * dm) * ens.yxi[i];
    }
    NonlocalIntegrals out;
    out.a.assign(n, 0.0);
    out.b.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double a = 0.0, b = 0.0;
        for (int j = 0; j < n; ++j) {
            const double d = ens.y[i] - ens.y[j];
            const double direct = std::exp(-std::abs(d));
            const double left = std::exp(-(period + d));    // image y_j - period
            const double right = std::exp(-(period - d));   // image y_j + period
            a += (direct + left + right) * w[j];
            double sgn = 0.0;
            if (j < i) sgn = -1.0;
            if (j > i) sgn = 1.0;
            b += (sgn * direct - left + right) * w[j];
        }
        out.a[i] = 0.5 * dxi * a;
        out.b[i] = 0.5 * dxi * b;
    }
    return out;
}

}  // namespace

TEST_CASE("particle initialization matches grid sampling") {
    const GridSpec grid(20.0, 512);
    GridFunction m0 = gaussian_m0(grid, 0.5);
    FieldPair fp = fields_from_momentum(m0);

    SUBCASE("particle count equal to the grid") {
        ParticleEnsemble ens = init_particles(m0, grid.n_points);
        double err = 0.0;
        for (int i = 0; i < grid.n_points; ++i) {
            err = std::max(err, std::abs(ens.y[i] - grid.node(i)));
            err = std::max(err, std::abs(ens.m[i] - m0[i]));
            err = std::max(err, std::abs(ens.u[i] - fp.u[i]));
            err = std::max(err, std::abs(ens.uxi[i] - fp.u_x[i]));
            err = std::max(err, std::abs(ens.yxi[i] - 1.0));
        }
        CHECK(err < 1e-12);
    }

    SUBCASE("off-grid count uses the trigonometric interpolant") {
        ParticleEnsemble ens = init_particles(m0, 384);
        // Every other particle of a 2x oversampled ensemble must coincide
        // with the 192-particle one.
        ParticleEnsemble half = init_particles(m0, 192);
        double err = 0.0;
        for (int i = 0; i < 192; ++i) {
            err = std::max(err, std::abs(ens.xi[2 * i] - half.xi[i]));
            err = std::max(err, std::abs(ens.m[2 * i] - half.m[i]));
            err = std::max(err, std::abs(ens.u[2 * i] - half.u[i]));
        }
        CHECK(err < 1e-9);
    }

    CHECK_THROWS_AS(init_particles(m0, 8), std::invalid_argument);
}

TEST_CASE("nonlocal integrals match the double-loop reference") {
    const GridSpec grid(20.0, 512);
    DyadicFilterBank bank(grid);
    GridFunction m0 = random_band_limited(grid, bank, 77, 4, 0.5);
    ParticleEnsemble ens = init_particles(m0, grid.n_points);

    SUBCASE("at the identity map") {
        NonlocalIntegrals fast = nonlocal_integrals(ens);
        NonlocalIntegrals slow = brute_force_integrals(ens);
        double err = 0.0;
        for (int i = 0; i < ens.size(); ++i) {
            err = std::max(err, std::abs(fast.a[i] - slow.a[i]));
            err = std::max(err, std::abs(fast.b[i] - slow.b[i]));
        }
        CHECK(err < 1e-12);
    }

    SUBCASE("after deformation") {
        TimeControls c = controls(2e-3, 0.2);
        LagrangeHistory hist = run_lagrange(m0, grid.n_points, c);
        REQUIRE_FALSE(hist.aborted);
        const ParticleEnsemble& late = hist.snapshots.back();
        NonlocalIntegrals fast = nonlocal_integrals(late);
        NonlocalIntegrals slow = brute_force_integrals(late);
        double err = 0.0;
        for (int i = 0; i < late.size(); ++i) {
            err = std::max(err, std::abs(fast.a[i] - slow.a[i]));
            err = std::max(err, std::abs(fast.b[i] - slow.b[i]));
        }
        CHECK(err < 1e-12);
    }
}

TEST_CASE("initial particle derivatives agree with the Eulerian right sides") {
    // The trapezoid nonlocal integral differs from the spectral convolution
    // at O(h^2), so the velocity right side is compared at two resolutions.
    auto gaps = [](int n) {
        const GridSpec grid(20.0, n);
        GridFunction m0(grid);
        for (int i = 0; i < n; ++i) {
            const double x = grid.node(i);
            m0[i] = 0.5 * std::exp(-x * x / 4.0);
        }
        FieldPair fp = fields_from_momentum(m0);
        ParticleEnsemble ens = init_particles(m0, n);
        LagrangeDerivatives d = rhs_lagrange(ens);
        GridFunction f = rhs_m_form(fp.m, fp.u, fp.u_x);
        GridFunction ru = rhs_u_form(fp.u);
        double err_m = 0.0, err_u = 0.0, err_y = 0.0;
        for (int i = 0; i < n; ++i) {
            err_m = std::max(err_m, std::abs(d.dm[i] - f[i]));
            err_u = std::max(err_u, std::abs(d.du[i] - ru[i]));
            err_y = std::max(err_y, std::abs(d.dy[i] + fp.u_x[i]));
        }
        return std::array<double, 3>{err_m, err_u, err_y};
    };
    auto coarse = gaps(512);
    auto fine = gaps(1024);
    CHECK(coarse[0] < 1e-10);
    CHECK(coarse[2] < 1e-12);
    CHECK(coarse[1] < 1e-4);
    CHECK(fine[1] < coarse[1] / 3.0);
}

TEST_CASE("constant state is an equilibrium of the characteristic system") {
    const GridSpec grid(20.0, 256);
    GridFunction m0(grid);
    for (auto& v : m0.values) v = 0.3;
    LagrangeHistory hist = run_lagrange(m0, grid.n_points, controls(1e-2, 0.3, 10));
    REQUIRE_FALSE(hist.aborted);
    const ParticleEnsemble& last = hist.snapshots.back();
    double err = 0.0;
    for (int i = 0; i < last.size(); ++i) {
        err = std::max(err, std::abs(last.m[i] - 0.3));
        err = std::max(err, std::abs(last.u[i] - 0.3));
        err = std::max(err, std::abs(last.yxi[i] - 1.0));
        err = std::max(err, std::abs(last.uxi[i]));
    }
    CHECK(err < 1e-10);
}

TEST_CASE("Jacobian equals the exponential of its accumulated log") {
    const GridSpec grid(20.0, 256);
    GridFunction m0 = gaussian_m0(grid, 0.5);
    LagrangeHistory hist = run_lagrange(m0, grid.n_points, controls(1e-3, 0.3, 50));
    REQUIRE_FALSE(hist.aborted);
    const ParticleEnsemble& last = hist.snapshots.back();
    double err = 0.0;
    for (int i = 0; i < last.size(); ++i)
        err = std::max(err, std::abs(last.yxi[i] - std::exp(last.log_yxi[i])));
    CHECK(err < 1e-9);
}

TEST_CASE("temporal convergence order of the characteristic integrator") {
    const GridSpec grid(20.0, 256);
    // Strong enough data that the dt^4 error is visible above roundoff.
    GridFunction m0 = gaussian_m0(grid, 2.0);
    auto final_u = [&](double dt) {
        LagrangeHistory hist = run_lagrange(m0, grid.n_points, controls(dt, 0.5, 1000000));
        REQUIRE_FALSE(hist.aborted);
        return hist.snapshots.back().u;
    };
    std::vector<double> u1 = final_u(2e-2);
    std::vector<double> u2 = final_u(1e-2);
    std::vector<double> u3 = final_u(5e-3);
    double e12 = 0.0, e23 = 0.0;
    for (size_t i = 0; i < u1.size(); ++i) {
        e12 = std::max(e12, std::abs(u1[i] - u2[i]));
        e23 = std::max(e23, std::abs(u2[i] - u3[i]));
    }
    const double order = std::log2(e12 / e23);
    CHECK(order > 3.8);
    CHECK(order < 4.6);
}

TEST_CASE("breaking detection") {
    const GridSpec grid(20.0, 256);
    GridFunction m0 = gaussian_m0(grid, 30.0, 1.0);
    LagrangeHistory hist = run_lagrange(m0, grid.n_points, controls(5e-4, 2.0, 10));
    BreakingReport rep = breaking_monitor(hist);
    CHECK(rep.breached);
    CHECK(rep.min_yxi < 0.5);
    CHECK(rep.t_of_min > 0.0);

    GridFunction small = gaussian_m0(grid, 0.1);
    LagrangeHistory calm = run_lagrange(small, grid.n_points, controls(1e-3, 0.3, 10));
    CHECK_FALSE(calm.aborted);
    CHECK_FALSE(breaking_monitor(calm).breached);
}

TEST_CASE("to_eulerian") {
    const GridSpec grid(20.0, 512);
    GridFunction m0 = gaussian_m0(grid, 0.5);
    FieldPair fp0 = fields_from_momentum(m0);

    SUBCASE("identity map round trip") {
        ParticleEnsemble ens = init_particles(m0, grid.n_points);
        FieldPair fp = to_eulerian(ens, grid);
        CHECK(max_abs_diff(fp.u, fp0.u) < 1e-12);
        CHECK(max_abs_diff(fp.m, m0) < 1e-12);
    }

    SUBCASE("evolved state matches the Eulerian solver") {
        const double T = 0.2;
        LagrangeHistory hist = run_lagrange(m0, grid.n_points, controls(1e-3, T, 1000000));
        REQUIRE_FALSE(hist.aborted);
        FieldPair fp = to_eulerian(hist.snapshots.back(), grid);

        DyadicFilterBank bank(grid);
        Trajectory traj =
            simulate(m0, controls(1e-3, T, 1000000), bank, BesovParams::critical(2.0));
        REQUIRE_FALSE(traj.aborted);
        CHECK(max_abs_diff(fp.u, traj.snapshots.back().u) < 1e-4);
    }
}
