#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gch/spectral.hpp"

namespace gch {

// Velocity u, momentum m = u - u_xx, with cached derivatives of u.
struct FieldPair {
    GridFunction u;
    GridFunction m;
    GridFunction u_x;
    GridFunction u_xx;
};

// u = (1 - d_xx)^{-1} m via the periodic symbol 1/(1 + xi^2). This is the
// Green's-kernel convolution G * m with G(x) = (1/2) e^{-|x|}; the identity
// is pinned by the momentum round-trip test rather than assumed.
GridFunction helmholtz_inverse(const GridFunction& m);

// G * f and (d_x G) * f.
GridFunction green_convolve(const GridFunction& f);
GridFunction green_deriv_convolve(const GridFunction& f);

// m = u - u_xx.
GridFunction momentum(const GridFunction& u);

// Build a consistent FieldPair from the momentum variable.
FieldPair fields_from_momentum(const GridFunction& m);
FieldPair fields_from_velocity(const GridFunction& u);

// Pointwise source F = -m^2/2 + u m + u_x^2/2 - u^2/2.
GridFunction rhs_m_form(const GridFunction& m, const GridFunction& u, const GridFunction& u_x);

// G * (u_x^2 + u_xx^2/2) - u_x^2/2, the transport right side for u along
// dy/dt = -u_x.
GridFunction rhs_u_form(const GridFunction& u);

struct InitialDataSpec {
    enum class Kind { gaussian, smoothed_peakon, band_limited_random, constant };
    Kind kind = Kind::gaussian;
    double amplitude = 0.2;
    double width = 2.0;          // gaussian
    double center = 0.0;         // gaussian
    double smoothing = -1.0;     // smoothed_peakon; <= 0 means default 8h
    std::uint64_t seed = 0;      // band_limited_random
    int max_block = 4;           // band_limited_random
    double constant_value = 0.0; // constant
    // If > 0, rescale so that ||m0||_{B^{1/p}_{p,1}} equals this value.
    double normalize_besov = 0.0;
    double besov_p = 2.0;
};

// Generates (u0, m0) with m0 = momentum(u0). The gaussian/band-limited kinds
// prescribe the m0 profile; the smoothed peakon prescribes u0.
FieldPair make_initial_data(const InitialDataSpec& spec, const GridSpec& grid,
                            const DyadicFilterBank& bank);

}  // namespace gch
