#include "gch/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace gch {

namespace {
// FFTW plan creation is not thread-safe; execution of distinct plans is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

Spectrum rfft(const GridFunction& u) {
    const int n = u.size();
    std::vector<double> in(u.values);
    Spectrum out(n / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_r2c_1d(n, in.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()),
                                    FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    if (!plan) throw std::runtime_error("rfft: fftw plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

GridFunction irfft(const Spectrum& spec, const GridSpec& grid) {
    const int n = grid.n_points;
    if (static_cast<int>(spec.size()) != n / 2 + 1)
        throw std::invalid_argument("irfft: spectrum size does not match grid");
    Spectrum in(spec);  // c2r destroys its input
    GridFunction out(grid);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                    out.values.data(), FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("irfft: fftw plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    const double inv_n = 1.0 / n;
    for (double& v : out.values) v *= inv_n;
    return out;
}

GridFunction apply_multiplier(const GridFunction& u, const std::vector<double>& sigma) {
    if (static_cast<int>(sigma.size()) != u.grid.n_modes())
        throw std::invalid_argument("apply_multiplier: multiplier size mismatch");
    Spectrum spec = rfft(u);
    for (size_t k = 0; k < spec.size(); ++k) spec[k] *= sigma[k];
    return irfft(spec, u.grid);
}

}  // namespace gch
