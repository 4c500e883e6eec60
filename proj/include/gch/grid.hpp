#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gch {

// Uniform periodic grid on [-L, L).
struct GridSpec {
    double half_length = 20.0;  // L
    int n_points = 1024;        // N, power of two

    GridSpec() = default;
    GridSpec(double L, int N) : half_length(L), n_points(N) { validate(); }

    void validate() const {
        if (!(half_length > 0.0))
            throw std::invalid_argument("GridSpec: half_length must be positive");
        if (n_points < 16)
            throw std::invalid_argument("GridSpec: need at least 16 points");
        if ((n_points & (n_points - 1)) != 0)
            throw std::invalid_argument("GridSpec: n_points must be a power of two");
    }

    double spacing() const { return 2.0 * half_length / n_points; }
    double node(int i) const { return -half_length + i * spacing(); }
    // Angular frequency of one-sided mode k (k = 0..N/2).
    double frequency(int k) const { return M_PI * k / half_length; }
    int n_modes() const { return n_points / 2 + 1; }

    friend bool operator==(const GridSpec& a, const GridSpec& b) {
        return a.half_length == b.half_length && a.n_points == b.n_points;
    }
    friend bool operator!=(const GridSpec& a, const GridSpec& b) { return !(a == b); }
};

// Samples of a real periodic function on a GridSpec.
struct GridFunction {
    GridSpec grid;
    std::vector<double> values;

    GridFunction() = default;
    explicit GridFunction(const GridSpec& g) : grid(g), values(g.n_points, 0.0) {}
    GridFunction(const GridSpec& g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (static_cast<int>(values.size()) != g.n_points)
            throw std::invalid_argument("GridFunction: value count does not match grid");
    }

    int size() const { return grid.n_points; }
    double& operator[](int i) { return values[i]; }
    double operator[](int i) const { return values[i]; }

    void check_same_grid(const GridFunction& other, const char* op) const {
        if (grid != other.grid)
            throw std::invalid_argument(std::string("grid mismatch in ") + op);
    }

    GridFunction& operator+=(const GridFunction& o) {
        check_same_grid(o, "operator+=");
        for (int i = 0; i < size(); ++i) values[i] += o.values[i];
        return *this;
    }
    GridFunction& operator-=(const GridFunction& o) {
        check_same_grid(o, "operator-=");
        for (int i = 0; i < size(); ++i) values[i] -= o.values[i];
        return *this;
    }
    GridFunction& operator*=(double a) {
        for (double& v : values) v *= a;
        return *this;
    }

    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(double a, GridFunction u) { return u *= a; }

    // Pointwise product (no dealiasing; see spectral::multiply_dealiased).
    friend GridFunction operator*(const GridFunction& a, const GridFunction& b) {
        a.check_same_grid(b, "operator*");
        GridFunction out(a.grid);
        for (int i = 0; i < a.size(); ++i) out.values[i] = a.values[i] * b.values[i];
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

inline double max_abs_diff(const GridFunction& a, const GridFunction& b) {
    a.check_same_grid(b, "max_abs_diff");
    double m = 0.0;
    for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

// Integral over one period by the rectangle rule (exact for trigonometric
// polynomials on this grid).
inline double integrate(const GridFunction& u) {
    double s = 0.0;
    for (double v : u.values) s += v;
    return s * u.grid.spacing();
}

}  // namespace gch
