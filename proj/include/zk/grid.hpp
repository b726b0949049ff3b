#ifndef ZK_GRID_HPP
#define ZK_GRID_HPP

#include <cmath>
#include <numbers>

#include "zk/errors.hpp"

namespace zk {

// Periodic box [0, L) sampled at M equispaced points.  Spectral content lives on the
// integer mode ladder j = -M/2 .. M/2-1 with physical wavenumber xi_j = 2*pi*j/L.
struct Grid {
    double L = 64.0 * std::numbers::pi;
    int M = 512;

    Grid() = default;
    Grid(double box, int modes) : L(box), M(modes) {
        if (!(L > 0.0))
            throw DomainError("Grid: box length must be positive");
        if (M < 4 || M % 2 != 0)
            throw DomainError("Grid: mode count must be even and at least 4");
    }

    double dx() const { return L / M; }
    double x(int i) const { return i * dx(); }

    int j_min() const { return -M / 2; }
    int j_max() const { return M / 2 - 1; }

    // Physical wavenumber of mode j.
    double xi(int j) const { return 2.0 * std::numbers::pi * j / L; }

    // Smallest positive wavenumber and the largest representable one.
    double xi_step() const { return 2.0 * std::numbers::pi / L; }
    double xi_max() const { return xi(M / 2 - 1); }

    // Storage slot of mode j (FFT layout: nonnegative modes first).
    int slot(int j) const { return j >= 0 ? j : j + M; }

    bool operator==(const Grid& o) const { return L == o.L && M == o.M; }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (a != b)
        throw DimensionError(std::string(where) + ": operands on different grids");
}

// Japanese bracket <x> = sqrt(1 + x^2).
inline double bracket(double x) { return std::sqrt(1.0 + x * x); }

// Positive part with a floor at zero: x for x > 0, eps for x == 0, 0 for x < 0.
inline double plus_part(double x, double eps = 1e-3) {
    if (x > 0.0) return x;
    if (x == 0.0) return eps;
    return 0.0;
}

} // namespace zk

#endif
