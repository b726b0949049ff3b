#ifndef ZK_FIELD_HPP
#define ZK_FIELD_HPP

#include <complex>
#include <functional>
#include <vector>

#include "zk/grid.hpp"

namespace zk {

using cplx = std::complex<double>;

// A periodic field stored by its Fourier coefficients c_j, with the convention
//   f(x) = sum_j c_j exp(i xi_j x),   xi_j = 2 pi j / L,   j = -M/2 .. M/2-1,
// and the L^2 pairing ||f||^2 = L * sum_j |c_j|^2.  Coefficients sit in FFT
// storage order; use coeff(j)/set_coeff(j) to address modes by their index.
class SpectralField {
public:
    SpectralField() : grid_(), c_(static_cast<size_t>(grid_.M), cplx(0.0)) {}
    explicit SpectralField(const Grid& g) : grid_(g), c_(static_cast<size_t>(g.M), cplx(0.0)) {}

    const Grid& grid() const { return grid_; }
    int modes() const { return grid_.M; }

    cplx coeff(int j) const { return c_[static_cast<size_t>(grid_.slot(j))]; }
    void set_coeff(int j, cplx v) { c_[static_cast<size_t>(grid_.slot(j))] = v; }

    std::vector<cplx>& raw() { return c_; }
    const std::vector<cplx>& raw() const { return c_; }

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(cplx a);

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(cplx a, SpectralField f) { return f *= a; }

    // Complex conjugate of the physical-space field (spectral reflection).
    SpectralField conjugated() const;

private:
    Grid grid_;
    std::vector<cplx> c_;
};

// Collocation samples at x_i = i L / M -> coefficients, and back.
SpectralField forward_transform(const Grid& g, const std::vector<cplx>& samples);
std::vector<cplx> inverse_transform(const SpectralField& f);

// Sample a closed-form profile on the grid and transform.
SpectralField field_from_profile(const Grid& g, const std::function<cplx(double)>& profile);

// (L * sum_j <xi_j>^{2s} |c_j|^2)^{1/2}.
double sobolev_norm(const SpectralField& f, double s);

// (L * sum_{j != 0} |xi_j|^{2s} |c_j|^2)^{1/2}.  For s < 0 the zero mode must
// vanish (relative to the largest coefficient); otherwise ZeroModeError.
double homogeneous_sobolev_norm(const SpectralField& f, double s);

inline double l2_norm(const SpectralField& f) { return sobolev_norm(f, 0.0); }

// L * sum_j f_j conj(g_j): the L^2 inner product (f, g).
cplx inner_product(const SpectralField& f, const SpectralField& g);

// Apply a Fourier multiplier xi -> m(xi) to every mode.
SpectralField apply_multiplier(const SpectralField& f, const std::function<cplx(double)>& symbol);

// d/dx and |d/dx|^{\pm 1/2}-type operators used throughout.
SpectralField derivative(const SpectralField& f, int order = 1);

// Multiplier |xi|^{1/2}; by convention the zero mode goes to 0.
SpectralField half_deriv_abs(const SpectralField& f);

// Multiplier |xi|^{-1}, zero mode -> 0.  If a nonvanishing zero mode was dropped
// and had_zero_mode is non-null, *had_zero_mode is set.
SpectralField inverse_abs_deriv(const SpectralField& f, bool* had_zero_mode = nullptr);

// Multiplier |xi|, zero mode -> 0.
SpectralField abs_deriv(const SpectralField& f);

// Zero every mode with 3|j| > M (the 2/3 rule band).
void truncate_to_dealias_band(SpectralField& f);
bool inside_dealias_band(const Grid& g, int j);

// Pointwise product with 2/3-rule dealiasing on both inputs and the output.
// Exact on the retained band whenever both inputs are supported inside it.
SpectralField dealiased_product(const SpectralField& f, const SpectralField& g);

// Pointwise product on the collocation grid, no truncation anywhere.
SpectralField collocation_product(const SpectralField& f, const SpectralField& g);

// Conjugate symmetry c_{-j} = conj(c_j), i.e. the physical field is real.
bool is_real_valued(const SpectralField& f, double tol = 1e-10);

// Largest |c_j|.
double max_coeff_abs(const SpectralField& f);

bool all_finite(const SpectralField& f);

} // namespace zk

#endif
