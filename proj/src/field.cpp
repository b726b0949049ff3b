#include "zk/field.hpp"

#include <algorithm>
#include <cmath>

#include "zk/fft.hpp"

namespace zk {

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    require_same_grid(grid_, o.grid_, "operator+");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    require_same_grid(grid_, o.grid_, "operator-");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(cplx a) {
    for (auto& v : c_) v *= a;
    return *this;
}

SpectralField SpectralField::conjugated() const {
    SpectralField out(grid_);
    const int M = grid_.M;
    // conj(f)^hat(j) = conj(f^hat(-j)); the Nyquist mode -M/2 reflects onto itself.
    for (int j = -M / 2 + 1; j < M / 2; ++j)
        out.set_coeff(j, std::conj(coeff(-j)));
    out.set_coeff(-M / 2, std::conj(coeff(-M / 2)));
    return out;
}

SpectralField forward_transform(const Grid& g, const std::vector<cplx>& samples) {
    if (static_cast<int>(samples.size()) != g.M)
        throw DimensionError("forward_transform: sample count does not match grid");
    SpectralField f(g);
    f.raw() = samples;
    fft::forward(f.raw());
    return f;
}

std::vector<cplx> inverse_transform(const SpectralField& f) {
    std::vector<cplx> samples = f.raw();
    fft::backward(samples);
    return samples;
}

SpectralField field_from_profile(const Grid& g, const std::function<cplx(double)>& profile) {
    std::vector<cplx> samples(static_cast<size_t>(g.M));
    for (int i = 0; i < g.M; ++i) samples[static_cast<size_t>(i)] = profile(g.x(i));
    return forward_transform(g, samples);
}

double sobolev_norm(const SpectralField& f, double s) {
    const Grid& g = f.grid();
    double acc = 0.0;
    for (int j = g.j_min(); j <= g.j_max(); ++j)
        acc += std::pow(bracket(g.xi(j)), 2.0 * s) * std::norm(f.coeff(j));
    return std::sqrt(g.L * acc);
}

double homogeneous_sobolev_norm(const SpectralField& f, double s) {
    const Grid& g = f.grid();
    if (s < 0.0) {
        double zero = std::abs(f.coeff(0));
        double peak = max_coeff_abs(f);
        if (zero > 1e-12 * std::max(peak, 1e-300))
            throw ZeroModeError("homogeneous_sobolev_norm: nonzero mean with negative exponent");
    }
    double acc = 0.0;
    for (int j = g.j_min(); j <= g.j_max(); ++j) {
        if (j == 0) continue;
        acc += std::pow(std::abs(g.xi(j)), 2.0 * s) * std::norm(f.coeff(j));
    }
    return std::sqrt(g.L * acc);
}

cplx inner_product(const SpectralField& f, const SpectralField& g) {
    require_same_grid(f.grid(), g.grid(), "inner_product");
    cplx acc(0.0);
    for (size_t i = 0; i < f.raw().size(); ++i) acc += f.raw()[i] * std::conj(g.raw()[i]);
    return f.grid().L * acc;
}

SpectralField apply_multiplier(const SpectralField& f, const std::function<cplx(double)>& symbol) {
    const Grid& g = f.grid();
    SpectralField out(g);
    for (int j = g.j_min(); j <= g.j_max(); ++j)
        out.set_coeff(j, symbol(g.xi(j)) * f.coeff(j));
    return out;
}

SpectralField derivative(const SpectralField& f, int order) {
    const Grid& g = f.grid();
    SpectralField out(g);
    for (int j = g.j_min(); j <= g.j_max(); ++j) {
        cplx m = std::pow(cplx(0.0, g.xi(j)), order);
        out.set_coeff(j, m * f.coeff(j));
    }
    return out;
}

SpectralField half_deriv_abs(const SpectralField& f) {
    const Grid& g = f.grid();
    SpectralField out(g);
    for (int j = g.j_min(); j <= g.j_max(); ++j)
        out.set_coeff(j, (j == 0 ? cplx(0.0) : std::sqrt(std::abs(g.xi(j))) * f.coeff(j)));
    return out;
}

SpectralField inverse_abs_deriv(const SpectralField& f, bool* had_zero_mode) {
    const Grid& g = f.grid();
    SpectralField out(g);
    if (had_zero_mode)
        *had_zero_mode = std::abs(f.coeff(0)) > 1e-12 * std::max(max_coeff_abs(f), 1e-300);
    for (int j = g.j_min(); j <= g.j_max(); ++j)
        out.set_coeff(j, (j == 0 ? cplx(0.0) : f.coeff(j) / std::abs(g.xi(j))));
    return out;
}

SpectralField abs_deriv(const SpectralField& f) {
    const Grid& g = f.grid();
    SpectralField out(g);
    for (int j = g.j_min(); j <= g.j_max(); ++j)
        out.set_coeff(j, (j == 0 ? cplx(0.0) : std::abs(g.xi(j)) * f.coeff(j)));
    return out;
}

bool inside_dealias_band(const Grid& g, int j) { return 3 * std::abs(j) <= g.M; }

void truncate_to_dealias_band(SpectralField& f) {
    const Grid& g = f.grid();
    for (int j = g.j_min(); j <= g.j_max(); ++j)
        if (!inside_dealias_band(g, j)) f.set_coeff(j, cplx(0.0));
}

SpectralField dealiased_product(const SpectralField& f, const SpectralField& g) {
    require_same_grid(f.grid(), g.grid(), "dealiased_product");
    SpectralField a = f, b = g;
    truncate_to_dealias_band(a);
    truncate_to_dealias_band(b);
    std::vector<cplx> pa = inverse_transform(a);
    std::vector<cplx> pb = inverse_transform(b);
    for (size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
    SpectralField out = forward_transform(f.grid(), pa);
    truncate_to_dealias_band(out);
    return out;
}

SpectralField collocation_product(const SpectralField& f, const SpectralField& g) {
    require_same_grid(f.grid(), g.grid(), "collocation_product");
    std::vector<cplx> pa = inverse_transform(f);
    std::vector<cplx> pb = inverse_transform(g);
    for (size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
    return forward_transform(f.grid(), pa);
}

bool is_real_valued(const SpectralField& f, double tol) {
    const Grid& g = f.grid();
    double scale = std::max(max_coeff_abs(f), 1e-300);
    if (std::abs(std::imag(f.coeff(0))) > tol * scale) return false;
    if (std::abs(std::imag(f.coeff(g.j_min()))) > tol * scale) return false;
    for (int j = 1; j < g.M / 2; ++j)
        if (std::abs(f.coeff(-j) - std::conj(f.coeff(j))) > tol * scale) return false;
    return true;
}

double max_coeff_abs(const SpectralField& f) {
    double peak = 0.0;
    for (const auto& v : f.raw()) peak = std::max(peak, std::abs(v));
    return peak;
}

bool all_finite(const SpectralField& f) {
    for (const auto& v : f.raw())
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

} // namespace zk
