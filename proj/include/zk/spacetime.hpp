#ifndef ZK_SPACETIME_HPP
#define ZK_SPACETIME_HPP

#include <string>
#include <vector>

#include "zk/evolution.hpp"
#include "zk/field.hpp"

namespace zk {

// Smooth window built from exp(-1/x): identically 1 for |t - center| <= plateau_radius,
// identically 0 for |t - center| >= support_radius, C-infinity in between.
struct TaperSpec {
    double center = 0.0;
    double plateau_radius = 0.25;
    double support_radius = 0.5;
};

double taper_value(const TaperSpec& spec, double t);

// Plateau on the middle half of [0, window], vanishing at the edges.
TaperSpec default_taper(double window);

// A field on the periodic space-time box [0,L) x [0,W), held by its double Fourier
// coefficients with the convention
//   f(x,t) = sum_{j,m} F_{j,m} exp(i (xi_j x + tau_m t)),  tau_m = 2 pi m / W,
// so a free Schrodinger mode e^{i(xi x - xi^2 t)} concentrates at tau = -xi^2 and
// the modulation weight <tau + phi(xi)> is O(1) exactly on free solutions.
class SpaceTimeField {
public:
    SpaceTimeField() = default;
    SpaceTimeField(const Grid& g, double window, int t_samples);

    // Uniform time slices (spatial spectra) -> space-time spectrum.
    static SpaceTimeField from_slices(const Grid& g, double window,
                                      const std::vector<SpectralField>& slices);

    // Physical samples, time-major: samples[k * M + i] = f(x_i, t_k).
    static SpaceTimeField from_physical(const Grid& g, double window,
                                        const std::vector<cplx>& samples);

    const Grid& grid() const { return grid_; }
    double window() const { return W_; }
    int t_samples() const { return T_; }

    int m_min() const { return -T_ / 2; }
    int m_max() const { return T_ / 2 - 1; }
    double tau(int m) const;

    cplx spectrum(int j, int m) const { return spec_[index(j, m)]; }
    void set_spectrum(int j, int m, cplx v) { spec_[index(j, m)] = v; }

    std::vector<cplx> physical() const;

    // Multiply by a time window in physical space.
    void apply_taper(const TaperSpec& spec);

private:
    size_t index(int j, int m) const;
    Grid grid_;
    double W_ = 1.0;
    int T_ = 0;
    std::vector<cplx> spec_;
};

// Dispersive phase weight sigma = tau + phi(xi):
//   schrodinger      phi(xi) = xi^2
//   half_wave_plus   phi(xi) = |xi|
//   half_wave_minus  phi(xi) = -|xi|
double phase_symbol(PropagatorKind kind, double xi);

// || <xi>^s <tau + phi(xi)>^b F ||_{L^2} under the L^2(x,t)-matching normalization
// sqrt(L W sum |F_{j,m}|^2).
double xsb_norm(const SpaceTimeField& f, double s, double b, PropagatorKind phase);

// Same with |xi|^s in place of <xi>^s; the spatial zero mode must vanish when s < 0.
double xsb_norm_homogeneous(const SpaceTimeField& f, double s, double b, PropagatorKind phase);

// || <xi>^s <tau + phi(xi)>^{-1} F ||_{L^2_xi L^1_tau} under the same dictionary.
double ys_norm(const SpaceTimeField& f, double s, PropagatorKind phase);

// Mixed Lebesgue norm L^q_t L^r_x by collocation quadrature; q or r may be inf.
double lq_lr_norm(const SpaceTimeField& f, double q, double r);

// Pointwise product with 2/3-rule truncation in both xi and tau, before and after.
SpaceTimeField spacetime_product(const SpaceTimeField& f, const SpaceTimeField& g);

struct StrichartzCheck {
    bool admissible = false;
    std::string reason;
};

// Exponent bookkeeping for the family 2/q = 1 - eta b/b0, 1/2 - 1/r = (1-eta) b/b0
// with b0 > 1/2, 0 <= b <= b0, 1/2 <= eta <= 1.
StrichartzCheck strichartz_admissible(double q, double r, double b);

// ||f||_{L^q_t L^r_x} / xsb_norm(f, 0, b, schrodinger).  DomainError when (q, r, b)
// is not admissible, DegenerateInputError when the denominator vanishes.
double strichartz_ratio(const SpaceTimeField& f, double q, double r, double b);

enum class StateComponent { u, n_plus, n_minus };

struct RestrictionOptions {
    int t_samples = 256;
    // Support radius of the taper is (1/2 + support_margin) * |I|; the plateau
    // always covers [0, |I|] exactly.
    double support_margin = 0.75;
};

// Upper bound for the time-restricted norm ||f||_{X^{s,b}(I)}: the trajectory is
// reflected evenly across both interval ends onto [-|I|, 2|I|], tapered with a
// smooth window that is 1 on I and vanishes before the extension edges, and the
// global norm of that extension is returned.
double restricted_norm(const TrajectorySlice& traj, StateComponent comp, double s, double b,
                       PropagatorKind phase, const RestrictionOptions& opts = {});

// Same reflect-and-taper construction for an arbitrary sampled field path.
double restricted_norm_of_path(const std::vector<double>& times,
                               const std::vector<SpectralField>& fields,
                               const std::vector<size_t>& panel_starts, double s, double b,
                               PropagatorKind phase, const RestrictionOptions& opts = {});

} // namespace zk

#endif
