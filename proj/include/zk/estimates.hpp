#ifndef ZK_ESTIMATES_HPP
#define ZK_ESTIMATES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "zk/spacetime.hpp"

namespace zk {

// Exponent tuple for the bilinear space-time estimates
//   || n u ||_{X^{s,-a1}}  <= C || n ||_{X^{l,a};wave} || u ||_{X^{k,a2}}   (Schrodinger form)
//   || |d/dx|^{-1/2} dxx (u1 conj u2) ||_{X^{l,-a};wave} <= C prod ||ui||_{X^{k,ai}}  (wave form)
struct EstimateParams {
    double s = 1.0;
    double k = 0.51;
    double l = 0.0;
    double a = 0.51;
    double a1 = 0.5;
    double a2 = 0.26;
};

struct ConditionReport {
    bool ok = true;
    std::vector<std::string> violated;  // human-readable inequalities that fail
};

// Admissibility conditions for the Schrodinger-output estimate.  Strict
// inequalities are strict here; the s - l bound is allowed with equality.
ConditionReport check_conditions_p11(const EstimateParams& p);

// Conditions for the wave-output estimate (a1 plays no role there).
ConditionReport check_conditions_p12(const EstimateParams& p);

// Reference parameter points satisfying the two condition sets with margin eps.
EstimateParams admissible_point_p11(double eps = 0.01);
EstimateParams admissible_point_p12(double eps = 0.01);

// Inadmissible tuple whose only failing conditions are the s - k bounds; used to
// drive the adversarial growth probe.
EstimateParams adversarial_params();

// Tuple violating the s - l <= 2 a1 bound badly enough that the case-aa kernel
// supremum grows like R^2 in the truncation radius.
EstimateParams kernel_divergence_probe();

// Measured constant of the Schrodinger-form estimate on concrete fields:
//   xsb_norm(n u, s, -a1) / (xsb_norm(n, l, a; phase_n) * xsb_norm(u, k, a2)).
double bilinear_ratio(const SpaceTimeField& n, const SpaceTimeField& u, const EstimateParams& p,
                      PropagatorKind phase_n = PropagatorKind::half_wave_plus);

struct BilinearSample {
    SpaceTimeField n;
    SpaceTimeField u;
};

// Random pair with spectra |n^| = <xi>^{-(l+1.2)} <tau+|xi|>^{-(a+1.2)},
// |u^| = <xi>^{-(k+1.2)} <tau+xi^2>^{-(a2+1.2)} and counter-indexed phases keyed
// by the absolute mode pair (j, m): refining M or T keeps every existing mode.
BilinearSample ensemble_member(const Grid& g, double window, int t_samples,
                               const EstimateParams& p, uint64_t seed, int member);

// Two exact lattice spikes (on L = W = 2 pi grids) that resonate: n sits at
// (xi, tau) = (1, -1) with zero wave modulation, u at (K, -(K+1)^2 + 1) with
// modulation -2K, and the product mode (K+1, -(K+1)^2) has zero Schrodinger
// modulation.  K is the largest spike frequency the dealias bands admit; under
// adversarial_params() the measured ratio grows like K^{s - k - a2}.
BilinearSample adversarial_pair(const Grid& g, double window, int t_samples, int* k_out = nullptr);

// Case split of the kernel supremum for the Schrodinger-form estimate, region a
// being |xi1| >= 2 |xi2| with aa/ab/ac by which modulation dominates, region b
// the complement without a dominance assumption.
enum class KernelRegime { case_aa, case_ab, case_ac, region_b };

struct KernelScan {
    double value = 0.0;            // supremum estimate at the last radius evaluated
    bool converged = false;        // last doubling changed the value by < 5%
    bool diverged = false;         // three consecutive doublings each grew by > 5%
    std::vector<double> radii;
    std::vector<double> level_values;
};

// Evaluate sup over the outer variables of the inner (xi, sigma)-integral of the
// squared kernel, on truncation radii radius0 * 2^i, i < max_levels, stopping
// early once stabilized.  resolution scales both the outer lattice and the
// graded quadrature of the inner integrals.
KernelScan kernel_supremum(const EstimateParams& p, KernelRegime regime, int resolution = 20,
                           double radius0 = 8.0, int max_levels = 4,
                           PropagatorKind phase_n = PropagatorKind::half_wave_plus);

const char* kernel_regime_name(KernelRegime r);

} // namespace zk

#endif
