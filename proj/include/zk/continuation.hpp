#ifndef ZK_CONTINUATION_HPP
#define ZK_CONTINUATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "zk/conservation.hpp"
#include "zk/evolution.hpp"
#include "zk/split.hpp"
#include "zk/state.hpp"

namespace zk {

// Random data that is genuinely rough at scale s: |u0^(xi_j)| =
// amplitude * <xi_j>^{-(s + 1/2 + extra_decay)} with counter-indexed phases,
// so u0 lies in H^s but its H^1 norm grows like M^{1 - s - extra_decay}.
// n0 and n1 are real band-limited noise; n1 has zero mean.
struct RoughDataConfig {
    double s = 0.95;
    double extra_decay = 0.05;
    double amplitude = 1.0;
    int wave_band = 8;             // |j| <= wave_band modes carry the wave noise
    double wave_amplitude = -1.0;  // < 0 -> amplitude / 2
};

SecondOrderData rough_data(const Grid& g, const RoughDataConfig& cfg, uint64_t seed,
                           int member = 0);

// Smooth seeded data: Gaussian spectral envelopes whose tails drop below
// roundoff well inside the dealias band, so pointwise and truncated product
// conventions act identically and conservation checks see no aliasing floor.
struct SmoothDataConfig {
    double amplitude = 0.5;        // target ||u0||_{L2}
    double width = 1.2;            // u0 envelope width in xi
    double wave_amplitude = -1.0;  // target ||n0||_{L2}; < 0 -> amplitude / 2
    double wave_width = -1.0;      // n0/n1 envelope width; < 0 -> width
};

SecondOrderData smooth_data(const Grid& g, const SmoothDataConfig& cfg, uint64_t seed,
                            int member = 0);

struct PipelineConfig {
    Grid grid;
    double s = 0.95;
    double delta = 0.05;
    double cutoff = 8.0;   // <= 0 selects N = select_cutoff(horizon, s, margin)
    double horizon = 1.0;  // target time for the automatic cutoff
    double margin = 2.0;
    EvolveMethod method = EvolveMethod::duhamel;
    FixedPointOptions fp;
};

// Rolling state of the interval-by-interval continuation: the regular component
// evolves nonlinearly, the rough tail u02 rides the free flow, and u0_full keeps
// the original datum so the remainder against the full free evolution is exact.
struct PipelineState {
    FirstOrderState regular;
    SpectralField u02;
    SpectralField u0_full;
    SplitData initial_split;
    double cutoff = 0.0;
    double interval = 0.0;
    double elapsed = 0.0;
    int index = 0;
    // Increment-bound constants fitted on interval zero and then held fixed:
    // c2 from the carrier ||w(|I|)||_{L2} (the quantity the per-interval mass
    // jump is dominated by), c3 from the energy-increment majorant.
    double c2 = 0.0, c3 = 0.0;
};

// Split the datum at the cutoff and prepare interval zero.  Throws CapacityError
// when the cutoff reaches the grid bandwidth (no rough tail representable).
PipelineState init_pipeline(const SecondOrderData& data, const PipelineConfig& cfg);

// Per-interval ledger.  Mass/energy refer to the regular component, whose data
// are re-absorbed at each interval end; w and m_pm are the inhomogeneous parts
// of the difference system at the interval end.
//
// The raw increments are cancellation-prone (the cross term <u~, w> carries an
// arbitrary phase), so each comes with its carrier: mass_increment <= w_l2 by
// the triangle inequality, and energy_increment <= energy_carrier, the
// Cauchy-Schwarz majorant assembled from the endpoint norms before absorption.
// bound_mass_incr / bound_energy_incr are the per-interval bound values
// c2 N^{-3/2+3s/4} and c3 N^{5/2-3s} with constants frozen on interval zero.
struct ContinuationReport {
    int index = 0;
    double t_start = 0.0;
    double t_end = 0.0;
    double interval = 0.0;
    double mass_start = 0.0, mass_end = 0.0, mass_increment = 0.0;
    double energy_start = 0.0, energy_end = 0.0, energy_increment = 0.0;
    double w_l2 = 0.0, w_h1 = 0.0;
    double m_l2 = 0.0;
    double energy_carrier = 0.0;
    double bound_mass_incr = 0.0, bound_energy_incr = 0.0;
    bool energy_bound_violated = false;
    double u02_hs = 0.0;
    double remainder_h1 = 0.0;
    double n_l2 = 0.0, nt_hm1 = 0.0;
    double contraction = 0.0;
    int iterations = 0;
};

// Advance one interval: solve regular + difference systems, absorb (w, m_pm)
// into the regular data, free-propagate the rough tail, and report.
ContinuationReport advance_interval(PipelineState& st, const PipelineConfig& cfg);

struct GlobalRunResult {
    std::vector<ContinuationReport> reports;
    double cutoff = 0.0;
    double interval = 0.0;
    double slope = 0.0;               // log-log fit of remainder_h1 against t_end
    bool slope_defined = false;
    double reference_exponent = 0.0;  // (1 - s) / (5 s - 9/2)
    std::string note;
};

GlobalRunResult run_global(const SecondOrderData& data, const PipelineConfig& cfg, int intervals);

// Exponent ledger and measured-increment regression for a finished run.
//
// Two-layer check.  (1) Dominance: each interval's raw increments must sit
// below their carriers — mass_increment <= w_l2 (triangle inequality, exact)
// and energy_increment <= energy_carrier (Cauchy-Schwarz majorant; small
// quadrature allowance).  (2) Regression: constants c2, c3 are fitted on the
// first interval's carriers and held fixed; later intervals' carriers must
// stay within `margin` times the fitted per-interval bounds
//   mass:   c2 N^{-3/2 + 3s/4},       energy: c3 N^{5/2 - 3s}.
// Together these bound every raw increment by margin times the fitted c2/c3
// bound.  The accumulated energy increment must also stay within margin times
// the initial energy scale.
struct AuditResult {
    double mass_exponent = 0.0;    // -3/2 + 3s/4
    double energy_exponent = 0.0;  // 5/2 - 3s
    double c2 = 0.0, c3 = 0.0;
    double bound_mass_incr = 0.0;    // c2 N^{mass_exponent}
    double bound_energy_incr = 0.0;  // c3 N^{energy_exponent}
    bool mass_dominated = false;     // every mass_increment <= its carrier w_l2
    bool energy_dominated = false;   // every energy_increment <= energy_carrier
    double max_mass_slack = 0.0;     // max_i w_l2(i) / bound_mass_incr
    double max_energy_slack = 0.0;   // max_i energy_carrier(i) / bound_energy_incr
    bool regression_ok = false;
    double total_energy_increment = 0.0;
    double energy_allowance = 0.0;
    bool energy_ok = false;
    double steps_exponent = 0.0;    // 4(1-s)
    double lhs_exponent = 0.0;      // 5(1-s) + 3/2 - 2s, total accumulated increment
    double rhs_exponent = 0.0;      // 2(1-s), allowed energy size
    double exponent_gap = 0.0;      // lhs - rhs = 9/2 - 5s
    std::string regime;             // "stable" (gap < 0), "marginal", "unstable"
};

AuditResult increment_audit(const std::vector<ContinuationReport>& reports, double s, double N,
                            double margin = 4.0);

} // namespace zk

#endif
