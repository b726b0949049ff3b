#ifndef ZK_EVOLUTION_HPP
#define ZK_EVOLUTION_HPP

#include <vector>

#include "zk/state.hpp"

namespace zk {

// Exact linear flows, as diagonal phase multipliers:
//   schrodinger     e^{-i xi^2 t}   (free Schrodinger group)
//   half_wave_plus  e^{-i |xi| t}
//   half_wave_minus e^{+i |xi| t}
enum class PropagatorKind { schrodinger, half_wave_plus, half_wave_minus };

SpectralField propagate_linear(const SpectralField& f, PropagatorKind kind, double t);

// Apply the three linear flows componentwise for time dt (advances state.t).
void propagate_free(FirstOrderState& state, double dt);

// Right-hand sides of the diagonalized system
//   i u_t + u_xx = Fu,          Fu = (n_plus + n_minus)/2 * u
//   i n_pm_t -+ |d/dx| n_pm = G_pm,  G_pm = +- |d/dx| (|u|^2)
// with all products dealiased.  The source sign is fixed by requiring that
// n = (n_plus + n_minus)/2 solve n_tt - n_xx = (|u|^2)_xx and that the energy
// functional be invariant along the semi-discrete flow.
struct CoupledRhs {
    SpectralField Fu;
    SpectralField G_plus;
    SpectralField G_minus;
};
CoupledRhs rhs_coupled(const FirstOrderState& state);

// One Strang step: half linear flow, full nonlinear update, half linear flow.
// The nonlinear Schrodinger substep is an exact pointwise phase rotation
// u -> u e^{-i n dt} (n = (n_plus+n_minus)/2 is invariant during the substep),
// so |u| is preserved pointwise; the wave substep integrates its frozen source
// exactly.  dt may be negative: the step is its own time-reverse.
void step_strang(FirstOrderState& state, double dt);

// Solution samples along one interval.  For spectral (Lobatto) grids the nodes
// come in panels of nodes_per_panel points sharing endpoints; panel_starts[p]
// indexes the first node of panel p.  Uniform slices leave panel_starts empty.
struct TrajectorySlice {
    std::vector<double> times;   // local times, start at 0
    std::vector<FirstOrderState> states;
    std::vector<size_t> panel_starts;
    std::vector<double> contraction_factors;  // d_{k+1}/d_k per Picard sweep
    int iterations = 0;

    double final_contraction() const;
    double max_contraction() const;
    const FirstOrderState& front() const { return states.front(); }
    const FirstOrderState& back() const { return states.back(); }

    // Polynomial (per-panel barycentric) interpolation; uniform slices interpolate
    // linearly between neighbours.
    FirstOrderState at_time(double t) const;
};

// March with fixed dt, storing every store_stride-th state (and always the last).
TrajectorySlice evolve_strang(const FirstOrderState& start, double duration, double dt,
                              int store_stride = 1);

// Interpolate a sampled field path at time t: per-panel barycentric when
// panel_starts describes a Lobatto layout, linear between neighbours otherwise.
SpectralField interpolate_path(const std::vector<double>& times,
                               const std::vector<SpectralField>& fields,
                               const std::vector<size_t>& panel_starts, double t);

struct FixedPointOptions {
    double tol = 1e-10;        // C0(H^metric_s x L^2 x L^2) stopping distance
    int max_iter = 25;
    int nodes_per_panel = 8;   // Gauss-Lobatto nodes per quadrature panel
    double panel_length = 0.0; // 0 = auto from the grid's top resonance frequency
    double metric_s = 1.0;
};

// Picard iteration for the Duhamel form of the coupled system on [0, interval],
// interval <= 1.  Integrals are evaluated in the interaction picture on composite
// Gauss-Lobatto panels (exact cumulative integration of the nodal interpolant).
// Throws NonContractionError if the iteration budget is exhausted.
TrajectorySlice duhamel_fixed_point(const FirstOrderState& data, double interval,
                                    const FixedPointOptions& opts = {});

// Sources of the difference system for v = u - u_regular, m_pm = n_pm - n_pm_regular:
//   F    = (n_plus~ + n_minus~)/2 v + (m_plus + m_minus)/2 v + (m_plus + m_minus)/2 u~
//   G_pm = +- |d/dx| ( u~ conj(v) + |v|^2 + v conj(u~) )
// where tilde marks the regular solution (same source sign as rhs_coupled).
struct DifferenceRhs {
    SpectralField F;
    SpectralField G_plus;
    SpectralField G_minus;
};
DifferenceRhs difference_rhs(const FirstOrderState& regular, const SpectralField& v,
                             const SpectralField& m_plus, const SpectralField& m_minus);

// Difference trajectory (v, m_pm) with data (u02, 0, 0), plus the inhomogeneous
// part w(t) = v(t) - e^{it dxx} u02 and the source F at the nodes.
struct DifferenceSlice {
    std::vector<double> times;
    std::vector<size_t> panel_starts;
    std::vector<SpectralField> v;
    std::vector<SpectralField> m_plus;
    std::vector<SpectralField> m_minus;
    std::vector<SpectralField> w;
    std::vector<SpectralField> F;
    std::vector<double> contraction_factors;
    int iterations = 0;

    double final_contraction() const;
    SpectralField v_at(double t) const;
    SpectralField w_at(double t) const;
};

// Solve the difference system against a precomputed regular trajectory; the
// regular slice must carry the matching node grid (produced by
// duhamel_fixed_point or evolve_interval with the same options).
DifferenceSlice duhamel_difference(const TrajectorySlice& regular, const SpectralField& u02,
                                   const FixedPointOptions& opts = {});

enum class EvolveMethod { duhamel, strang };

struct EvolveResult {
    TrajectorySlice regular;
    DifferenceSlice difference;
};

// Regular solve with data (u01, n_pm), difference solve with data (u02, 0, 0),
// on the shared node grid.  method selects how the regular trajectory is
// produced (fixed point, or Strang stepping onto the quadrature nodes); the
// difference system always goes through its own Duhamel fixed point.
EvolveResult evolve_interval(const FirstOrderState& regular_data, const SpectralField& u02,
                             double interval, EvolveMethod method = EvolveMethod::duhamel,
                             const FixedPointOptions& opts = {});

} // namespace zk

#endif
