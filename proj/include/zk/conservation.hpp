#ifndef ZK_CONSERVATION_HPP
#define ZK_CONSERVATION_HPP

#include "zk/state.hpp"

namespace zk {

// ||u||_{L^2}.
double mass(const SpectralField& u);

struct EnergyBreakdown {
    double kinetic = 0.0;   // ||u_x||^2
    double wave = 0.0;      // (||n||^2 + || |d/dx|^{-1} n_t ||^2) / 2
    double coupling = 0.0;  // integral of n |u|^2 dx
    double total = 0.0;
};

// Hamiltonian of the coupled system evaluated spectrally; the coupling term uses
// the dealiased |u|^2 so repeated evaluations along a dealiased flow are consistent.
EnergyBreakdown energy(const SpectralField& u, const SpectralField& n, const SpectralField& n_t);
EnergyBreakdown energy(const SecondOrderView& view);

// |Int n|u|^2| <= ||n||^2/4 + c ||u_x|| ||u||^3 with the stated constant; returns
// both sides so callers can log margins.
struct CouplingBound {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds() const { return lhs <= rhs; }
};
CouplingBound gn_coupling_bound(const SpectralField& u, const SpectralField& n, double c = 1.0);

// Closed a priori bounds driven by conserved quantities:
//   ||u_x||^2 <= (4/3)(E + c1 M^6),    ||n||^2 + |||d/dx|^{-1}n_t||^2 <= 4(E + c1 M^6).
struct AprioriBounds {
    double mass = 0.0;
    double energy = 0.0;
    double c1 = 1.0;
    double bound_ux_sq = 0.0;
    double bound_wave_sq = 0.0;
};
AprioriBounds apriori_bounds(double E, double M, double c1 = 1.0);

// Upper bound for E in terms of the fields themselves:
//   E <= (5/4)||u_x||^2 + (3/4)(||n||^2 + |||d/dx|^{-1}n_t||^2) + c1 ||u||^6.
double energy_upper_bound(const SpectralField& u, const SpectralField& n,
                          const SpectralField& n_t, double c1 = 1.0);

} // namespace zk

#endif
