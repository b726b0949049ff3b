#ifndef ZK_STATE_HPP
#define ZK_STATE_HPP

#include "zk/field.hpp"

namespace zk {

// Cauchy data (u0, n0, n1) for the coupled system
//   i u_t + u_xx = n u,   n_tt - n_xx = (|u|^2)_xx,   (n, n_t)(0) = (n0, n1).
// n0 and n1 must be real-valued; n1 must have zero mean so |d/dx|^{-1} n1 is defined.
struct SecondOrderData {
    SpectralField u0;
    SpectralField n0;
    SpectralField n1;

    void validate() const;
};

// Diagonalized variables: n_pm = n -+... n_plus = n + i|d/dx|^{-1} n_t,
// n_minus = n - i|d/dx|^{-1} n_t.  The wave part becomes two half-wave flows and
// the conjugacy n_minus(-j) = conj(n_plus(j)) encodes that (n, n_t) stay real.
struct FirstOrderState {
    SpectralField u;
    SpectralField n_plus;
    SpectralField n_minus;
    double t = 0.0;

    const Grid& grid() const { return u.grid(); }
};

// Real n and n_t recovered from the half-wave pair.
struct SecondOrderView {
    SpectralField u;
    SpectralField n;
    SpectralField n_t;
    double t = 0.0;
};

FirstOrderState to_first_order(const SecondOrderData& data);
SecondOrderView from_first_order(const FirstOrderState& state);

// Half of (n_plus + n_minus): the wave field n seen by the Schrodinger part.
SpectralField wave_mean(const FirstOrderState& state);

// Checks c_minus(-j) == conj(c_plus(j)) for all paired modes (Nyquist excluded,
// its partner is not representable); tol is relative to the largest coefficient.
bool conjugacy_holds(const FirstOrderState& state, double tol = 1e-10);
double conjugacy_defect(const FirstOrderState& state);

} // namespace zk

#endif
