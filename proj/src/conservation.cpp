#include "zk/conservation.hpp"

#include <cmath>

namespace zk {

double mass(const SpectralField& u) { return l2_norm(u); }

EnergyBreakdown energy(const SpectralField& u, const SpectralField& n, const SpectralField& n_t) {
    require_same_grid(u.grid(), n.grid(), "energy");
    require_same_grid(u.grid(), n_t.grid(), "energy");

    EnergyBreakdown e;
    e.kinetic = std::pow(homogeneous_sobolev_norm(u, 1.0), 2);

    double n_l2 = l2_norm(n);
    double r_l2 = homogeneous_sobolev_norm(n_t, -1.0);
    e.wave = 0.5 * (n_l2 * n_l2 + r_l2 * r_l2);

    SpectralField usq = dealiased_product(u, u.conjugated());
    e.coupling = std::real(inner_product(n, usq));

    e.total = e.kinetic + e.wave + e.coupling;
    return e;
}

EnergyBreakdown energy(const SecondOrderView& view) {
    return energy(view.u, view.n, view.n_t);
}

CouplingBound gn_coupling_bound(const SpectralField& u, const SpectralField& n, double c) {
    SpectralField usq = dealiased_product(u, u.conjugated());
    CouplingBound b;
    b.lhs = std::abs(std::real(inner_product(n, usq)));
    double n_l2 = l2_norm(n);
    double ux = homogeneous_sobolev_norm(u, 1.0);
    double m = l2_norm(u);
    b.rhs = 0.25 * n_l2 * n_l2 + c * ux * m * m * m;
    return b;
}

AprioriBounds apriori_bounds(double E, double M, double c1) {
    AprioriBounds b;
    b.mass = M;
    b.energy = E;
    b.c1 = c1;
    double core = E + c1 * std::pow(M, 6);
    b.bound_ux_sq = (4.0 / 3.0) * core;
    b.bound_wave_sq = 4.0 * core;
    return b;
}

double energy_upper_bound(const SpectralField& u, const SpectralField& n,
                          const SpectralField& n_t, double c1) {
    double ux = homogeneous_sobolev_norm(u, 1.0);
    double n_l2 = l2_norm(n);
    double r_l2 = homogeneous_sobolev_norm(n_t, -1.0);
    double m = l2_norm(u);
    return 1.25 * ux * ux + 0.75 * (n_l2 * n_l2 + r_l2 * r_l2) + c1 * std::pow(m, 6);
}

} // namespace zk
