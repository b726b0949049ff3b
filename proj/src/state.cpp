#include "zk/state.hpp"

#include <algorithm>
#include <cmath>

namespace zk {

void SecondOrderData::validate() const {
    require_same_grid(u0.grid(), n0.grid(), "SecondOrderData");
    require_same_grid(u0.grid(), n1.grid(), "SecondOrderData");
    if (!is_real_valued(n0))
        throw DomainError("SecondOrderData: n0 must be real-valued");
    if (!is_real_valued(n1))
        throw DomainError("SecondOrderData: n1 must be real-valued");
    double peak = std::max(max_coeff_abs(n1), 1e-300);
    if (std::abs(n1.coeff(0)) > 1e-12 * peak)
        throw ZeroModeError("SecondOrderData: n1 must have zero mean");
}

FirstOrderState to_first_order(const SecondOrderData& data) {
    data.validate();
    bool dropped = false;
    SpectralField r = inverse_abs_deriv(data.n1, &dropped);
    if (dropped)
        throw ZeroModeError("to_first_order: n1 carries a zero mode");
    FirstOrderState s;
    s.u = data.u0;
    s.n_plus = data.n0 + cplx(0.0, 1.0) * r;
    s.n_minus = data.n0 - cplx(0.0, 1.0) * r;
    s.t = 0.0;
    return s;
}

SecondOrderView from_first_order(const FirstOrderState& state) {
    require_same_grid(state.u.grid(), state.n_plus.grid(), "from_first_order");
    require_same_grid(state.u.grid(), state.n_minus.grid(), "from_first_order");
    SecondOrderView v;
    v.u = state.u;
    v.n = cplx(0.5, 0.0) * (state.n_plus + state.n_minus);
    // n_t = |d/dx| (n_plus - n_minus) / (2i)
    v.n_t = cplx(0.0, -0.5) * abs_deriv(state.n_plus - state.n_minus);
    v.t = state.t;
    return v;
}

SpectralField wave_mean(const FirstOrderState& state) {
    return cplx(0.5, 0.0) * (state.n_plus + state.n_minus);
}

double conjugacy_defect(const FirstOrderState& state) {
    const Grid& g = state.grid();
    double scale = std::max({max_coeff_abs(state.n_plus), max_coeff_abs(state.n_minus), 1e-300});
    double worst = 0.0;
    worst = std::max(worst, std::abs(state.n_minus.coeff(0) - std::conj(state.n_plus.coeff(0))));
    for (int j = 1; j < g.M / 2; ++j) {
        worst = std::max(worst, std::abs(state.n_minus.coeff(-j) - std::conj(state.n_plus.coeff(j))));
        worst = std::max(worst, std::abs(state.n_minus.coeff(j) - std::conj(state.n_plus.coeff(-j))));
    }
    return worst / scale;
}

bool conjugacy_holds(const FirstOrderState& state, double tol) {
    return conjugacy_defect(state) <= tol;
}

} // namespace zk
