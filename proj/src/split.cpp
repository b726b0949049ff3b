#include "zk/split.hpp"

#include <cmath>

namespace zk {

namespace {

void check_regularity_window(double s, bool allow_exploration) {
    if (allow_exploration) return;
    if (!(s > 0.9 && s < 1.0))
        throw DomainError("regularity parameter must satisfy 9/10 < s < 1");
}

} // namespace

double interval_length(double N, double s, double delta, bool allow_exploration) {
    if (!(N >= 1.0)) throw DomainError("interval_length: cutoff must be >= 1");
    if (!(delta > 0.0)) throw DomainError("interval_length: delta must be positive");
    check_regularity_window(s, allow_exploration);
    return std::pow(N, -4.0 * (1.0 - s) - delta);
}

double SplitConfig::interval_length() const { return zk::interval_length(N, s, delta); }

double select_cutoff(double T, double s, double margin) {
    if (!(T > 0.0)) throw DomainError("select_cutoff: horizon must be positive");
    if (!(margin > 0.0)) throw DomainError("select_cutoff: margin must be positive");
    if (!(s > 0.9))
        throw DomainError("select_cutoff: exponent pole at s = 9/10, need s > 9/10");
    if (!(s < 1.0))
        throw DomainError("select_cutoff: need s < 1");
    double N = margin * std::pow(std::max(T, 1.0), 1.0 / (5.0 * s - 4.5));
    return std::max(N, 1.0);
}

long step_count(double T, const SplitConfig& cfg) {
    if (!(T > 0.0)) throw DomainError("step_count: horizon must be positive");
    double ratio = T / cfg.interval_length();
    // The exponent arithmetic in interval_length is inexact in binary floating
    // point; shave a relative ulp margin so exact multiples do not ceil upward.
    return static_cast<long>(std::ceil(ratio * (1.0 - 1e-12)));
}

SplitData split(const SpectralField& u0, double N, double s) {
    if (!(N >= 1.0)) throw DomainError("split: cutoff must be >= 1");
    const Grid& g = u0.grid();
    SplitData d;
    d.N = N;
    d.u_low = SpectralField(g);
    d.u_high = SpectralField(g);
    for (int j = g.j_min(); j <= g.j_max(); ++j) {
        if (std::abs(g.xi(j)) <= N)
            d.u_low.set_coeff(j, u0.coeff(j));
        else
            d.u_high.set_coeff(j, u0.coeff(j));
    }

    double hs = sobolev_norm(u0, s);
    double l2 = l2_norm(u0);
    double bN = bracket(N);
    if (hs > 0.0) {
        d.low_h1_ratio = sobolev_norm(d.u_low, 1.0) / (std::pow(bN, 1.0 - s) * hs);
        d.high_hs_ratio = sobolev_norm(d.u_high, s) / hs;
        d.high_l2_ratio = l2_norm(d.u_high) * std::pow(bN, s) / hs;
    }
    if (l2 > 0.0) d.low_l2_ratio = l2_norm(d.u_low) / l2;
    return d;
}

} // namespace zk
