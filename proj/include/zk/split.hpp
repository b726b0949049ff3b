#ifndef ZK_SPLIT_HPP
#define ZK_SPLIT_HPP

#include "zk/field.hpp"

namespace zk {

// Low/high frequency decomposition at a sharp cutoff N together with the local
// step-size rule |I| = N^{-4(1-s)-delta}.  Valid regularity window is
// 9/10 < s < 1; passing allow_exploration lifts the window check for parameter
// sweeps that deliberately step outside it.
struct SplitConfig {
    double N = 1.0;
    double s = 0.95;
    double delta = 0.05;

    double interval_length() const;
};

double interval_length(double N, double s, double delta, bool allow_exploration = false);

// N = margin * T^{1/(5s - 9/2)}, clamped to at least 1; horizons T <= 1 need no
// high cutoff, so they resolve to max(1, margin).  s <= 9/10 is rejected: the
// exponent has a pole at the threshold.
double select_cutoff(double T, double s, double margin = 2.0);

// ceil(T / |I|).
long step_count(double T, const SplitConfig& cfg);

struct SplitData {
    SpectralField u_low;   // modes |xi| <= N
    SpectralField u_high;  // the rest
    double N = 0.0;

    // Measured sharp-cutoff ratios, all O(1) by construction:
    //   low_h1_ratio   = ||u_low||_{H^1}  / (<N>^{1-s} ||u0||_{H^s})
    //   low_l2_ratio   = ||u_low||_{L^2}  / ||u0||_{L^2}
    //   high_hs_ratio  = ||u_high||_{H^s} / ||u0||_{H^s}
    //   high_l2_ratio  = ||u_high||_{L^2} * <N>^s / ||u0||_{H^s}
    double low_h1_ratio = 0.0;
    double low_l2_ratio = 0.0;
    double high_hs_ratio = 0.0;
    double high_l2_ratio = 0.0;
};

SplitData split(const SpectralField& u0, double N, double s);

} // namespace zk

#endif
