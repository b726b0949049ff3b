#include "zk/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <vector>

#include "zk/errors.hpp"
#include "zk/parallel.hpp"
#include "zk/quadrature.hpp"
#include "zk/rng.hpp"

namespace zk {

namespace {

void fail(ConditionReport& rep, const std::string& text) {
    rep.ok = false;
    rep.violated.push_back(text);
}

} // namespace

ConditionReport check_conditions_p11(const EstimateParams& p) {
    ConditionReport rep;
    if (!(p.k >= 0.0)) fail(rep, "k >= 0");
    if (!(p.l >= 0.0)) fail(rep, "l >= 0");
    if (!(p.s - p.k < 2.0 * p.a - 0.5)) fail(rep, "s - k < 2a - 1/2");
    if (!(p.s - p.k < 2.0 * p.a1 - 0.5)) fail(rep, "s - k < 2a1 - 1/2");
    if (!(p.s - p.k < 2.0 * (p.a + p.a1) - 1.5)) fail(rep, "s - k < 2(a + a1) - 3/2");
    if (!(p.s - p.l <= 2.0 * p.a1)) fail(rep, "s - l <= 2a1");
    if (!(p.a > 0.25)) fail(rep, "a > 1/4");
    if (!(p.a1 > 0.25)) fail(rep, "a1 > 1/4");
    if (!(p.a2 > 0.25)) fail(rep, "a2 > 1/4");
    if (!(p.a1 <= 0.5)) fail(rep, "a1 <= 1/2");
    if (!(p.a + p.a1 > 0.75)) fail(rep, "a + a1 > 3/4");
    if (!(p.a + p.a2 > 0.75)) fail(rep, "a + a2 > 3/4");
    if (!(p.a1 + p.a2 > 0.75)) fail(rep, "a1 + a2 > 3/4");
    if (!(p.k + p.a1 > 0.5)) fail(rep, "k + a1 > 1/2");
    if (!(p.k + p.a2 > 0.5)) fail(rep, "k + a2 > 1/2");
    if (!(p.k + p.a1 + p.a2 > 1.0)) fail(rep, "k + a1 + a2 > 1");
    return rep;
}

ConditionReport check_conditions_p12(const EstimateParams& p) {
    ConditionReport rep;
    if (!(p.k > 0.0)) fail(rep, "k > 0");
    if (!(p.l >= 0.0)) fail(rep, "l >= 0");
    if (!(p.s - p.k < 2.0 * p.a - 0.5)) fail(rep, "s - k < 2a - 1/2");
    if (!(p.s - p.k < 0.5)) fail(rep, "s - k < 1/2");
    if (!(p.s - p.l <= 1.0)) fail(rep, "s - l <= 1");
    if (!(p.a > 0.25)) fail(rep, "a > 1/4");
    if (!(p.a2 > 0.25)) fail(rep, "a2 > 1/4");
    if (!(p.a + p.a2 > 0.75)) fail(rep, "a + a2 > 3/4");
    if (!(p.k + p.a2 > 0.5)) fail(rep, "k + a2 > 1/2");
    return rep;
}

EstimateParams admissible_point_p11(double eps) {
    EstimateParams p;
    p.s = 1.0;
    p.l = 0.0;
    p.k = 0.5 + eps;
    p.a1 = 0.5;
    p.a = 0.5 + eps;
    p.a2 = 0.25 + eps;
    return p;
}

EstimateParams admissible_point_p12(double eps) {
    EstimateParams p;
    p.s = 1.0;
    p.l = 0.0;
    p.k = 0.5 + eps;
    p.a = 0.5;
    p.a2 = 0.5;
    p.a1 = 0.5;  // not used by the wave-form conditions
    return p;
}

EstimateParams adversarial_params() {
    EstimateParams p;
    p.s = 3.0;
    p.k = 0.26;
    p.l = 2.0;
    p.a = 0.51;
    p.a1 = 0.5;
    p.a2 = 0.26;
    return p;
}

EstimateParams kernel_divergence_probe() {
    EstimateParams p;
    p.s = 2.0;
    p.k = 0.26;
    p.l = 0.0;
    p.a = 0.51;
    p.a1 = 0.5;
    p.a2 = 0.26;
    return p;
}

double bilinear_ratio(const SpaceTimeField& n, const SpaceTimeField& u, const EstimateParams& p,
                      PropagatorKind phase_n) {
    double dn = xsb_norm(n, p.l, p.a, phase_n);
    double du = xsb_norm(u, p.k, p.a2, PropagatorKind::schrodinger);
    if (!(dn > 0.0) || !(du > 0.0))
        throw DegenerateInputError("bilinear_ratio: vanishing input norm");
    SpaceTimeField prod = spacetime_product(n, u);
    return xsb_norm(prod, p.s, -p.a1, PropagatorKind::schrodinger) / (dn * du);
}

namespace {

uint64_t zig(int v) {
    return v >= 0 ? 2ull * static_cast<uint64_t>(v)
                  : 2ull * static_cast<uint64_t>(-static_cast<int64_t>(v)) - 1ull;
}

// Cantor pairing of the zigzag-encoded mode pair: stable under refinement.
uint64_t mode_counter(int j, int m) {
    uint64_t a = zig(j);
    uint64_t b = zig(m);
    uint64_t s = a + b;
    return s * (s + 1) / 2 + b;
}

SpaceTimeField decay_field(const Grid& g, double window, int t_samples, double px, double pt,
                           PropagatorKind phase, const CounterRng& rng) {
    SpaceTimeField f(g, window, t_samples);
    for (int j = g.j_min(); j <= g.j_max(); ++j) {
        double xi = g.xi(j);
        double amp_x = std::pow(bracket(xi), -px);
        double phi = phase_symbol(phase, xi);
        for (int m = f.m_min(); m <= f.m_max(); ++m) {
            double amp = amp_x * std::pow(bracket(f.tau(m) + phi), -pt);
            double theta = rng.angle(mode_counter(j, m));
            f.set_spectrum(j, m, std::polar(amp, theta));
        }
    }
    return f;
}

} // namespace

BilinearSample ensemble_member(const Grid& g, double window, int t_samples,
                               const EstimateParams& p, uint64_t seed, int member) {
    if (member < 0) throw DomainError("ensemble_member: member index must be nonnegative");
    uint64_t base = 2ull * static_cast<uint64_t>(member);
    BilinearSample out;
    out.n = decay_field(g, window, t_samples, p.l + 1.2, p.a + 1.2,
                        PropagatorKind::half_wave_plus, CounterRng(seed, base));
    out.u = decay_field(g, window, t_samples, p.k + 1.2, p.a2 + 1.2,
                        PropagatorKind::schrodinger, CounterRng(seed, base + 1));
    return out;
}

BilinearSample adversarial_pair(const Grid& g, double window, int t_samples, int* k_out) {
    // Integer frequency lattices keep the three resonances exact.
    if (std::abs(g.L - 2.0 * std::numbers::pi) > 1e-12 ||
        std::abs(window - 2.0 * std::numbers::pi) > 1e-12)
        throw DomainError("adversarial_pair: needs L = W = 2 pi");
    // Product modes (K+1, -(K+1)^2) and inputs must all clear the 2/3 bands:
    // 3 (K+1) <= M and 3 (K+1)^2 <= T.
    int k_freq = 2;
    if (3 * (k_freq + 1) > g.M || 3 * (k_freq + 1) * (k_freq + 1) > t_samples)
        throw CapacityError("adversarial_pair: grid too small for the spike pair");
    while (3 * (k_freq + 2) <= g.M &&
           3 * (k_freq + 2) * (k_freq + 2) <= t_samples)
        ++k_freq;
    if (k_out) *k_out = k_freq;

    BilinearSample out;
    out.n = SpaceTimeField(g, window, t_samples);
    out.u = SpaceTimeField(g, window, t_samples);
    out.n.set_spectrum(1, -1, cplx(1.0));
    out.u.set_spectrum(k_freq, -((k_freq + 1) * (k_freq + 1) - 1), cplx(1.0));
    return out;
}

namespace {

// Squared-kernel weights with z = xi1^2 - xi2^2 - wave_sign |xi1 - xi2| and
// sigma = sigma1 - sigma2 - z; outer variables vary by regime.
struct KernelSetup {
    EstimateParams p;
    double wave_sign = 1.0;
    int pps = 20;       // graded points per peak side in the inner integrals
    int backbone = 40;  // uniform backbone points
};

double bpow(double x, double p) { return p == 0.0 ? 1.0 : std::pow(bracket(x), p); }

double zval(const KernelSetup& ks, double xi1, double xi2) {
    return xi1 * xi1 - xi2 * xi2 - ks.wave_sign * std::abs(xi1 - xi2);
}

double inner_case_aa(const KernelSetup& ks, double xi1, double s1) {
    double lim = 0.5 * std::abs(xi1);
    if (!(lim > 0.0)) return 0.0;
    double s1a = std::abs(s1);
    const EstimateParams& p = ks.p;
    auto over_xi2 = [&](double xi2) {
        double z = zval(ks, xi1, xi2);
        auto over_s2 = [&](double s2) {
            double sig = s1 - s2 - z;
            if (std::abs(sig) > s1a) return 0.0;  // sigma1 must dominate
            return bpow(s2, -2.0 * p.a2) * bpow(sig, -2.0 * p.a);
        };
        double J = integrate_peaked(over_s2, -s1a, s1a, {0.0, s1 - z}, 1.0, ks.pps, ks.backbone);
        return bpow(xi2, -2.0 * p.k) * bpow(xi1 - xi2, -2.0 * p.l) * J;
    };
    double res = std::sqrt(std::max(xi1 * xi1 - std::abs(s1), 0.0));
    return bpow(xi1, 2.0 * p.s) * bpow(s1, -2.0 * p.a1) *
           integrate_peaked(over_xi2, -lim, lim, {0.0, res, -res}, 1.0, ks.pps, ks.backbone);
}

double inner_case_ab(const KernelSetup& ks, double xi2, double s2) {
    double s2a = std::abs(s2);
    const EstimateParams& p = ks.p;
    // |z| <= 3 |sigma2| on the surviving set bounds the xi1 range.
    double B = 1.0 + std::sqrt(xi2 * xi2 + std::abs(xi2) + 3.0 * s2a + 1.0);
    auto over_xi1 = [&](double xi1) {
        if (std::abs(xi1) < 2.0 * std::abs(xi2)) return 0.0;
        double z = zval(ks, xi1, xi2);
        auto over_s1 = [&](double s1) {
            double sig = s1 - s2 - z;
            if (std::abs(sig) > s2a) return 0.0;  // sigma2 dominates sigma
            return bpow(s1, -2.0 * p.a1) * bpow(sig, -2.0 * p.a);
        };
        double J = integrate_peaked(over_s1, -s2a, s2a, {0.0, s2 + z}, 1.0, ks.pps, ks.backbone);
        return bpow(xi1, 2.0 * p.s) * bpow(xi1 - xi2, -2.0 * p.l) * J;
    };
    double res = std::sqrt(std::max(xi2 * xi2 + s2, 0.0));
    return bpow(xi2, -2.0 * p.k) * bpow(s2, -2.0 * p.a2) *
           integrate_peaked(over_xi1, -B, B, {2.0 * xi2, -2.0 * xi2, res, -res}, 1.0, ks.pps,
                            ks.backbone);
}

double inner_case_ac(const KernelSetup& ks, double xi, double s) {
    if (xi == 0.0) return 0.0;  // region a forces xi2 = 0 there
    double sa = std::abs(s);
    const EstimateParams& p = ks.p;
    double axi = std::abs(xi);
    // z = xi^2 + 2 xi xi2 - wave_sign |xi|; |z| <= 3 |sigma| bounds xi2.
    double B = (3.0 * sa + xi * xi + axi + 1.0) / (2.0 * axi) + 1.0;
    auto over_xi2 = [&](double xi2) {
        double xi1 = xi + xi2;
        if (std::abs(xi2) > 0.5 * std::abs(xi1)) return 0.0;  // region a
        double z = xi1 * xi1 - xi2 * xi2 - ks.wave_sign * axi;
        auto over_s2 = [&](double s2) {
            double s1 = s + s2 + z;
            if (std::abs(s1) > sa) return 0.0;  // sigma dominates sigma1
            return bpow(s2, -2.0 * p.a2) * bpow(s1, -2.0 * p.a1);
        };
        double J = integrate_peaked(over_s2, -sa, sa, {0.0, -s - z}, 1.0, ks.pps, ks.backbone);
        return bpow(xi1, 2.0 * p.s) * bpow(xi2, -2.0 * p.k) * J;
    };
    // Resonances where sigma1 or sigma2 can vanish: z + s = 0 gives the first.
    double r1 = -(s + xi * xi - ks.wave_sign * axi) / (2.0 * xi);
    double r2 = -(xi * xi - ks.wave_sign * axi) / (2.0 * xi);
    return bpow(xi, -2.0 * p.l) * bpow(s, -2.0 * p.a) *
           integrate_peaked(over_xi2, -B, B, {0.0, r1, r2}, 1.0, ks.pps, ks.backbone);
}

double inner_region_b(const KernelSetup& ks, double xi2, double s2) {
    const EstimateParams& p = ks.p;
    double lim = 2.0 * std::abs(xi2);
    if (!(lim > 0.0)) return 0.0;
    // No dominance: truncate sigma1 where both modulation weights have decayed.
    double C = std::abs(s2) + 3.0 * xi2 * xi2 + 3.0 * std::abs(xi2) + 200.0;
    auto over_xi1 = [&](double xi1) {
        double z = zval(ks, xi1, xi2);
        auto over_s1 = [&](double s1) {
            double sig = s1 - s2 - z;
            return bpow(s1, -2.0 * p.a1) * bpow(sig, -2.0 * p.a);
        };
        double J = integrate_peaked(over_s1, -C, C, {0.0, s2 + z}, 1.0, ks.pps, ks.backbone);
        return bpow(xi1, 2.0 * p.s) * bpow(xi1 - xi2, -2.0 * p.l) * J;
    };
    double res = std::sqrt(std::max(xi2 * xi2 + s2, 0.0));
    return bpow(xi2, -2.0 * p.k) * bpow(s2, -2.0 * p.a2) *
           integrate_peaked(over_xi1, -lim, lim, {0.0, xi2, res, -res}, 1.0, ks.pps, ks.backbone);
}

double value_at_radius(const KernelSetup& ks, KernelRegime regime, double R, int resolution) {
    // Outer lattice: graded frequencies in [0, R] (the integrand is even under a
    // joint sign flip) and a two-sided geometric modulation ladder reaching the
    // sigma ~ xi^2 resonance ridge.
    int nx = resolution + 1;
    int ns = 2 * resolution;
    std::vector<double> xs(static_cast<size_t>(nx) + 1);
    for (int i = 0; i <= nx; ++i)
        xs[static_cast<size_t>(i)] =
            R * std::pow(static_cast<double>(i) / static_cast<double>(nx), 1.5);
    double smax = R * R + R + 1.0;
    double smin = 0.25;
    std::vector<double> sig;
    sig.push_back(0.0);
    double q = std::pow(smax / smin, 1.0 / static_cast<double>(ns));
    for (int i = 0; i <= ns; ++i) {
        double v = smin * std::pow(q, static_cast<double>(i));
        sig.push_back(v);
        sig.push_back(-v);
    }

    std::vector<double> vals(xs.size() * sig.size(), 0.0);
    parallel_for(vals.size(), [&](size_t idx) {
        double x = xs[idx % xs.size()];
        double s = sig[idx / xs.size()];
        double v = 0.0;
        switch (regime) {
            case KernelRegime::case_aa: v = inner_case_aa(ks, x, s); break;
            case KernelRegime::case_ab: v = inner_case_ab(ks, x, s); break;
            case KernelRegime::case_ac: v = inner_case_ac(ks, x, s); break;
            case KernelRegime::region_b: v = inner_region_b(ks, x, s); break;
        }
        vals[idx] = v;
    });
    double best = 0.0;
    for (double v : vals) best = std::max(best, v);
    return best;
}

} // namespace

KernelScan kernel_supremum(const EstimateParams& p, KernelRegime regime, int resolution,
                           double radius0, int max_levels, PropagatorKind phase_n) {
    if (resolution < 4) throw DomainError("kernel_supremum: resolution too small");
    if (!(radius0 > 0.0) || max_levels < 1)
        throw DomainError("kernel_supremum: bad radius schedule");
    KernelSetup ks;
    ks.p = p;
    ks.wave_sign = phase_n == PropagatorKind::half_wave_minus ? -1.0 : 1.0;
    ks.pps = std::max(10, resolution);
    ks.backbone = std::max(20, 2 * resolution);

    KernelScan scan;
    int growing = 0;
    for (int lvl = 0; lvl < max_levels; ++lvl) {
        double R = radius0 * std::pow(2.0, lvl);
        double v = value_at_radius(ks, regime, R, resolution);
        if (!std::isfinite(v)) throw NumericalError("kernel_supremum: non-finite lattice value");
        scan.radii.push_back(R);
        scan.level_values.push_back(v);
        scan.value = v;
        if (lvl > 0) {
            double prev = scan.level_values[static_cast<size_t>(lvl) - 1];
            double rel = prev > 0.0 ? std::abs(v - prev) / prev : (v > 0.0 ? 1.0 : 0.0);
            if (rel < 0.05) {
                scan.converged = true;
                break;
            }
            growing = v > prev ? growing + 1 : 0;
            if (growing >= 3) {
                scan.diverged = true;
                break;
            }
        }
    }
    return scan;
}

const char* kernel_regime_name(KernelRegime r) {
    switch (r) {
        case KernelRegime::case_aa: return "case_aa";
        case KernelRegime::case_ab: return "case_ab";
        case KernelRegime::case_ac: return "case_ac";
        case KernelRegime::region_b: return "region_b";
    }
    return "unknown";
}

} // namespace zk
