#include "zk/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

#include "zk/errors.hpp"
#include "zk/quadrature.hpp"
#include "zk/rng.hpp"

namespace zk {

SecondOrderData rough_data(const Grid& g, const RoughDataConfig& cfg, uint64_t seed, int member) {
    if (!(cfg.amplitude >= 0.0)) throw DomainError("rough_data: amplitude must be nonnegative");
    if (cfg.wave_band < 1 || cfg.wave_band >= g.M / 2)
        throw DomainError("rough_data: wave_band outside the mode ladder");
    double wave_amp = cfg.wave_amplitude < 0.0 ? 0.5 * cfg.amplitude : cfg.wave_amplitude;
    uint64_t base = 4ull * static_cast<uint64_t>(member);
    CounterRng rng_u(seed, base + 1);
    CounterRng rng_n0(seed, base + 2);
    CounterRng rng_n1(seed, base + 3);

    SecondOrderData data{SpectralField(g), SpectralField(g), SpectralField(g)};
    double p = cfg.s + 0.5 + cfg.extra_decay;
    for (int j = g.j_min() + 1; j <= g.j_max(); ++j) {
        // Nyquist left empty so conjugate pairing stays exact.
        double amp = cfg.amplitude * std::pow(bracket(g.xi(j)), -p);
        data.u0.set_coeff(j, std::polar(amp, rng_u.angle(static_cast<uint64_t>(g.slot(j)))));
    }
    double scale = wave_amp / std::sqrt(static_cast<double>(cfg.wave_band));
    for (int j = 1; j <= cfg.wave_band; ++j) {
        cplx c0 = 0.5 * std::polar(scale, rng_n0.angle(static_cast<uint64_t>(j)));
        data.n0.set_coeff(j, c0);
        data.n0.set_coeff(-j, std::conj(c0));
        cplx c1 = 0.25 * std::polar(scale, rng_n1.angle(static_cast<uint64_t>(j)));
        data.n1.set_coeff(j, c1);
        data.n1.set_coeff(-j, std::conj(c1));
    }
    data.validate();
    return data;
}

SecondOrderData smooth_data(const Grid& g, const SmoothDataConfig& cfg, uint64_t seed,
                            int member) {
    if (!(cfg.amplitude >= 0.0)) throw DomainError("smooth_data: amplitude must be nonnegative");
    // amplitude and wave_amplitude are the target L2 norms of u0 and n0.
    if (!(cfg.width > 0.0)) throw DomainError("smooth_data: width must be positive");
    double wave_amp = cfg.wave_amplitude < 0.0 ? 0.5 * cfg.amplitude : cfg.wave_amplitude;
    double wave_width = cfg.wave_width <= 0.0 ? cfg.width : cfg.wave_width;
    uint64_t base = 4ull * static_cast<uint64_t>(member);
    CounterRng rng_u(seed, base + 1);
    CounterRng rng_n0(seed, base + 2);
    CounterRng rng_n1(seed, base + 3);

    auto envelope = [](double xi, double w) { return std::exp(-(xi / w) * (xi / w)); };

    // amplitude / wave_amplitude are target L2 norms: fill the envelopes with
    // unit-scale phases, then rescale each field.
    SecondOrderData data{SpectralField(g), SpectralField(g), SpectralField(g)};
    for (int j = g.j_min() + 1; j <= g.j_max(); ++j) {
        double amp = envelope(g.xi(j), cfg.width);
        data.u0.set_coeff(j, std::polar(amp, rng_u.angle(static_cast<uint64_t>(g.slot(j)))));
    }
    for (int j = 1; j < g.M / 2; ++j) {
        double amp = envelope(g.xi(j), wave_width);
        cplx c0 = std::polar(amp, rng_n0.angle(static_cast<uint64_t>(j)));
        data.n0.set_coeff(j, c0);
        data.n0.set_coeff(-j, std::conj(c0));
        cplx c1 = std::polar(amp, rng_n1.angle(static_cast<uint64_t>(j)));
        data.n1.set_coeff(j, c1);
        data.n1.set_coeff(-j, std::conj(c1));
    }
    auto rescale = [](SpectralField& f, double target) {
        double norm = l2_norm(f);
        if (norm > 0.0) f = cplx(target / norm, 0.0) * f;
    };
    rescale(data.u0, cfg.amplitude);
    rescale(data.n0, wave_amp);
    rescale(data.n1, 0.5 * wave_amp);
    data.validate();
    return data;
}

PipelineState init_pipeline(const SecondOrderData& data, const PipelineConfig& cfg) {
    data.validate();
    require_same_grid(data.u0.grid(), cfg.grid, "init_pipeline");
    double N = cfg.cutoff;
    if (N <= 0.0) N = select_cutoff(cfg.horizon, cfg.s, cfg.margin);
    if (N >= cfg.grid.xi(cfg.grid.j_max()))
        throw CapacityError("init_pipeline: cutoff reaches the grid bandwidth");

    PipelineState st;
    st.initial_split = split(data.u0, N, cfg.s);
    st.cutoff = N;
    st.interval = interval_length(N, cfg.s, cfg.delta);
    if (st.interval > 1.0) st.interval = 1.0;  // fixed-point solver contract
    SecondOrderData low{st.initial_split.u_low, data.n0, data.n1};
    st.regular = to_first_order(low);
    st.u02 = st.initial_split.u_high;
    st.u0_full = data.u0;
    return st;
}

namespace {

EnergyBreakdown state_energy(const FirstOrderState& st) {
    SecondOrderView view = from_first_order(st);
    return energy(view.u, view.n, view.n_t);
}

// Majorant of the energy jump |E(u~+w, n~+m) - E(u~, n~)| at absorption:
// expand each quadratic term and bound the cross terms by Cauchy-Schwarz;
// the coupling terms are reduced to integrals of absolute values evaluated
// on the collocation grid.  Unlike the raw increment, this carrier has no
// phase cancellation, so it regresses cleanly across intervals.
double energy_increment_majorant(const FirstOrderState& tail, const SpectralField& w,
                                 const SpectralField& mp, const SpectralField& mm) {
    const Grid& g = tail.u.grid();
    double ux = homogeneous_sobolev_norm(tail.u, 1.0);
    double wx = homogeneous_sobolev_norm(w, 1.0);
    SpectralField n_reg = cplx(0.5, 0.0) * (tail.n_plus + tail.n_minus);
    SpectralField m_dif = cplx(0.5, 0.0) * (mp + mm);
    double m_l2 = l2_norm(m_dif);
    // |A^{-1/2} d/dt| halves of the wave pair: norm is half the difference norm.
    double nt_half = 0.5 * l2_norm(tail.n_plus - tail.n_minus);
    double mt_half = 0.5 * l2_norm(mp - mm);
    double quad = 2.0 * (ux + wx) * wx + (l2_norm(n_reg) + m_l2) * m_l2 +
                  (nt_half + mt_half) * mt_half;

    std::vector<cplx> pu = inverse_transform(tail.u + w);
    std::vector<cplx> pu_reg = inverse_transform(tail.u);
    std::vector<cplx> pm = inverse_transform(m_dif);
    std::vector<cplx> pn = inverse_transform(n_reg);
    double coupling = 0.0;
    for (size_t k = 0; k < pu.size(); ++k) {
        double full_sq = std::norm(pu[k]);
        double reg_sq = std::norm(pu_reg[k]);
        coupling += std::abs(pm[k]) * full_sq + std::abs(pn[k]) * std::abs(full_sq - reg_sq);
    }
    return quad + coupling * (g.L / g.M);
}

} // namespace

ContinuationReport advance_interval(PipelineState& st, const PipelineConfig& cfg) {
    ContinuationReport rep;
    rep.index = st.index;
    rep.t_start = st.elapsed;
    rep.interval = st.interval;
    rep.t_end = st.elapsed + st.interval;

    rep.mass_start = mass(st.regular.u);
    EnergyBreakdown e0 = state_energy(st.regular);
    rep.energy_start = e0.total;

    EvolveResult res = evolve_interval(st.regular, st.u02, st.interval, cfg.method, cfg.fp);
    const FirstOrderState& tail = res.regular.back();
    const SpectralField& w_end = res.difference.w.back();
    const SpectralField& mp_end = res.difference.m_plus.back();
    const SpectralField& mm_end = res.difference.m_minus.back();

    rep.w_l2 = l2_norm(w_end);
    rep.w_h1 = sobolev_norm(w_end, 1.0);
    rep.m_l2 = std::max(l2_norm(mp_end), l2_norm(mm_end));
    rep.energy_carrier = energy_increment_majorant(tail, w_end, mp_end, mm_end);
    rep.contraction = std::max(res.regular.final_contraction(), res.difference.final_contraction());
    rep.iterations = std::max(res.regular.iterations, res.difference.iterations);

    // Absorb the inhomogeneous parts into the regular data; the rough tail
    // keeps riding the free flow.
    FirstOrderState next;
    next.u = tail.u + w_end;
    next.n_plus = tail.n_plus + mp_end;
    next.n_minus = tail.n_minus + mm_end;
    next.t = rep.t_end;
    if (!all_finite(next.u) || !all_finite(next.n_plus) || !all_finite(next.n_minus))
        throw NumericalError("advance_interval: non-finite state after absorption");

    st.regular = std::move(next);
    st.u02 = propagate_linear(st.u02, PropagatorKind::schrodinger, st.interval);
    st.elapsed = rep.t_end;
    st.index += 1;

    rep.mass_end = mass(st.regular.u);
    EnergyBreakdown e1 = state_energy(st.regular);
    rep.energy_end = e1.total;
    rep.mass_increment = std::abs(rep.mass_end - rep.mass_start);
    rep.energy_increment = std::abs(rep.energy_end - rep.energy_start);
    rep.u02_hs = sobolev_norm(st.u02, cfg.s);

    // Fit the per-interval bound constants on interval zero from the carriers
    // (the mass carrier is ||w(|I|)||), then hold them fixed for later
    // intervals; a raw increment above the frozen bound is flagged, not fatal.
    double mass_unit = std::pow(st.cutoff, -1.5 + 0.75 * cfg.s);
    double energy_unit = std::pow(st.cutoff, 2.5 - 3.0 * cfg.s);
    if (rep.index == 0) {
        st.c2 = rep.w_l2 / mass_unit;
        st.c3 = rep.energy_carrier / energy_unit;
    }
    rep.bound_mass_incr = st.c2 * mass_unit;
    rep.bound_energy_incr = st.c3 * energy_unit;
    rep.energy_bound_violated = rep.energy_increment > rep.bound_energy_incr;

    SecondOrderView view = from_first_order(st.regular);
    rep.n_l2 = l2_norm(view.n);
    rep.nt_hm1 = homogeneous_sobolev_norm(view.n_t, -1.0);

    SpectralField reassembled = st.regular.u + st.u02;
    SpectralField free_full =
        propagate_linear(st.u0_full, PropagatorKind::schrodinger, st.elapsed);
    rep.remainder_h1 = sobolev_norm(reassembled - free_full, 1.0);
    return rep;
}

GlobalRunResult run_global(const SecondOrderData& data, const PipelineConfig& cfg, int intervals) {
    if (intervals < 1) throw DomainError("run_global: need at least one interval");
    PipelineState st = init_pipeline(data, cfg);
    GlobalRunResult out;
    out.cutoff = st.cutoff;
    out.interval = st.interval;
    out.reports.reserve(static_cast<size_t>(intervals));
    for (int i = 0; i < intervals; ++i) out.reports.push_back(advance_interval(st, cfg));

    std::vector<double> lx, ly;
    for (const auto& r : out.reports)
        if (r.remainder_h1 > 0.0 && r.t_end > 0.0) {
            lx.push_back(std::log(r.t_end));
            ly.push_back(std::log(r.remainder_h1));
        }
    if (lx.size() >= 2) {
        out.slope = fit_slope(lx, ly);
        out.slope_defined = true;
    }
    out.reference_exponent = (1.0 - cfg.s) / (5.0 * cfg.s - 4.5);
    out.note =
        "the reference growth exponent (1-s)/(5s-9/2) describes the asymptotic "
        "high-cutoff regime; the desk-scale fitted slope is reported for qualitative "
        "comparison only and is not expected to reproduce it";
    return out;
}

AuditResult increment_audit(const std::vector<ContinuationReport>& reports, double s, double N,
                            double margin) {
    if (reports.empty()) throw DegenerateInputError("increment_audit: no reports");
    if (!(N >= 1.0)) throw DomainError("increment_audit: cutoff must be at least 1");
    AuditResult a;
    a.mass_exponent = -1.5 + 0.75 * s;
    a.energy_exponent = 2.5 - 3.0 * s;
    a.steps_exponent = 4.0 * (1.0 - s);
    a.lhs_exponent = 5.0 * (1.0 - s) + 1.5 - 2.0 * s;
    a.rhs_exponent = 2.0 * (1.0 - s);
    a.exponent_gap = a.lhs_exponent - a.rhs_exponent;
    double tol = 1e-9;
    a.regime = a.exponent_gap < -tol ? "stable" : (a.exponent_gap > tol ? "unstable" : "marginal");

    double mass_unit = std::pow(N, a.mass_exponent);
    double energy_unit = std::pow(N, a.energy_exponent);
    a.c2 = reports.front().w_l2 / mass_unit;
    a.c3 = reports.front().energy_carrier / energy_unit;
    a.bound_mass_incr = a.c2 * mass_unit;
    a.bound_energy_incr = a.c3 * energy_unit;

    // Dominance: the raw increments against their carriers.  The mass side is
    // an exact triangle inequality; the energy side gets a small allowance for
    // collocation quadrature in the coupling integrals.  Absolute floors keep
    // roundoff-level increments from failing the zero-carrier (smooth-data)
    // case.
    a.mass_dominated = true;
    a.energy_dominated = true;
    for (const auto& r : reports) {
        double mass_floor = 1e-10 * std::max(1.0, r.mass_start);
        double energy_floor = 1e-8 * std::max(1.0, std::abs(r.energy_start));
        if (r.mass_increment > r.w_l2 * (1.0 + 1e-9) + mass_floor) a.mass_dominated = false;
        if (r.energy_increment > r.energy_carrier * 1.02 + energy_floor) a.energy_dominated = false;
    }

    double floor2 = std::max(a.bound_mass_incr, 1e-300);
    double floor3 = std::max(a.bound_energy_incr, 1e-300);
    for (size_t i = 1; i < reports.size(); ++i) {
        a.max_mass_slack = std::max(a.max_mass_slack, reports[i].w_l2 / floor2);
        a.max_energy_slack = std::max(a.max_energy_slack, reports[i].energy_carrier / floor3);
    }
    a.regression_ok = a.mass_dominated && a.energy_dominated && a.max_mass_slack <= margin &&
                      a.max_energy_slack <= margin;

    for (const auto& r : reports) a.total_energy_increment += r.energy_increment;
    double scale = std::max(std::abs(reports.front().energy_start), 1e-12);
    a.energy_allowance = margin * scale;
    a.energy_ok = a.total_energy_increment <= a.energy_allowance;
    return a;
}

} // namespace zk
