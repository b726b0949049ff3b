#include "zk/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zk/quadrature.hpp"

namespace zk {

namespace {

double phase_of(PropagatorKind kind, double xi, double t) {
    switch (kind) {
        case PropagatorKind::schrodinger: return -xi * xi * t;
        case PropagatorKind::half_wave_plus: return -std::abs(xi) * t;
        case PropagatorKind::half_wave_minus: return std::abs(xi) * t;
    }
    return 0.0;
}

void apply_phase(SpectralField& f, PropagatorKind kind, double t) {
    const Grid& g = f.grid();
    for (int j = g.j_min(); j <= g.j_max(); ++j)
        f.set_coeff(j, std::polar(1.0, phase_of(kind, g.xi(j), t)) * f.coeff(j));
}

// Largest |xi| surviving the 2/3 rule; sets the fastest resonance the quadrature
// panels must resolve.
double band_limit(const Grid& g) {
    int j_band = g.M / 3;
    return g.xi(j_band);
}

SpectralField linear_combination(const std::vector<const SpectralField*>& fields,
                                 const std::vector<double>& coeffs) {
    SpectralField out(fields.at(0)->grid());
    auto& o = out.raw();
    for (size_t f = 0; f < fields.size(); ++f) {
        const auto& src = fields[f]->raw();
        double c = coeffs[f];
        for (size_t i = 0; i < o.size(); ++i) o[i] += c * src[i];
    }
    return out;
}

// Composite Gauss-Lobatto node layout on [0, interval] with equal panels.
struct NodeGrid {
    std::vector<double> times;
    std::vector<size_t> panel_starts;
    int nodes = 8;
    std::vector<std::vector<double>> Q;  // cumulative matrix on one panel
    std::vector<double> bary_w;          // barycentric weights of the reference nodes
    std::vector<double> ref;             // reference nodes on [-1, 1]
};

NodeGrid build_node_grid(double interval, const FixedPointOptions& opts, const Grid& g) {
    NodeGrid ng;
    ng.nodes = std::max(2, opts.nodes_per_panel);
    double h = opts.panel_length;
    if (h <= 0.0) {
        // Budget ~0.6 radians of interaction-picture phase per panel: the
        // 8-node Lagrange interpolant of e^{i sigma s} then carries a relative
        // error ~ (sigma h / 2)^8 / 8! ~ 1e-9, keeping collocation error well
        // below the fixed-point tolerance.
        double xb = band_limit(g);
        double sigma_max = xb * xb + xb;
        h = std::min(0.05, 0.6 / (1.0 + sigma_max));
    }
    long panels = std::max(1L, std::lround(std::ceil(interval / h)));
    if (panels * (ng.nodes - 1) + 1 > 2'000'000)
        throw CapacityError("duhamel_fixed_point: node grid would exceed the budget");

    ng.ref = gauss_lobatto_nodes(ng.nodes);
    ng.bary_w = barycentric_weights(ng.ref);

    double plen = interval / static_cast<double>(panels);
    // Cumulative matrix on the reference panel, scaled to panel length.
    ng.Q = cumulative_integration_matrix(ng.ref);
    for (auto& row : ng.Q)
        for (auto& v : row) v *= 0.5 * plen;

    for (long p = 0; p < panels; ++p) {
        ng.panel_starts.push_back(static_cast<size_t>(p) * static_cast<size_t>(ng.nodes - 1));
        double a = interval * static_cast<double>(p) / static_cast<double>(panels);
        int first = (p == 0) ? 0 : 1;
        for (int m = first; m < ng.nodes; ++m)
            ng.times.push_back(a + 0.5 * plen * (ng.ref[static_cast<size_t>(m)] + 1.0));
    }
    ng.times.back() = interval;  // guard against roundoff at the right edge
    return ng;
}

// Panel-wise cumulative integrals of nodal field samples (exact for the
// Lagrange interpolant on each panel).
std::vector<SpectralField> cumulative_integral(const NodeGrid& ng,
                                               const std::vector<SpectralField>& f) {
    const int n = ng.nodes;
    std::vector<SpectralField> out;
    out.reserve(f.size());
    SpectralField offset(f.front().grid());
    for (size_t p = 0; p < ng.panel_starts.size(); ++p) {
        size_t base = ng.panel_starts[p];
        for (int k = (p == 0 ? 0 : 1); k < n; ++k) {
            std::vector<const SpectralField*> ptrs;
            std::vector<double> coeffs;
            ptrs.reserve(static_cast<size_t>(n) + 1);
            coeffs.reserve(static_cast<size_t>(n) + 1);
            ptrs.push_back(&offset);
            coeffs.push_back(1.0);
            for (int m = 0; m < n; ++m) {
                ptrs.push_back(&f[base + static_cast<size_t>(m)]);
                coeffs.push_back(ng.Q[static_cast<size_t>(k)][static_cast<size_t>(m)]);
            }
            out.push_back(linear_combination(ptrs, coeffs));
        }
        offset = out[base + static_cast<size_t>(n - 1)];
    }
    return out;
}

FirstOrderState free_flow_from(const FirstOrderState& data, double tau) {
    FirstOrderState s = data;
    apply_phase(s.u, PropagatorKind::schrodinger, tau);
    apply_phase(s.n_plus, PropagatorKind::half_wave_plus, tau);
    apply_phase(s.n_minus, PropagatorKind::half_wave_minus, tau);
    s.t = data.t + tau;
    return s;
}

size_t locate_panel(const std::vector<double>& times, const std::vector<size_t>& starts,
                    int nodes, double t) {
    size_t lo = 0;
    for (size_t p = 0; p < starts.size(); ++p) {
        size_t last = starts[p] + static_cast<size_t>(nodes) - 1;
        if (t <= times[last] || p + 1 == starts.size()) { lo = p; break; }
    }
    return lo;
}

} // namespace

SpectralField propagate_linear(const SpectralField& f, PropagatorKind kind, double t) {
    SpectralField out = f;
    apply_phase(out, kind, t);
    return out;
}

void propagate_free(FirstOrderState& state, double dt) {
    apply_phase(state.u, PropagatorKind::schrodinger, dt);
    apply_phase(state.n_plus, PropagatorKind::half_wave_plus, dt);
    apply_phase(state.n_minus, PropagatorKind::half_wave_minus, dt);
    state.t += dt;
}

CoupledRhs rhs_coupled(const FirstOrderState& state) {
    CoupledRhs r;
    r.Fu = dealiased_product(wave_mean(state), state.u);
    SpectralField w = dealiased_product(state.u, state.u.conjugated());
    const Grid& g = state.grid();
    r.G_plus = SpectralField(g);
    r.G_minus = SpectralField(g);
    for (int j = g.j_min(); j <= g.j_max(); ++j) {
        // The source sign is fixed by requiring that n = (n+ + n-)/2 solve
        // n_tt - n_xx = (|u|^2)_xx, equivalently that the energy functional be
        // an exact invariant of the flow: i n±' -+ |xi| n± = ± |xi| w^.
        cplx gp = std::abs(g.xi(j)) * w.coeff(j);
        r.G_plus.set_coeff(j, gp);
        r.G_minus.set_coeff(j, -gp);
    }
    return r;
}

void step_strang(FirstOrderState& state, double dt) {
    propagate_free(state, 0.5 * dt);

    const Grid& g = state.grid();
    SpectralField w = dealiased_product(state.u, state.u.conjugated());
    std::vector<cplx> n_phys = inverse_transform(wave_mean(state));
    std::vector<cplx> u_phys = inverse_transform(state.u);
    for (size_t i = 0; i < u_phys.size(); ++i)
        u_phys[i] *= std::exp(cplx(0.0, -dt) * n_phys[i]);
    state.u = forward_transform(g, u_phys);
    for (int j = g.j_min(); j <= g.j_max(); ++j) {
        // Exact wave substep: n±' = -+ i |xi| w^ with w frozen (same source
        // sign as rhs_coupled, integrated exactly since w is constant here).
        cplx delta = cplx(0.0, -dt * std::abs(g.xi(j))) * w.coeff(j);
        state.n_plus.set_coeff(j, state.n_plus.coeff(j) + delta);
        state.n_minus.set_coeff(j, state.n_minus.coeff(j) - delta);
    }

    propagate_free(state, 0.5 * dt);
}

double TrajectorySlice::final_contraction() const {
    return contraction_factors.empty() ? 0.0 : contraction_factors.back();
}

double TrajectorySlice::max_contraction() const {
    double m = 0.0;
    for (double f : contraction_factors) m = std::max(m, f);
    return m;
}

FirstOrderState TrajectorySlice::at_time(double t) const {
    if (times.empty()) throw DomainError("TrajectorySlice::at_time: empty slice");
    t = std::clamp(t, times.front(), times.back());
    if (panel_starts.empty()) {
        // uniform slice: linear interpolation
        size_t hi = 1;
        while (hi + 1 < times.size() && times[hi] < t) ++hi;
        size_t lo = hi - 1;
        double span = times[hi] - times[lo];
        double a = span > 0.0 ? (times[hi] - t) / span : 1.0;
        FirstOrderState out;
        out.u = linear_combination({&states[lo].u, &states[hi].u}, {a, 1.0 - a});
        out.n_plus = linear_combination({&states[lo].n_plus, &states[hi].n_plus}, {a, 1.0 - a});
        out.n_minus = linear_combination({&states[lo].n_minus, &states[hi].n_minus}, {a, 1.0 - a});
        out.t = states[lo].t * a + states[hi].t * (1.0 - a);
        return out;
    }
    int n = static_cast<int>((times.size() - 1) / panel_starts.size()) + 1;
    size_t p = locate_panel(times, panel_starts, n, t);
    size_t base = panel_starts[p];
    std::vector<double> node_t(times.begin() + static_cast<long>(base),
                               times.begin() + static_cast<long>(base) + n);
    std::vector<double> w = barycentric_weights(node_t);
    std::vector<double> c = barycentric_coeffs(node_t, w, t);
    std::vector<const SpectralField*> fu, fp, fm;
    for (int m = 0; m < n; ++m) {
        fu.push_back(&states[base + static_cast<size_t>(m)].u);
        fp.push_back(&states[base + static_cast<size_t>(m)].n_plus);
        fm.push_back(&states[base + static_cast<size_t>(m)].n_minus);
    }
    FirstOrderState out;
    out.u = linear_combination(fu, c);
    out.n_plus = linear_combination(fp, c);
    out.n_minus = linear_combination(fm, c);
    out.t = states.front().t + (t - times.front());
    return out;
}

TrajectorySlice evolve_strang(const FirstOrderState& start, double duration, double dt,
                              int store_stride) {
    if (!(duration > 0.0) || !(dt > 0.0))
        throw DomainError("evolve_strang: duration and dt must be positive");
    if (store_stride < 1) store_stride = 1;
    TrajectorySlice tr;
    FirstOrderState st = start;
    tr.times.push_back(0.0);
    tr.states.push_back(st);
    long nsteps = std::max(1L, std::lround(std::ceil(duration / dt - 1e-12)));
    for (long k = 1; k <= nsteps; ++k) {
        double target = std::min(static_cast<double>(k) * dt, duration);
        double prev = std::min(static_cast<double>(k - 1) * dt, duration);
        step_strang(st, target - prev);
        if (k % store_stride == 0 || k == nsteps) {
            tr.times.push_back(target);
            tr.states.push_back(st);
        }
    }
    return tr;
}

TrajectorySlice duhamel_fixed_point(const FirstOrderState& data, double interval,
                                    const FixedPointOptions& opts) {
    if (!(interval > 0.0 && interval <= 1.0))
        throw DomainError("duhamel_fixed_point: need 0 < interval <= 1");
    const Grid& g = data.grid();
    NodeGrid ng = build_node_grid(interval, opts, g);
    const size_t K = ng.times.size();

    std::vector<FirstOrderState> cur(K);
    for (size_t k = 0; k < K; ++k) cur[k] = free_flow_from(data, ng.times[k]);

    std::vector<double> factors;
    double prev_d = -1.0;
    bool converged = false;
    int used = 0;

    std::vector<SpectralField> fu(K), fp(K), fm(K);
    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        used = iter;
        for (size_t k = 0; k < K; ++k) {
            CoupledRhs r = rhs_coupled(cur[k]);
            apply_phase(r.Fu, PropagatorKind::schrodinger, -ng.times[k]);
            apply_phase(r.G_plus, PropagatorKind::half_wave_plus, -ng.times[k]);
            apply_phase(r.G_minus, PropagatorKind::half_wave_minus, -ng.times[k]);
            fu[k] = std::move(r.Fu);
            fp[k] = std::move(r.G_plus);
            fm[k] = std::move(r.G_minus);
        }
        std::vector<SpectralField> Iu = cumulative_integral(ng, fu);
        std::vector<SpectralField> Ip = cumulative_integral(ng, fp);
        std::vector<SpectralField> Im = cumulative_integral(ng, fm);

        double d = 0.0;
        const cplx mi(0.0, -1.0);
        for (size_t k = 0; k < K; ++k) {
            FirstOrderState next;
            next.u = data.u + mi * Iu[k];
            next.n_plus = data.n_plus + mi * Ip[k];
            next.n_minus = data.n_minus + mi * Im[k];
            apply_phase(next.u, PropagatorKind::schrodinger, ng.times[k]);
            apply_phase(next.n_plus, PropagatorKind::half_wave_plus, ng.times[k]);
            apply_phase(next.n_minus, PropagatorKind::half_wave_minus, ng.times[k]);
            next.t = data.t + ng.times[k];
            double dist = sobolev_norm(next.u - cur[k].u, opts.metric_s) +
                          l2_norm(next.n_plus - cur[k].n_plus) +
                          l2_norm(next.n_minus - cur[k].n_minus);
            d = std::max(d, dist);
            cur[k] = std::move(next);
        }
        if (prev_d > 0.0) factors.push_back(d / prev_d);
        prev_d = d;
        if (d < opts.tol) { converged = true; break; }
    }
    if (!converged)
        throw NonContractionError("duhamel_fixed_point: no contraction within the iteration budget",
                                  factors.empty() ? std::numeric_limits<double>::infinity()
                                                  : factors.back());

    TrajectorySlice tr;
    tr.times = ng.times;
    tr.states = std::move(cur);
    tr.panel_starts = ng.panel_starts;
    tr.contraction_factors = std::move(factors);
    tr.iterations = used;
    return tr;
}

DifferenceRhs difference_rhs(const FirstOrderState& regular, const SpectralField& v,
                             const SpectralField& m_plus, const SpectralField& m_minus) {
    require_same_grid(regular.grid(), v.grid(), "difference_rhs");
    DifferenceRhs r;
    SpectralField n_reg = wave_mean(regular);
    SpectralField m_mean = cplx(0.5, 0.0) * (m_plus + m_minus);
    r.F = dealiased_product(n_reg, v) + dealiased_product(m_mean, v) +
          dealiased_product(m_mean, regular.u);

    // (u~ conj v + |v|^2 + v conj u~) = |u~ + v|^2 - |u~|^2
    SpectralField cross = dealiased_product(regular.u, v.conjugated()) +
                          dealiased_product(v, v.conjugated()) +
                          dealiased_product(v, regular.u.conjugated());
    const Grid& g = v.grid();
    r.G_plus = SpectralField(g);
    r.G_minus = SpectralField(g);
    for (int j = g.j_min(); j <= g.j_max(); ++j) {
        // Same source sign as rhs_coupled so that (regular + difference)
        // solves the full system.
        cplx gp = std::abs(g.xi(j)) * cross.coeff(j);
        r.G_plus.set_coeff(j, gp);
        r.G_minus.set_coeff(j, -gp);
    }
    return r;
}

double DifferenceSlice::final_contraction() const {
    return contraction_factors.empty() ? 0.0 : contraction_factors.back();
}

namespace {

SpectralField slice_interp(const std::vector<double>& times, const std::vector<size_t>& starts,
                           const std::vector<SpectralField>& fields, double t) {
    if (starts.empty()) throw DomainError("DifferenceSlice: missing panel layout");
    int n = static_cast<int>((times.size() - 1) / starts.size()) + 1;
    double tc = std::clamp(t, times.front(), times.back());
    size_t p = locate_panel(times, starts, n, tc);
    size_t base = starts[p];
    std::vector<double> node_t(times.begin() + static_cast<long>(base),
                               times.begin() + static_cast<long>(base) + n);
    std::vector<double> w = barycentric_weights(node_t);
    std::vector<double> c = barycentric_coeffs(node_t, w, tc);
    std::vector<const SpectralField*> ptrs;
    for (int m = 0; m < n; ++m) ptrs.push_back(&fields[base + static_cast<size_t>(m)]);
    return linear_combination(ptrs, c);
}

} // namespace

SpectralField DifferenceSlice::v_at(double t) const { return slice_interp(times, panel_starts, v, t); }
SpectralField DifferenceSlice::w_at(double t) const { return slice_interp(times, panel_starts, w, t); }

SpectralField interpolate_path(const std::vector<double>& times,
                               const std::vector<SpectralField>& fields,
                               const std::vector<size_t>& panel_starts, double t) {
    if (times.empty() || fields.size() != times.size())
        throw DimensionError("interpolate_path: times and fields must have equal size");
    if (times.size() == 1) return fields.front();
    if (!panel_starts.empty()) return slice_interp(times, panel_starts, fields, t);
    double tc = std::clamp(t, times.front(), times.back());
    size_t hi = 1;
    while (hi + 1 < times.size() && times[hi] < tc) ++hi;
    size_t lo = hi - 1;
    double span = times[hi] - times[lo];
    double a = span > 0.0 ? (times[hi] - tc) / span : 1.0;
    return linear_combination({&fields[lo], &fields[hi]}, {a, 1.0 - a});
}

DifferenceSlice duhamel_difference(const TrajectorySlice& regular, const SpectralField& u02,
                                   const FixedPointOptions& opts) {
    if (regular.panel_starts.empty())
        throw DomainError("duhamel_difference: regular slice must carry a panel grid");
    require_same_grid(regular.front().grid(), u02.grid(), "duhamel_difference");
    const size_t K = regular.times.size();
    const int n = static_cast<int>((K - 1) / regular.panel_starts.size()) + 1;

    // Rebuild the integration matrix for the shared panel layout.
    NodeGrid ng;
    ng.nodes = n;
    ng.times = regular.times;
    ng.panel_starts = regular.panel_starts;
    ng.ref = gauss_lobatto_nodes(n);
    ng.bary_w = barycentric_weights(ng.ref);
    double plen = regular.times[static_cast<size_t>(n - 1)] - regular.times[0];
    ng.Q = cumulative_integration_matrix(ng.ref);
    for (auto& row : ng.Q)
        for (auto& val : row) val *= 0.5 * plen;

    std::vector<SpectralField> free_v(K);
    for (size_t k = 0; k < K; ++k)
        free_v[k] = propagate_linear(u02, PropagatorKind::schrodinger, ng.times[k]);

    const Grid& g = u02.grid();
    std::vector<SpectralField> v = free_v;
    std::vector<SpectralField> mp(K, SpectralField(g)), mm(K, SpectralField(g));

    std::vector<double> factors;
    double prev_d = -1.0;
    bool converged = false;
    int used = 0;

    std::vector<SpectralField> fF(K), fp(K), fm(K), srcF(K);
    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        used = iter;
        for (size_t k = 0; k < K; ++k) {
            DifferenceRhs r = difference_rhs(regular.states[k], v[k], mp[k], mm[k]);
            srcF[k] = r.F;
            apply_phase(r.F, PropagatorKind::schrodinger, -ng.times[k]);
            apply_phase(r.G_plus, PropagatorKind::half_wave_plus, -ng.times[k]);
            apply_phase(r.G_minus, PropagatorKind::half_wave_minus, -ng.times[k]);
            fF[k] = std::move(r.F);
            fp[k] = std::move(r.G_plus);
            fm[k] = std::move(r.G_minus);
        }
        std::vector<SpectralField> IF = cumulative_integral(ng, fF);
        std::vector<SpectralField> Ip = cumulative_integral(ng, fp);
        std::vector<SpectralField> Im = cumulative_integral(ng, fm);

        double d = 0.0;
        const cplx mi(0.0, -1.0);
        for (size_t k = 0; k < K; ++k) {
            SpectralField v_new = u02 + mi * IF[k];
            apply_phase(v_new, PropagatorKind::schrodinger, ng.times[k]);
            SpectralField mp_new = mi * Ip[k];
            apply_phase(mp_new, PropagatorKind::half_wave_plus, ng.times[k]);
            SpectralField mm_new = mi * Im[k];
            apply_phase(mm_new, PropagatorKind::half_wave_minus, ng.times[k]);
            double dist = sobolev_norm(v_new - v[k], opts.metric_s) +
                          l2_norm(mp_new - mp[k]) + l2_norm(mm_new - mm[k]);
            d = std::max(d, dist);
            v[k] = std::move(v_new);
            mp[k] = std::move(mp_new);
            mm[k] = std::move(mm_new);
        }
        if (prev_d > 0.0) factors.push_back(d / prev_d);
        prev_d = d;
        if (d < opts.tol) { converged = true; break; }
    }
    if (!converged)
        throw NonContractionError("duhamel_difference: no contraction within the iteration budget",
                                  factors.empty() ? std::numeric_limits<double>::infinity()
                                                  : factors.back());

    DifferenceSlice ds;
    ds.times = ng.times;
    ds.panel_starts = ng.panel_starts;
    ds.v = std::move(v);
    ds.m_plus = std::move(mp);
    ds.m_minus = std::move(mm);
    ds.w.reserve(K);
    for (size_t k = 0; k < K; ++k) ds.w.push_back(ds.v[k] - free_v[k]);
    ds.F = std::move(srcF);
    ds.contraction_factors = std::move(factors);
    ds.iterations = used;
    return ds;
}

EvolveResult evolve_interval(const FirstOrderState& regular_data, const SpectralField& u02,
                             double interval, EvolveMethod method,
                             const FixedPointOptions& opts) {
    require_same_grid(regular_data.grid(), u02.grid(), "evolve_interval");
    EvolveResult res;
    if (method == EvolveMethod::duhamel) {
        res.regular = duhamel_fixed_point(regular_data, interval, opts);
    } else {
        // Strang-march the regular solution onto the same quadrature node grid.
        NodeGrid ng = build_node_grid(interval, opts, regular_data.grid());
        TrajectorySlice tr;
        tr.times = ng.times;
        tr.panel_starts = ng.panel_starts;
        tr.states.reserve(ng.times.size());
        FirstOrderState st = regular_data;
        tr.states.push_back(st);
        double dt_base = interval / 256.0;
        for (size_t k = 1; k < ng.times.size(); ++k) {
            double gap = ng.times[k] - ng.times[k - 1];
            long sub = std::max(1L, std::lround(std::ceil(gap / dt_base)));
            for (long q = 0; q < sub; ++q) step_strang(st, gap / static_cast<double>(sub));
            tr.states.push_back(st);
        }
        res.regular = std::move(tr);
    }
    res.difference = duhamel_difference(res.regular, u02, opts);
    return res;
}

} // namespace zk
