#include "zk/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "zk/errors.hpp"
#include "zk/fft.hpp"

namespace zk {

namespace {

double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// C-infinity step: 0 for x <= 0, 1 for x >= 1.
double smoothstep(double x) {
    double a = bump(x);
    double b = bump(1.0 - x);
    return a + b > 0.0 ? a / (a + b) : 0.0;
}

} // namespace

double taper_value(const TaperSpec& spec, double t) {
    if (!(spec.support_radius > spec.plateau_radius) || !(spec.plateau_radius >= 0.0))
        throw DomainError("taper_value: need support_radius > plateau_radius >= 0");
    double d = std::abs(t - spec.center);
    return smoothstep((spec.support_radius - d) / (spec.support_radius - spec.plateau_radius));
}

TaperSpec default_taper(double window) {
    if (!(window > 0.0)) throw DomainError("default_taper: window must be positive");
    TaperSpec spec;
    spec.center = 0.5 * window;
    spec.plateau_radius = 0.25 * window;
    spec.support_radius = 0.5 * window;
    return spec;
}

SpaceTimeField::SpaceTimeField(const Grid& g, double window, int t_samples)
    : grid_(g), W_(window), T_(t_samples) {
    if (!(W_ > 0.0)) throw DomainError("SpaceTimeField: window must be positive");
    if (T_ < 4 || T_ % 2 != 0) throw DimensionError("SpaceTimeField: need an even t_samples >= 4");
    spec_.assign(static_cast<size_t>(T_) * static_cast<size_t>(grid_.M), cplx(0.0));
}

size_t SpaceTimeField::index(int j, int m) const {
    if (j < grid_.j_min() || j > grid_.j_max())
        throw DimensionError("SpaceTimeField: spatial mode out of range");
    if (m < m_min() || m > m_max())
        throw DimensionError("SpaceTimeField: temporal mode out of range");
    int ms = m >= 0 ? m : m + T_;
    return static_cast<size_t>(ms) * static_cast<size_t>(grid_.M) +
           static_cast<size_t>(grid_.slot(j));
}

double SpaceTimeField::tau(int m) const {
    return 2.0 * std::numbers::pi * static_cast<double>(m) / W_;
}

SpaceTimeField SpaceTimeField::from_slices(const Grid& g, double window,
                                           const std::vector<SpectralField>& slices) {
    SpaceTimeField f(g, window, static_cast<int>(slices.size()));
    const size_t M = static_cast<size_t>(g.M);
    const size_t T = slices.size();
    for (const auto& s : slices) require_same_grid(g, s.grid(), "SpaceTimeField::from_slices");
    std::vector<cplx> col(T);
    for (size_t i = 0; i < M; ++i) {
        for (size_t k = 0; k < T; ++k) col[k] = slices[k].raw()[i];
        fft::forward(col.data(), static_cast<int>(T));
        for (size_t k = 0; k < T; ++k) f.spec_[k * M + i] = col[k];
    }
    return f;
}

SpaceTimeField SpaceTimeField::from_physical(const Grid& g, double window,
                                             const std::vector<cplx>& samples) {
    const size_t M = static_cast<size_t>(g.M);
    if (samples.size() % M != 0)
        throw DimensionError("SpaceTimeField::from_physical: sample count not a slice multiple");
    SpaceTimeField f(g, window, static_cast<int>(samples.size() / M));
    const size_t T = static_cast<size_t>(f.T_);
    f.spec_ = samples;
    for (size_t k = 0; k < T; ++k) fft::forward(f.spec_.data() + k * M, static_cast<int>(M));
    std::vector<cplx> col(T);
    for (size_t i = 0; i < M; ++i) {
        for (size_t k = 0; k < T; ++k) col[k] = f.spec_[k * M + i];
        fft::forward(col.data(), static_cast<int>(T));
        for (size_t k = 0; k < T; ++k) f.spec_[k * M + i] = col[k];
    }
    return f;
}

std::vector<cplx> SpaceTimeField::physical() const {
    const size_t M = static_cast<size_t>(grid_.M);
    const size_t T = static_cast<size_t>(T_);
    std::vector<cplx> out = spec_;
    std::vector<cplx> col(T);
    for (size_t i = 0; i < M; ++i) {
        for (size_t k = 0; k < T; ++k) col[k] = out[k * M + i];
        fft::backward(col.data(), static_cast<int>(T));
        for (size_t k = 0; k < T; ++k) out[k * M + i] = col[k];
    }
    for (size_t k = 0; k < T; ++k) fft::backward(out.data() + k * M, static_cast<int>(M));
    return out;
}

void SpaceTimeField::apply_taper(const TaperSpec& spec) {
    const size_t M = static_cast<size_t>(grid_.M);
    const size_t T = static_cast<size_t>(T_);
    std::vector<double> w(T);
    for (size_t k = 0; k < T; ++k)
        w[k] = taper_value(spec, W_ * static_cast<double>(k) / static_cast<double>(T));
    std::vector<cplx> col(T);
    for (size_t i = 0; i < M; ++i) {
        for (size_t k = 0; k < T; ++k) col[k] = spec_[k * M + i];
        fft::backward(col.data(), static_cast<int>(T));
        for (size_t k = 0; k < T; ++k) col[k] *= w[k];
        fft::forward(col.data(), static_cast<int>(T));
        for (size_t k = 0; k < T; ++k) spec_[k * M + i] = col[k];
    }
}

double phase_symbol(PropagatorKind kind, double xi) {
    switch (kind) {
        case PropagatorKind::schrodinger: return xi * xi;
        case PropagatorKind::half_wave_plus: return std::abs(xi);
        case PropagatorKind::half_wave_minus: return -std::abs(xi);
    }
    return 0.0;
}

namespace {

template <typename SpatialWeight>
double weighted_l2(const SpaceTimeField& f, SpatialWeight&& wx, double b, PropagatorKind phase) {
    const Grid& g = f.grid();
    double sum = 0.0;
    for (int j = g.j_min(); j <= g.j_max(); ++j) {
        double xi = g.xi(j);
        double sw = wx(xi, j);
        if (sw == 0.0) continue;
        double phi = phase_symbol(phase, xi);
        for (int m = f.m_min(); m <= f.m_max(); ++m) {
            double mw = b == 0.0 ? 1.0 : std::pow(bracket(f.tau(m) + phi), 2.0 * b);
            sum += sw * mw * std::norm(f.spectrum(j, m));
        }
    }
    return std::sqrt(g.L * f.window() * sum);
}

} // namespace

double xsb_norm(const SpaceTimeField& f, double s, double b, PropagatorKind phase) {
    return weighted_l2(
        f, [s](double xi, int) { return s == 0.0 ? 1.0 : std::pow(bracket(xi), 2.0 * s); }, b,
        phase);
}

double xsb_norm_homogeneous(const SpaceTimeField& f, double s, double b, PropagatorKind phase) {
    if (s < 0.0) {
        double peak = 0.0;
        for (int j = f.grid().j_min(); j <= f.grid().j_max(); ++j)
            for (int m = f.m_min(); m <= f.m_max(); ++m)
                peak = std::max(peak, std::abs(f.spectrum(j, m)));
        for (int m = f.m_min(); m <= f.m_max(); ++m)
            if (std::abs(f.spectrum(0, m)) > 1e-12 * peak)
                throw ZeroModeError(
                    "xsb_norm_homogeneous: spatial mean must vanish for negative s");
    }
    return weighted_l2(
        f, [s](double xi, int j) { return j == 0 ? 0.0 : std::pow(std::abs(xi), 2.0 * s); }, b,
        phase);
}

// With the continuum dictionary F(xi_j, tau_m) = (L W / 2 pi) F_{j,m} and cell
// measures d xi = 2 pi / L, d tau = 2 pi / W, the L^2_xi L^1_tau norm becomes
// sqrt(2 pi L) * (sum_j <xi_j>^{2s} (sum_m <tau_m + phi>^{-1} |F_{j,m}|)^2)^{1/2}.
double ys_norm(const SpaceTimeField& f, double s, PropagatorKind phase) {
    const Grid& g = f.grid();
    double sum = 0.0;
    for (int j = g.j_min(); j <= g.j_max(); ++j) {
        double xi = g.xi(j);
        double phi = phase_symbol(phase, xi);
        double inner = 0.0;
        for (int m = f.m_min(); m <= f.m_max(); ++m)
            inner += std::abs(f.spectrum(j, m)) / bracket(f.tau(m) + phi);
        double sw = std::pow(bracket(xi), 2.0 * s);
        sum += sw * inner * inner;
    }
    return std::sqrt(2.0 * std::numbers::pi * g.L) * std::sqrt(sum);
}

double lq_lr_norm(const SpaceTimeField& f, double q, double r) {
    if (!(q >= 1.0) || !(r >= 1.0)) throw DomainError("lq_lr_norm: need q, r >= 1");
    const Grid& g = f.grid();
    const size_t M = static_cast<size_t>(g.M);
    const size_t T = static_cast<size_t>(f.t_samples());
    std::vector<cplx> vals = f.physical();
    double dx = g.L / static_cast<double>(M);
    double dt = f.window() / static_cast<double>(T);
    double acc = 0.0;
    double sup = 0.0;
    for (size_t k = 0; k < T; ++k) {
        double slice = 0.0;
        if (std::isinf(r)) {
            for (size_t i = 0; i < M; ++i) slice = std::max(slice, std::abs(vals[k * M + i]));
        } else {
            double s = 0.0;
            for (size_t i = 0; i < M; ++i) s += std::pow(std::abs(vals[k * M + i]), r);
            slice = std::pow(dx * s, 1.0 / r);
        }
        if (std::isinf(q)) sup = std::max(sup, slice);
        else acc += std::pow(slice, q);
    }
    return std::isinf(q) ? sup : std::pow(dt * acc, 1.0 / q);
}

namespace {

void truncate_spacetime(SpaceTimeField& f) {
    const Grid& g = f.grid();
    int T = f.t_samples();
    for (int j = g.j_min(); j <= g.j_max(); ++j)
        for (int m = f.m_min(); m <= f.m_max(); ++m)
            if (3 * std::abs(j) > g.M || 3 * std::abs(m) > T) f.set_spectrum(j, m, cplx(0.0));
}

} // namespace

SpaceTimeField spacetime_product(const SpaceTimeField& f, const SpaceTimeField& g) {
    require_same_grid(f.grid(), g.grid(), "spacetime_product");
    if (f.t_samples() != g.t_samples() || f.window() != g.window())
        throw DimensionError("spacetime_product: time grids differ");
    SpaceTimeField a = f;
    SpaceTimeField b = g;
    truncate_spacetime(a);
    truncate_spacetime(b);
    std::vector<cplx> va = a.physical();
    std::vector<cplx> vb = b.physical();
    for (size_t i = 0; i < va.size(); ++i) va[i] *= vb[i];
    SpaceTimeField out = SpaceTimeField::from_physical(f.grid(), f.window(), va);
    truncate_spacetime(out);
    return out;
}

// The Schrodinger-admissible family is 2/q = 1 - eta b/b0, 1/2 - 1/r = (1-eta) b/b0
// with 1/2 <= eta <= 1, 0 <= b <= b0, b0 > 1/2.  Writing p1 = 1 - 2/q and
// p2 = 1/2 - 1/r, a pair (q, r, b) belongs to it iff p1 >= p2 >= 0, p1 + p2 <= 1,
// and b > (p1 + p2)/2 -- except at the corner p1 = p2 = 0 where b must vanish.
StrichartzCheck strichartz_admissible(double q, double r, double b) {
    StrichartzCheck chk;
    if (!(q >= 2.0) || !(r >= 2.0)) {
        chk.reason = "q and r must be at least 2";
        return chk;
    }
    if (b < 0.0) {
        chk.reason = "b must be nonnegative";
        return chk;
    }
    double p1 = std::isinf(q) ? 1.0 : 1.0 - 2.0 / q;
    double p2 = std::isinf(r) ? 0.5 : 0.5 - 1.0 / r;
    if (p1 < p2) {
        chk.reason = "needs 1 - 2/q >= 1/2 - 1/r";
        return chk;
    }
    if (p1 + p2 == 0.0) {
        if (b == 0.0) chk.admissible = true;
        else chk.reason = "only b = 0 is admissible at q = r = 2";
        return chk;
    }
    if (p1 + p2 > 1.0) {
        chk.reason = "needs (1 - 2/q) + (1/2 - 1/r) <= 1";
        return chk;
    }
    if (!(b > 0.5 * (p1 + p2))) {
        chk.reason = "needs b > ((1 - 2/q) + (1/2 - 1/r)) / 2";
        return chk;
    }
    chk.admissible = true;
    return chk;
}

double strichartz_ratio(const SpaceTimeField& f, double q, double r, double b) {
    StrichartzCheck chk = strichartz_admissible(q, r, b);
    if (!chk.admissible) throw DomainError("strichartz_ratio: " + chk.reason);
    double denom = xsb_norm(f, 0.0, b, PropagatorKind::schrodinger);
    if (!(denom > 0.0)) throw DegenerateInputError("strichartz_ratio: vanishing reference norm");
    return lq_lr_norm(f, q, r) / denom;
}

double restricted_norm_of_path(const std::vector<double>& times,
                               const std::vector<SpectralField>& fields,
                               const std::vector<size_t>& panel_starts, double s, double b,
                               PropagatorKind phase, const RestrictionOptions& opts) {
    if (times.size() < 2 || fields.size() != times.size())
        throw DimensionError("restricted_norm_of_path: need a sampled path");
    if (!(opts.support_margin > 0.0) || !(opts.support_margin <= 1.0))
        throw DomainError("restricted_norm_of_path: support_margin must lie in (0, 1]");
    double t0 = times.front();
    double len = times.back() - t0;
    if (!(len > 0.0)) throw DegenerateInputError("restricted_norm_of_path: empty interval");

    int T = std::max(16, opts.t_samples);
    if (T % 2 != 0) ++T;
    double W = 3.0 * len;

    TaperSpec taper;
    taper.center = 0.5 * len;
    taper.plateau_radius = 0.5 * len;
    taper.support_radius = (0.5 + opts.support_margin) * len;

    std::vector<SpectralField> slices;
    slices.reserve(static_cast<size_t>(T));
    for (int k = 0; k < T; ++k) {
        // Extension coordinate in [-len, 2 len); even reflection at both ends.
        double e = -len + W * static_cast<double>(k) / static_cast<double>(T);
        double inside = e < 0.0 ? -e : (e > len ? 2.0 * len - e : e);
        inside = std::clamp(inside, 0.0, len);
        SpectralField fld = interpolate_path(times, fields, panel_starts, t0 + inside);
        fld *= cplx(taper_value(taper, e));
        slices.push_back(std::move(fld));
    }
    SpaceTimeField ext = SpaceTimeField::from_slices(fields.front().grid(), W, slices);
    return xsb_norm(ext, s, b, phase);
}

double restricted_norm(const TrajectorySlice& traj, StateComponent comp, double s, double b,
                       PropagatorKind phase, const RestrictionOptions& opts) {
    std::vector<SpectralField> path;
    path.reserve(traj.states.size());
    for (const auto& st : traj.states) {
        switch (comp) {
            case StateComponent::u: path.push_back(st.u); break;
            case StateComponent::n_plus: path.push_back(st.n_plus); break;
            case StateComponent::n_minus: path.push_back(st.n_minus); break;
        }
    }
    return restricted_norm_of_path(traj.times, path, traj.panel_starts, s, b, phase, opts);
}

} // namespace zk
