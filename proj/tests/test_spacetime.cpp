#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "zk/errors.hpp"
#include "zk/evolution.hpp"
#include "zk/field.hpp"
#include "zk/rng.hpp"
#include "zk/spacetime.hpp"

using namespace zk;

namespace {

constexpr double pi = std::numbers::pi;
const double inf = std::numeric_limits<double>::infinity();

// Random band-limited space-time field (edge rows empty so reflections are clean).
SpaceTimeField random_st(const Grid& g, double W, int T, uint64_t seed) {
    SpaceTimeField f(g, W, T);
    CounterRng rng(seed, 0);
    uint64_t c = 0;
    for (int j = -g.M / 3; j <= g.M / 3; ++j)
        for (int m = -T / 3; m <= T / 3; ++m) {
            f.set_spectrum(j, m, std::polar(rng.uniform(2 * c), rng.angle(2 * c + 1)));
            ++c;
        }
    return f;
}

// Sampled free Schrodinger wave e^{i(kx - k^2 t)} on a matching periodic window.
SpaceTimeField free_wave(const Grid& g, int T, int k) {
    std::vector<SpectralField> slices;
    for (int m = 0; m < T; ++m) {
        double t = 2.0 * pi * m / T;
        SpectralField s(g);
        s.set_coeff(k, std::polar(1.0, -static_cast<double>(k) * k * t));
        slices.push_back(s);
    }
    return SpaceTimeField::from_slices(g, 2.0 * pi, slices);
}

} // namespace

TEST_CASE("taper window shape") {
    TaperSpec spec{1.0, 0.5, 1.5};
    CHECK(taper_value(spec, 1.0) == 1.0);
    CHECK(taper_value(spec, 0.6) == 1.0);
    CHECK(taper_value(spec, 1.5) == 1.0);
    CHECK(taper_value(spec, 2.5) == 0.0);
    CHECK(taper_value(spec, -0.5) == 0.0);
    CHECK(taper_value(spec, 3.0) == 0.0);
    double a = taper_value(spec, 1.7);
    double b = taper_value(spec, 2.0);
    double c = taper_value(spec, 2.3);
    CHECK(a > b);
    CHECK(b > c);
    CHECK(a < 1.0);
    CHECK(c > 0.0);
    // Symmetric about the center.
    CHECK(taper_value(spec, 1.0 + 0.8) == doctest::Approx(taper_value(spec, 1.0 - 0.8)));

    TaperSpec bad{0.0, 1.0, 1.0};
    CHECK_THROWS_AS(taper_value(bad, 0.0), DomainError);

    TaperSpec d = default_taper(4.0);
    CHECK(d.center == doctest::Approx(2.0));
    CHECK(d.plateau_radius == doctest::Approx(1.0));
    CHECK(d.support_radius == doctest::Approx(2.0));
}

TEST_CASE("space-time field shape checks") {
    Grid g(2.0 * pi, 16);
    CHECK_THROWS_AS(SpaceTimeField(g, 2.0 * pi, 3), DimensionError);
    CHECK_THROWS_AS(SpaceTimeField(g, 2.0 * pi, 2), DimensionError);
    SpaceTimeField f(g, 2.0 * pi, 8);
    CHECK(f.m_min() == -4);
    CHECK(f.m_max() == 3);
    CHECK(f.tau(3) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(f.t_samples() == 8);
}

TEST_CASE("free plane wave concentrates on a single space-time mode") {
    Grid g(2.0 * pi, 16);
    int T = 32;
    SpaceTimeField f = free_wave(g, T, 3);
    CHECK(std::abs(f.spectrum(3, -9) - cplx(1.0)) < 1e-12);
    double mass = 0.0;
    for (int j = g.j_min(); j <= g.j_max(); ++j)
        for (int m = f.m_min(); m <= f.m_max(); ++m)
            if (!(j == 3 && m == -9)) mass += std::abs(f.spectrum(j, m));
    CHECK(mass < 1e-10);
}

TEST_CASE("xsb norm of a free wave: zero modulation for every b") {
    Grid g(2.0 * pi, 16);
    SpaceTimeField f = free_wave(g, 32, 3);
    double base = std::sqrt(g.L * f.window());
    for (double s : {0.0, 0.5, 1.0})
        for (double b : {0.0, 0.5, 2.0, 5.0})
            CHECK(xsb_norm(f, s, b, PropagatorKind::schrodinger) ==
                  doctest::Approx(base * std::pow(10.0, s / 2.0)).epsilon(1e-10));
    CHECK(xsb_norm(f, 1.0, 0.0, PropagatorKind::schrodinger) /
              xsb_norm(f, 0.0, 0.0, PropagatorKind::schrodinger) ==
          doctest::Approx(std::sqrt(10.0)).epsilon(1e-10));
}

TEST_CASE("phase symbols") {
    CHECK(phase_symbol(PropagatorKind::schrodinger, -3.0) == doctest::Approx(9.0));
    CHECK(phase_symbol(PropagatorKind::half_wave_plus, -3.0) == doctest::Approx(3.0));
    CHECK(phase_symbol(PropagatorKind::half_wave_minus, -3.0) == doctest::Approx(-3.0));
}

TEST_CASE("xsb norm at b = 0 is the time-integrated sobolev norm") {
    Grid g(2.0 * pi, 24);
    int T = 24;
    SpaceTimeField f = random_st(g, 2.0 * pi, T, 4);
    // Phase choice is irrelevant at b = 0.
    double a = xsb_norm(f, 0.7, 0.0, PropagatorKind::schrodinger);
    double b = xsb_norm(f, 0.7, 0.0, PropagatorKind::half_wave_plus);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));

    // Parseval in time: the slice-wise Riemann sum is exact for band-limited data.
    std::vector<cplx> phys = f.physical();
    double acc = 0.0;
    for (int k = 0; k < T; ++k) {
        std::vector<cplx> slice(phys.begin() + k * g.M, phys.begin() + (k + 1) * g.M);
        SpectralField sf = forward_transform(g, slice);
        double ns = sobolev_norm(sf, 0.7);
        acc += ns * ns;
    }
    CHECK(a == doctest::Approx(std::sqrt(acc * f.window() / T)).epsilon(1e-10));
}

TEST_CASE("xsb norm is monotone in s and b") {
    Grid g(2.0 * pi, 24);
    SpaceTimeField f = random_st(g, 2.0 * pi, 24, 5);
    CHECK(xsb_norm(f, 1.0, 0.3, PropagatorKind::schrodinger) >=
          xsb_norm(f, 0.5, 0.3, PropagatorKind::schrodinger));
    CHECK(xsb_norm(f, 0.5, 0.8, PropagatorKind::schrodinger) >=
          xsb_norm(f, 0.5, 0.3, PropagatorKind::schrodinger));
}

TEST_CASE("conjugation-reflection maps the two wave spaces onto each other") {
    Grid g(2.0 * pi, 24);
    int T = 24;
    SpaceTimeField f = random_st(g, 2.0 * pi, T, 6);
    SpaceTimeField cr(g, 2.0 * pi, T);
    SpaceTimeField refl(g, 2.0 * pi, T);
    for (int j = -g.M / 2 + 1; j <= g.M / 2 - 1; ++j)
        for (int m = -T / 2 + 1; m <= T / 2 - 1; ++m) {
            cr.set_spectrum(j, m, std::conj(f.spectrum(-j, -m)));
            refl.set_spectrum(j, m, f.spectrum(-j, m));
        }
    for (double s : {0.0, 0.8})
        for (double b : {0.25, 0.6}) {
            CHECK(xsb_norm(cr, s, b, PropagatorKind::half_wave_minus) ==
                  doctest::Approx(xsb_norm(f, s, b, PropagatorKind::half_wave_plus))
                      .epsilon(1e-12));
            // The dispersive phase is even in xi: spatial reflection is isometric.
            CHECK(xsb_norm(refl, s, b, PropagatorKind::schrodinger) ==
                  doctest::Approx(xsb_norm(f, s, b, PropagatorKind::schrodinger))
                      .epsilon(1e-12));
        }
}

TEST_CASE("homogeneous xsb norm zero-mode policy") {
    Grid g(2.0 * pi, 16);
    SpaceTimeField f(g, 2.0 * pi, 8);
    f.set_spectrum(2, -4, cplx(1.0));
    CHECK(xsb_norm_homogeneous(f, -0.5, 0.0, PropagatorKind::schrodinger) ==
          doctest::Approx(std::sqrt(g.L * 2.0 * pi) * std::pow(2.0, -0.5)).epsilon(1e-12));
    f.set_spectrum(0, 1, cplx(0.5));
    CHECK_THROWS_AS(xsb_norm_homogeneous(f, -0.5, 0.0, PropagatorKind::schrodinger),
                    ZeroModeError);
    CHECK_NOTHROW(xsb_norm_homogeneous(f, 0.5, 0.0, PropagatorKind::schrodinger));
}

TEST_CASE("ys norm closed form on a spike and direct sum on random data") {
    Grid g(2.0 * pi, 16);
    int T = 16;
    SpaceTimeField f(g, 2.0 * pi, T);
    f.set_spectrum(2, -4, cplx(0.0, 0.7));
    // sigma = tau + xi^2 = -4 + 4 = 0, so the modulation weight is 1.
    CHECK(ys_norm(f, 0.6, PropagatorKind::schrodinger) ==
          doctest::Approx(std::sqrt(2.0 * pi * g.L) * std::pow(5.0, 0.3) * 0.7)
              .epsilon(1e-12));

    SpaceTimeField r = random_st(g, 2.0 * pi, T, 7);
    double acc = 0.0;
    for (int j = g.j_min(); j <= g.j_max(); ++j) {
        double inner = 0.0;
        for (int m = r.m_min(); m <= r.m_max(); ++m)
            inner += std::abs(r.spectrum(j, m)) /
                     bracket(r.tau(m) + phase_symbol(PropagatorKind::schrodinger, g.xi(j)));
        acc += std::pow(bracket(g.xi(j)), 1.2) * inner * inner;
    }
    CHECK(ys_norm(r, 0.6, PropagatorKind::schrodinger) ==
          doctest::Approx(std::sqrt(2.0 * pi * g.L * acc)).epsilon(1e-12));
}

TEST_CASE("strichartz admissibility bookkeeping") {
    CHECK(strichartz_admissible(2.0, 2.0, 0.0).admissible);
    StrichartzCheck corner = strichartz_admissible(2.0, 2.0, 0.3);
    CHECK(!corner.admissible);
    CHECK(corner.reason.find("only b = 0") != std::string::npos);

    CHECK(strichartz_admissible(4.0, 4.0, 0.4).admissible);
    CHECK(!strichartz_admissible(4.0, 4.0, 0.375).admissible);
    CHECK(strichartz_admissible(inf, 2.0, 0.51).admissible);
    CHECK(!strichartz_admissible(inf, 2.0, 0.5).admissible);

    StrichartzCheck order = strichartz_admissible(2.0, 4.0, 0.4);
    CHECK(!order.admissible);
    CHECK(order.reason.find("1 - 2/q >= 1/2 - 1/r") != std::string::npos);

    StrichartzCheck small_q = strichartz_admissible(1.5, 4.0, 0.4);
    CHECK(!small_q.admissible);
    CHECK(small_q.reason.find("at least 2") != std::string::npos);
    CHECK(!strichartz_admissible(4.0, 4.0, -0.1).admissible);
}

TEST_CASE("lq_lr norm and strichartz ratio") {
    Grid g(2.0 * pi, 24);
    int T = 24;
    SpaceTimeField f = random_st(g, 2.0 * pi, T, 8);

    // L^2_t L^2_x collocation equals the Plancherel value, so the ratio is 1.
    CHECK(lq_lr_norm(f, 2.0, 2.0) ==
          doctest::Approx(xsb_norm(f, 0.0, 0.0, PropagatorKind::schrodinger)).epsilon(1e-12));
    CHECK(strichartz_ratio(f, 2.0, 2.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

    // L^inf bounds: sup over samples dominates the mean.
    double li = lq_lr_norm(f, inf, 2.0);
    double l2 = lq_lr_norm(f, 2.0, 2.0);
    CHECK(li * std::sqrt(f.window()) >= l2 * (1.0 - 1e-12));

    CHECK_THROWS_AS(strichartz_ratio(f, 2.0, 2.0, 0.3), DomainError);
    SpaceTimeField zero(g, 2.0 * pi, T);
    CHECK_THROWS_AS(strichartz_ratio(zero, 2.0, 2.0, 0.0), DegenerateInputError);

    // Free waves saturate the L^4 bound family stably: finite ratio, stable in b.
    SpaceTimeField fw = free_wave(g, T, 2);
    double r1 = strichartz_ratio(fw, 4.0, 4.0, 0.4);
    double r2 = strichartz_ratio(fw, 4.0, 4.0, 0.6);
    CHECK(r1 > 0.0);
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-10));  // zero modulation: b drops out
}

TEST_CASE("spacetime product truncates both factors and the result") {
    Grid g(2.0 * pi, 24);
    int T = 24;
    SpaceTimeField a(g, 2.0 * pi, T), b(g, 2.0 * pi, T);
    a.set_spectrum(2, 1, cplx(1.0));
    b.set_spectrum(3, -2, cplx(1.0));
    SpaceTimeField p = spacetime_product(a, b);
    CHECK(std::abs(p.spectrum(5, -1) - cplx(1.0)) < 1e-12);

    // A factor outside the band is dropped entirely (3*9 > 24).
    SpaceTimeField hi(g, 2.0 * pi, T);
    hi.set_spectrum(9, 0, cplx(1.0));
    SpaceTimeField q = spacetime_product(hi, b);
    double total = 0.0;
    for (int j = g.j_min(); j <= g.j_max(); ++j)
        for (int m = q.m_min(); m <= q.m_max(); ++m) total += std::abs(q.spectrum(j, m));
    CHECK(total < 1e-12);

    // In-band factors with an out-of-band sum: the output row is cleared.
    SpaceTimeField c(g, 2.0 * pi, T);
    c.set_spectrum(7, 0, cplx(1.0));
    SpaceTimeField d(g, 2.0 * pi, T);
    d.set_spectrum(6, 0, cplx(1.0));
    SpaceTimeField s = spacetime_product(c, d);  // true product at j = 13 > 8
    total = 0.0;
    for (int j = g.j_min(); j <= g.j_max(); ++j)
        for (int m = s.m_min(); m <= s.m_max(); ++m) total += std::abs(s.spectrum(j, m));
    CHECK(total < 1e-12);
}

TEST_CASE("apply_taper acts as the physical window") {
    Grid g(2.0 * pi, 8);
    int T = 16;
    std::vector<cplx> ones(static_cast<size_t>(T) * g.M, cplx(1.0));
    SpaceTimeField f = SpaceTimeField::from_physical(g, 2.0 * pi, ones);
    f.apply_taper(default_taper(2.0 * pi));
    std::vector<cplx> phys = f.physical();
    for (int k = 0; k < T; ++k) {
        double t = 2.0 * pi * k / T;
        double expect = taper_value(default_taper(2.0 * pi), t);
        CHECK(std::abs(phys[static_cast<size_t>(k) * g.M] - cplx(expect)) < 1e-12);
    }
}

TEST_CASE("restricted norm: zero path, free-flow lower bound, margin stability") {
    Grid g(2.0 * pi, 32);
    FirstOrderState data;
    data.u = SpectralField(g);
    data.n_plus = SpectralField(g);
    data.n_minus = SpectralField(g);
    data.u.set_coeff(1, cplx(0.6));
    data.u.set_coeff(-3, cplx(0.4, 0.2));
    double interval = 0.5;
    TrajectorySlice traj = duhamel_fixed_point(data, interval);  // n = 0: free flow

    FirstOrderState znull = data;
    znull.u = SpectralField(g);
    TrajectorySlice zt = duhamel_fixed_point(znull, interval);
    CHECK(restricted_norm(zt, StateComponent::u, 0.0, 0.0, PropagatorKind::schrodinger) ==
          doctest::Approx(0.0));

    double m = l2_norm(data.u);
    double rn = restricted_norm(traj, StateComponent::u, 0.0, 0.0, PropagatorKind::schrodinger);
    CHECK(rn >= 0.95 * std::sqrt(interval) * m);

    RestrictionOptions tight;
    tight.support_margin = 0.4;
    RestrictionOptions wide;
    wide.support_margin = 1.0;
    double a = restricted_norm(traj, StateComponent::u, 0.5, 0.25,
                               PropagatorKind::schrodinger, tight);
    double b = restricted_norm(traj, StateComponent::u, 0.5, 0.25,
                               PropagatorKind::schrodinger, wide);
    CHECK(a > 0.0);
    CHECK(b > 0.0);
    CHECK(std::max(a, b) / std::min(a, b) < 2.0);

    RestrictionOptions bad;
    bad.support_margin = 0.0;
    CHECK_THROWS_AS(restricted_norm(traj, StateComponent::u, 0.0, 0.0,
                                    PropagatorKind::schrodinger, bad),
                    DomainError);
    std::vector<double> one_time = {0.0};
    std::vector<SpectralField> one_field = {data.u};
    CHECK_THROWS_AS(restricted_norm_of_path(one_time, one_field, {}, 0.0, 0.0,
                                            PropagatorKind::schrodinger),
                    DimensionError);
}
