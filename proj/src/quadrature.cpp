#include "zk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zk/errors.hpp"

namespace zk {

namespace {

// Legendre P_n(x) and P_n'(x) by recurrence.
void legendre(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) { p = p0; dp = 0.0; return; }
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

} // namespace

GaussRule gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: need at least one node");
    GaussRule r;
    r.nodes.resize(static_cast<size_t>(n));
    r.weights.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, then Newton.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double p = 0.0, dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            legendre(n, x, p, dp);
            double dx = -p / dp;
            x += dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre(n, x, p, dp);
        r.nodes[static_cast<size_t>(n - 1 - i)] = x;
        r.weights[static_cast<size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

std::vector<double> gauss_lobatto_nodes(int n) {
    if (n < 2) throw DomainError("gauss_lobatto_nodes: need at least two nodes");
    std::vector<double> t(static_cast<size_t>(n));
    t.front() = -1.0;
    t.back() = 1.0;
    // Interior nodes are the roots of P'_{n-1}; Newton on dp with Chebyshev seeds.
    for (int i = 1; i < n - 1; ++i) {
        double x = std::cos(std::numbers::pi * i / (n - 1.0));
        for (int it = 0; it < 100; ++it) {
            double p, dp;
            legendre(n - 1, x, p, dp);
            // d/dx P'_{n-1} from the Legendre ODE: (1-x^2) P'' = 2x P' - n(n-1) P
            double ddp = (2.0 * x * dp - (n - 1.0) * n * p) / (1.0 - x * x);
            double dx = -dp / ddp;
            x += dx;
            if (std::abs(dx) < 1e-15) break;
        }
        t[static_cast<size_t>(n - 1 - i)] = x;
    }
    std::sort(t.begin(), t.end());
    return t;
}

std::vector<std::vector<double>> cumulative_integration_matrix(const std::vector<double>& t) {
    const int n = static_cast<int>(t.size());
    if (n < 2) throw DomainError("cumulative_integration_matrix: need at least two nodes");
    std::vector<double> w = barycentric_weights(t);
    // Lagrange basis ell_m has degree n-1; an n-point Gauss rule integrates it exactly.
    GaussRule gr = gauss_legendre(n);
    std::vector<std::vector<double>> Q(static_cast<size_t>(n),
                                       std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int k = 1; k < n; ++k) {
        double a = t[0], b = t[static_cast<size_t>(k)];
        double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (size_t q = 0; q < gr.nodes.size(); ++q) {
            double x = mid + half * gr.nodes[q];
            std::vector<double> c = barycentric_coeffs(t, w, x);
            for (int m = 0; m < n; ++m)
                Q[static_cast<size_t>(k)][static_cast<size_t>(m)] +=
                    half * gr.weights[q] * c[static_cast<size_t>(m)];
        }
    }
    return Q;
}

std::vector<double> barycentric_weights(const std::vector<double>& t) {
    const size_t n = t.size();
    std::vector<double> w(n, 1.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j) w[i] /= (t[i] - t[j]);
    return w;
}

std::vector<double> barycentric_coeffs(const std::vector<double>& t,
                                       const std::vector<double>& w, double x) {
    const size_t n = t.size();
    std::vector<double> c(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        if (x == t[i]) {
            c[i] = 1.0;
            return c;
        }
    }
    double denom = 0.0;
    for (size_t i = 0; i < n; ++i) {
        c[i] = w[i] / (x - t[i]);
        denom += c[i];
    }
    for (size_t i = 0; i < n; ++i) c[i] /= denom;
    return c;
}

double integrate_peaked(const std::function<double(double)>& f, double lo, double hi,
                        const std::vector<double>& peaks, double peak_width,
                        int points_per_side, int backbone) {
    if (!(hi > lo)) return 0.0;
    std::vector<double> pts;
    pts.reserve(static_cast<size_t>(backbone + 2 * points_per_side * (static_cast<int>(peaks.size()) + 1) + 2));
    for (int i = 0; i <= backbone; ++i)
        pts.push_back(lo + (hi - lo) * i / backbone);
    double range = hi - lo;
    double u_max = std::log1p(range / peak_width);
    for (double p : peaks) {
        if (p < lo - range || p > hi + range) continue;
        for (int i = 0; i <= points_per_side; ++i) {
            double off = peak_width * std::expm1(u_max * i / points_per_side);
            for (double sgn : {-1.0, 1.0}) {
                double x = p + sgn * off;
                if (x >= lo && x <= hi) pts.push_back(x);
            }
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double acc = 0.0;
    double f_prev = f(pts[0]);
    for (size_t i = 1; i < pts.size(); ++i) {
        double f_cur = f(pts[i]);
        acc += 0.5 * (f_prev + f_cur) * (pts[i] - pts[i - 1]);
        f_prev = f_cur;
    }
    return acc;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw DegenerateInputError("fit_slope: need at least two matched samples");
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    if (den == 0.0) throw DegenerateInputError("fit_slope: degenerate abscissae");
    return num / den;
}

} // namespace zk
