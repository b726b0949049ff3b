#ifndef ZK_QUADRATURE_HPP
#define ZK_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace zk {

// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

// Legendre-Gauss-Lobatto nodes on [-1, 1] (endpoints included), ascending.
std::vector<double> gauss_lobatto_nodes(int n);

// Cumulative integration matrix Q for a node set t_0 < ... < t_{n-1}:
// Q[k][m] = integral from t_0 to t_k of the m-th Lagrange basis polynomial.
// Row 0 is zero; (Q * f_values)[k] integrates the interpolant up to t_k.
std::vector<std::vector<double>> cumulative_integration_matrix(const std::vector<double>& t);

// Barycentric weights for polynomial interpolation on the given nodes.
std::vector<double> barycentric_weights(const std::vector<double>& t);

// Interpolation coefficients c_m with p(x) = sum_m c_m f(t_m).
std::vector<double> barycentric_coeffs(const std::vector<double>& t,
                                       const std::vector<double>& w, double x);

// Integrate f over [lo, hi] with a graded point set clustered around the given
// peak locations (scale ~ peak_width) plus a uniform backbone; trapezoid on the
// merged grid.  Deterministic; intended for <sigma>^{-p}-type integrands.
double integrate_peaked(const std::function<double(double)>& f, double lo, double hi,
                        const std::vector<double>& peaks, double peak_width = 1.0,
                        int points_per_side = 48, int backbone = 64);

// Least squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace zk

#endif
