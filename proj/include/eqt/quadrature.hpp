#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace eqt::quad {

// Nodes and weights of a one-dimensional quadrature rule.
struct Rule1D {
    std::vector<double> x;
    std::vector<double> w;
};

// Generalized Gauss-Laguerre rule: integrates f against x^alpha e^{-x} on
// (0, inf) exactly for polynomial f of degree <= 2n-1.  Requires alpha > -1.
Rule1D gauss_laguerre(int n, double alpha);

// Gauss-Legendre rule on [-1, 1], and shifted to [a, b].
Rule1D gauss_legendre(int n);
Rule1D gauss_legendre(int n, double a, double b);

// Trapezoid rule for periodic integrands over one full period.  Spectrally
// accurate; exact for trigonometric polynomials of degree < n.
double periodic_trapezoid(const std::function<double(double)>& f,
                          double period, int n);

struct QuadResult {
    double value = 0.0;
    double err_estimate = 0.0;
    bool converged = false;
    std::size_t evals = 0;
};

// Adaptive Gauss-Kronrod 15(7) on a finite interval.
QuadResult adaptive_gk(const std::function<double(double)>& f, double a,
                       double b, double abs_tol, double rel_tol,
                       int max_depth = 40);

// Double-exponential (tanh-sinh) rule on a finite interval.  Tolerates
// integrable endpoint singularities.  Refines by level doubling until the
// last doubling changes the value by <= rel_tol in relative terms.
QuadResult tanh_sinh(const std::function<double(double)>& f, double a,
                     double b, double rel_tol, int max_level = 12);

// Double-exponential (exp-sinh) rule on (0, inf) for integrands decaying
// exponentially at infinity.  `scale` sets the unit of length.
QuadResult exp_sinh(const std::function<double(double)>& f, double scale,
                    double rel_tol, int max_level = 12);

// Pairwise (cascade) summation; deterministic and O(eps log n) error.
double pairwise_sum(std::span<const double> v);

}  // namespace eqt::quad
