#pragma once

#include <functional>

// Special functions for integer fading shapes and a semi-infinite quadrature
// helper used by the coverage analysis.
namespace ccr::special {

// Regularized upper incomplete gamma Q(n, x) = Gamma(n, x) / Gamma(n), n >= 1.
double gamma_q_int(int n, double x);
// Regularized lower incomplete gamma P(n, x) = 1 - Q(n, x), accurate when small.
double gamma_p_int(int n, double x);

// (n-1)! for n >= 1, i.e. Gamma(n).
double gamma_int(int n);
double factorial(int n);
double binomial(int n, int k);
// Gamma(a + l) / Gamma(a) for integer a >= 1, l >= 0.
double rising(int a, int l);

// Gamma(m, m) density at t (unit-mean Nakagami power).
double gamma_unit_pdf(int m, double t);

struct Integral {
    double value;
    double error;
};

// Adaptive Gauss-Kronrod integration of f over [0, inf) after the change of
// variables z = t / (1 - t). Throws NumericalError when the estimated error
// exceeds abs_tol.
Integral integrate_half_line(const std::function<double(double)>& f, double abs_tol = 1e-8);

// Adaptive Gauss-Kronrod on a finite interval with the same error contract.
Integral integrate(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-8);

}  // namespace ccr::special
