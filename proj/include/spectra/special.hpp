#pragma once
// Self-contained special functions and quadrature rules used by the
// distribution evaluators: Airy Ai/Ai', exponentially scaled modified
// Bessel I0/I1, regularized incomplete gamma, Gauss-Legendre rules.

#include <utility>
#include <vector>

namespace spectra::special {

struct AiryValue {
    double ai;
    double aip;
};

/// Ai(x) and Ai'(x). Absolute error below ~1e-12 on [-60, inf).
AiryValue airy(double x);

/// Exponentially scaled modified Bessel functions e^{-x} I0(x), e^{-x} I1(x), x >= 0.
double bessel_i0e(double x);
double bessel_i1e(double x);

/// Regularized lower incomplete gamma P(a, x); Q = 1 - P.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

struct QuadRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;
};

/// m-point Gauss-Legendre rule on (-1, 1).
const QuadRule& gauss_legendre(int m);

/// Integrate f over [a, b] with composite Gauss-Legendre panels.
template <class F>
double integrate(F&& f, double a, double b, int panels = 16, int order = 20) {
    const QuadRule& rule = gauss_legendre(order);
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
            total += rule.weights[j] * f(mid + 0.5 * h * rule.nodes[j]);
    }
    return total * 0.5 * h;
}

/// int_x^inf e^{w t} Ai(t) dt (absolutely convergent for the arguments used;
/// integrand decays superexponentially past t ~ w^2).
double airy_exp_integral_upper(double x, double w);

/// int_{-inf}^x e^{-w(x-t)} Ai(t) dt for w >= 0.
double airy_exp_tail(double x, double w);

}  // namespace spectra::special
