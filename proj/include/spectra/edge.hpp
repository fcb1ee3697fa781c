#pragma once
// Soft-edge distribution numerics: the Hastings-McLeod Painleve II
// transcendent (two-point boundary value problem), Tracy-Widom CDFs for
// beta = 1, 2, 4, the Lax-pair propagation giving the critical-regime laws
// F_{beta,w}, the w-deformed Airy kernel with its Fredholm determinant, and
// PDE residual verifiers for both the soft- and hard-edge characterisations.

#include <vector>

namespace spectra::edge {

struct PainleveTable {
    std::vector<double> s_grid;   // ascending, uniform step h
    std::vector<double> q;        // Hastings-McLeod solution
    std::vector<double> q_prime;
    std::vector<double> I1;       // int_s^inf q
    std::vector<double> I2;       // int_s^inf (x - s) q^2
    std::vector<double> J;        // int_s^inf q^2
    double h = 0.0;

    double s_min() const { return s_grid.front(); }
    double s_max() const { return s_grid.back(); }
    /// max residual of the solved finite-difference system
    double ode_residual = 0.0;

    double interp(const std::vector<double>& arr, double s) const;
    double q_at(double s) const { return interp(q, s); }
    double e2(double s) const;      // exp(-I2)
    double e_factor(double s) const;  // exp(-I1)
};

/// Build the table by damped Newton on a fourth-order (Numerov)
/// finite-difference discretization of q'' = s q + 2 q^3 with q = Ai on the
/// right and the sqrt(-s/2) asymptote on the left.
PainleveTable hastings_mcleod(double s_min = -12.0, double s_max = 10.0, double h = 0.005);

/// Tracy-Widom CDF E_beta^soft(s), beta in {1,2,4}. E1 uses exp(-I1/2): the
/// sign fixed by the w=0 identity with the critical-regime law.
double tw_cdf(const PainleveTable& table, int beta, double s);

struct LaxField {
    std::vector<double> s_grid;
    std::vector<double> w_grid;            // ascending from 0, uniform step
    std::vector<std::vector<double>> f;    // f[iw][is]
    std::vector<std::vector<double>> g;
    const PainleveTable* table = nullptr;

    double w_max() const { return w_grid.back(); }
};

/// Integrate the 2x2 Lax system in w from f = g = E(s) at w = 0 for every s
/// on the table grid (classic RK4, step dw). Throws if the field overflows
/// (large w * |s| leaves the stable regime in double precision).
LaxField lax_propagate(const PainleveTable& table, double w_max, double dw = 1e-3,
                       double w_store = 0.01);

/// Critical-regime CDF F_{beta,w}(s), beta in {2,4}, from a propagated field.
double crit_cdf(const LaxField& field, int beta, double w, double s);

/// w-deformed Airy kernel K^{soft}(x,y) + Ai(y) int_{-inf}^x e^{-w(x-t)} Ai(t) dt.
double deformed_airy_kernel(double x, double y, double w);

/// Undeformed Airy kernel (x = y handled by the diagonal formula).
double airy_kernel(double x, double y);

struct FredholmConfig {
    int quad_order = 64;
    double domain_length = 12.0;
};

/// F^{2,w}(s) = det(I - K^{soft,c}) on (s, s+L) by Nystrom discretization
/// with Gauss-Legendre nodes and square-root weight symmetrization.
double fredholm_f2w(double w, double s, const FredholmConfig& cfg = {});

/// Fredholm determinant of the undeformed Airy kernel (the w -> inf limit).
double fredholm_airy(double s, const FredholmConfig& cfg = {});

/// Max residual of the hard-edge PDE on the closed form (PB3), analytic
/// derivatives, over the (x, c) grid.
double pde_residual_hard_a0(double beta, const std::vector<double>& xs,
                            const std::vector<double>& cs);

/// Max residual of the soft-edge PDE on F_{2,w} built from the Lax field:
/// w-derivatives analytic from the ODE, s-derivative by five-point finite
/// differences on the table grid.
double pde_residual_soft(const LaxField& field, double s_lo, double s_hi, double w_lo,
                         double w_hi);

/// Generic second-order finite-difference residual of the soft-edge PDE for
/// a tabulated F on a rectangular (s, w) grid. Rejects grids under 5 points
/// per axis.
double pde_residual_soft_grid(const std::vector<double>& s_vals, const std::vector<double>& w_vals,
                              const std::vector<std::vector<double>>& f_vals, double beta);

}  // namespace spectra::edge
