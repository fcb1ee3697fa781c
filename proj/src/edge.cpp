#include "spectra/edge.hpp"

#include <cmath>
#include <stdexcept>

#include "spectra/linalg.hpp"
#include "spectra/special.hpp"

namespace spectra::edge {

using special::airy;

namespace {

// Thomas solve of a tridiagonal system (lo, di, up), overwriting rhs.
void tridiag_solve(std::vector<double>& lo, std::vector<double>& di, std::vector<double>& up,
                   std::vector<double>& rhs) {
    const int n = static_cast<int>(di.size());
    for (int i = 1; i < n; ++i) {
        const double m = lo[i] / di[i - 1];
        di[i] -= m * up[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= di[n - 1];
    for (int i = n - 2; i >= 0; --i) rhs[i] = (rhs[i] - up[i] * rhs[i + 1]) / di[i];
}

// cumulative integral from s to s_max: trapezoid with the Euler-Maclaurin
// endpoint correction -h^2/12 (f'(smax) - f'(s)); O(h^4) with analytic f'.
std::vector<double> cumulative_right(const std::vector<double>& f, const std::vector<double>& fp,
                                     double h) {
    const int n = static_cast<int>(f.size());
    std::vector<double> out(n, 0.0);
    for (int i = n - 2; i >= 0; --i) out[i] = out[i + 1] + 0.5 * h * (f[i] + f[i + 1]);
    const double fp_end = fp[n - 1];
    for (int i = 0; i < n; ++i) out[i] -= h * h / 12.0 * (fp_end - fp[i]);
    return out;
}

}  // namespace

double PainleveTable::interp(const std::vector<double>& arr, double s) const {
    if (s < s_min() - 1e-12 || s > s_max() + 1e-12)
        throw std::invalid_argument("PainleveTable: s outside the table");
    const int n = static_cast<int>(s_grid.size());
    double u = (s - s_grid[0]) / h;
    int i = static_cast<int>(std::floor(u));
    i = std::min(std::max(i, 1), n - 3);
    const double t = u - i;
    // 4-point Lagrange on nodes i-1..i+2
    const double c0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
    const double c1 = (t * t - 1.0) * (t - 2.0) / 2.0;
    const double c2 = -t * (t + 1.0) * (t - 2.0) / 2.0;
    const double c3 = t * (t * t - 1.0) / 6.0;
    return c0 * arr[i - 1] + c1 * arr[i] + c2 * arr[i + 1] + c3 * arr[i + 2];
}

double PainleveTable::e2(double s) const { return std::exp(-interp(I2, s)); }
double PainleveTable::e_factor(double s) const { return std::exp(-interp(I1, s)); }

PainleveTable hastings_mcleod(double s_min, double s_max, double h) {
    if (s_max < 8.0 || s_min < -60.0 || s_min > -8.0 || h <= 0.0)
        throw std::invalid_argument("hastings_mcleod: bad grid");
    PainleveTable t;
    t.h = h;
    const int n = static_cast<int>(std::round((s_max - s_min) / h)) + 1;
    t.s_grid.resize(n);
    for (int i = 0; i < n; ++i) t.s_grid[i] = s_min + i * h;
    auto& s = t.s_grid;
    auto& q = t.q;
    q.resize(n);
    for (int i = 0; i < n; ++i)
        q[i] = (s[i] < 0 ? std::sqrt(-0.5 * s[i]) : 0.0) + airy(s[i]).ai;
    q[0] = std::sqrt(-0.5 * s_min) * (1.0 + 1.0 / (8.0 * s_min * s_min * s_min));
    q[n - 1] = airy(s_max).ai;

    auto rhs_f = [&](int i, double qi) { return s[i] * qi + 2.0 * qi * qi * qi; };
    auto rhs_fp = [&](int i, double qi) { return s[i] + 6.0 * qi * qi; };
    const int m = n - 2;
    std::vector<double> R(m), lo(m), di(m), up(m);
    double res_norm = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
        for (int i = 1; i <= m; ++i) {
            const double f0 = rhs_f(i - 1, q[i - 1]), f1 = rhs_f(i, q[i]), f2 = rhs_f(i + 1, q[i + 1]);
            R[i - 1] = (q[i - 1] - 2.0 * q[i] + q[i + 1]) / (h * h) - (f0 + 10.0 * f1 + f2) / 12.0;
        }
        res_norm = 0.0;
        for (double r : R) res_norm = std::max(res_norm, std::abs(r));
        for (int i = 1; i <= m; ++i) {
            lo[i - 1] = 1.0 / (h * h) - rhs_fp(i - 1, q[i - 1]) / 12.0;
            di[i - 1] = -2.0 / (h * h) - 10.0 * rhs_fp(i, q[i]) / 12.0;
            up[i - 1] = 1.0 / (h * h) - rhs_fp(i + 1, q[i + 1]) / 12.0;
            R[i - 1] = -R[i - 1];
        }
        tridiag_solve(lo, di, up, R);
        double dmax = 0.0;
        for (double d : R) dmax = std::max(dmax, std::abs(d));
        const double damp = dmax > 1.0 ? 1.0 / dmax : 1.0;
        for (int i = 1; i <= m; ++i) q[i] += damp * R[i - 1];
        // the residual floor is the 1/h^2 roundoff scale, so stop on step size
        if (dmax < 1e-12) {
            converged = true;
            break;
        }
    }
    if (!converged) throw std::runtime_error("hastings_mcleod: Newton failed to converge");
    t.ode_residual = res_norm;

    // q' by five-point central differences, one-sided at the ends
    auto& qp = t.q_prime;
    qp.resize(n);
    for (int i = 2; i < n - 2; ++i)
        qp[i] = (-q[i + 2] + 8.0 * q[i + 1] - 8.0 * q[i - 1] + q[i - 2]) / (12.0 * h);
    qp[0] = (-3.0 * q[0] + 4.0 * q[1] - q[2]) / (2.0 * h);
    qp[1] = (q[2] - q[0]) / (2.0 * h);
    qp[n - 2] = (q[n - 1] - q[n - 3]) / (2.0 * h);
    qp[n - 1] = airy(s_max).aip;

    // tails beyond s_max with q ~ Ai
    const double tail_I1 = special::integrate(
        [](double x) { return airy(x).ai; }, s_max, s_max + 30.0, 40, 20);
    const double tail_J = special::integrate(
        [](double x) { const double a = airy(x).ai; return a * a; }, s_max, s_max + 30.0, 40, 20);
    const double tail_T2 = special::integrate(
        [s_max](double x) { const double a = airy(x).ai; return (x - s_max) * a * a; }, s_max,
        s_max + 30.0, 40, 20);

    std::vector<double> q2(n), q2p(n);
    for (int i = 0; i < n; ++i) {
        q2[i] = q[i] * q[i];
        q2p[i] = 2.0 * q[i] * qp[i];
    }
    t.I1 = cumulative_right(q, qp, h);
    for (auto& v : t.I1) v += tail_I1;
    t.J = cumulative_right(q2, q2p, h);
    for (auto& v : t.J) v += tail_J;
    std::vector<double> mJ(n);
    for (int i = 0; i < n; ++i) mJ[i] = -q2[i];  // d/ds J = -q^2
    t.I2 = cumulative_right(t.J, mJ, h);
    for (auto& v : t.I2) v += tail_T2;
    return t;
}

double tw_cdf(const PainleveTable& table, int beta, double s) {
    if (s < table.s_min() || s > table.s_max())
        throw std::invalid_argument("tw_cdf: s outside the table");
    const double i1 = table.interp(table.I1, s);
    const double i2 = table.interp(table.I2, s);
    const double e2 = std::exp(-i2);
    switch (beta) {
        case 2: return e2;
        case 1: return std::sqrt(e2) * std::exp(-0.5 * i1);
        case 4: return std::sqrt(e2) * std::cosh(0.5 * i1);
        default: throw std::invalid_argument("tw_cdf: beta must be 1, 2 or 4");
    }
}

LaxField lax_propagate(const PainleveTable& table, double w_max, double dw, double w_store) {
    if (w_max <= 0.0 || dw <= 0.0 || dw > 1e-3 + 1e-15)
        throw std::invalid_argument("lax_propagate: need w_max > 0 and dw <= 1e-3");
    const int n = static_cast<int>(table.s_grid.size());
    const int store_every = std::max(1, static_cast<int>(std::round(w_store / dw)));
    const int nsteps = static_cast<int>(std::round(w_max / dw));
    LaxField field;
    field.table = &table;
    field.s_grid = table.s_grid;
    std::vector<double> f(n), g(n);
    for (int i = 0; i < n; ++i) f[i] = g[i] = std::exp(-table.I1[i]);
    field.w_grid.push_back(0.0);
    field.f.push_back(f);
    field.g.push_back(g);
    std::vector<double> k1f(n), k1g(n), k2f(n), k2g(n), k3f(n), k3g(n), k4f(n), k4g(n);
    auto rhs = [&](double w, const std::vector<double>& fi, const std::vector<double>& gi,
                   std::vector<double>& of, std::vector<double>& og) {
        for (int i = 0; i < n; ++i) {
            const double qi = table.q[i], qpi = table.q_prime[i], si = table.s_grid[i];
            of[i] = qi * qi * fi[i] + (-w * qi - qpi) * gi[i];
            og[i] = (-w * qi + qpi) * fi[i] + (w * w - si - qi * qi) * gi[i];
        }
    };
    std::vector<double> tf(n), tg(n);
    double w = 0.0;
    for (int step = 1; step <= nsteps; ++step) {
        rhs(w, f, g, k1f, k1g);
        for (int i = 0; i < n; ++i) { tf[i] = f[i] + 0.5 * dw * k1f[i]; tg[i] = g[i] + 0.5 * dw * k1g[i]; }
        rhs(w + 0.5 * dw, tf, tg, k2f, k2g);
        for (int i = 0; i < n; ++i) { tf[i] = f[i] + 0.5 * dw * k2f[i]; tg[i] = g[i] + 0.5 * dw * k2g[i]; }
        rhs(w + 0.5 * dw, tf, tg, k3f, k3g);
        for (int i = 0; i < n; ++i) { tf[i] = f[i] + dw * k3f[i]; tg[i] = g[i] + dw * k3g[i]; }
        rhs(w + dw, tf, tg, k4f, k4g);
        double gmax = 0.0;
        for (int i = 0; i < n; ++i) {
            f[i] += dw / 6.0 * (k1f[i] + 2.0 * k2f[i] + 2.0 * k3f[i] + k4f[i]);
            g[i] += dw / 6.0 * (k1g[i] + 2.0 * k2g[i] + 2.0 * k3g[i] + k4g[i]);
            gmax = std::max(gmax, std::abs(g[i]));
        }
        if (!(gmax < 1e100))
            throw std::runtime_error(
                "lax_propagate: field overflow at large w*|s|; shrink w_max or the s range");
        w += dw;
        if (step % store_every == 0) {
            field.w_grid.push_back(w);
            field.f.push_back(f);
            field.g.push_back(g);
        }
    }
    return field;
}

namespace {

int locate_w(const LaxField& field, double w) {
    const double dw = field.w_grid.size() > 1 ? field.w_grid[1] - field.w_grid[0] : 1.0;
    const int iw = static_cast<int>(std::round(w / dw));
    if (iw < 0 || iw >= static_cast<int>(field.w_grid.size()) ||
        std::abs(field.w_grid[iw] - w) > 1e-9)
        throw std::invalid_argument("crit_cdf: w not on the stored grid");
    return iw;
}

}  // namespace

double crit_cdf(const LaxField& field, int beta, double w, double s) {
    const PainleveTable& table = *field.table;
    const int iw = locate_w(field, w);
    const double fv = table.interp(field.f[iw], s);
    const double gv = table.interp(field.g[iw], s);
    const double e2 = table.e2(s);
    if (beta == 2) return fv * e2;
    if (beta == 4) {
        const double ef = table.e_factor(s);
        return 0.5 * ((fv + gv) / std::sqrt(ef) + (fv - gv) * std::sqrt(ef)) * std::sqrt(e2);
    }
    throw std::invalid_argument("crit_cdf: beta must be 2 or 4");
}

double airy_kernel(double x, double y) {
    const auto ax = airy(x), ay = airy(y);
    if (std::abs(x - y) < 1e-10) {
        return ax.aip * ax.aip - x * ax.ai * ax.ai;
    }
    return (ax.ai * ay.aip - ay.ai * ax.aip) / (x - y);
}

double deformed_airy_kernel(double x, double y, double w) {
    if (w < 0.0) throw std::invalid_argument("deformed_airy_kernel: w must be >= 0");
    return airy_kernel(x, y) + airy(y).ai * special::airy_exp_tail(x, w);
}

namespace {

double nystrom_det(double s, const FredholmConfig& cfg, bool deformed, double w) {
    const int m = cfg.quad_order;
    if (m < 8 || cfg.domain_length < 6.0)
        throw std::invalid_argument("fredholm: quad_order >= 8 and domain_length >= 6 required");
    const auto& rule = special::gauss_legendre(m);
    std::vector<double> x(m), sw(m);
    for (int i = 0; i < m; ++i) {
        x[i] = s + 0.5 * cfg.domain_length * (rule.nodes[i] + 1.0);
        sw[i] = std::sqrt(rule.weights[i] * 0.5 * cfg.domain_length);
    }
    std::vector<double> phi(m);
    if (deformed)
        for (int i = 0; i < m; ++i) phi[i] = special::airy_exp_tail(x[i], w);
    std::vector<double> a(size_t(m) * m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            double k = airy_kernel(x[i], x[j]);
            if (deformed) k += phi[i] * airy(x[j]).ai;
            a[size_t(i) * m + j] = (i == j ? 1.0 : 0.0) - sw[i] * k * sw[j];
        }
    }
    return linalg::det_real(std::move(a), m);
}

}  // namespace

double fredholm_f2w(double w, double s, const FredholmConfig& cfg) {
    if (w < 0.0) throw std::invalid_argument("fredholm_f2w: w must be >= 0");
    return nystrom_det(s, cfg, true, w);
}

double fredholm_airy(double s, const FredholmConfig& cfg) { return nystrom_det(s, cfg, false, 0.0); }

double pde_residual_hard_a0(double beta, const std::vector<double>& xs,
                            const std::vector<double>& cs) {
    double worst = 0.0;
    for (double x : xs) {
        for (double c : cs) {
            const double f = std::exp(-0.5 * beta * x * (1.0 / c + 1.0));
            const double fx = -0.5 * beta * (1.0 / c + 1.0) * f;
            const double fc = 0.5 * beta * x / (c * c) * f;
            const double fcc =
                (0.25 * beta * beta * x * x / (c * c * c * c) - beta * x / (c * c * c)) * f;
            const double r = -x * fx + (2.0 / beta) * c * c * fcc +
                             (((2.0 / beta) * 2.0 - 1.0) * c - c * c - x) * fc;
            worst = std::max(worst, std::abs(r));
        }
    }
    return worst;
}

double pde_residual_soft(const LaxField& field, double s_lo, double s_hi, double w_lo,
                         double w_hi) {
    const PainleveTable& table = *field.table;
    const auto& s = field.s_grid;
    const double h = table.h;
    const double dw = field.w_grid[1] - field.w_grid[0];
    double worst = 0.0;
    for (std::size_t iw = 0; iw < field.w_grid.size(); ++iw) {
        const double w = field.w_grid[iw];
        if (w < w_lo - 1e-12 || w > w_hi + 1e-12) continue;
        const auto& f = field.f[iw];
        const auto& g = field.g[iw];
        for (std::size_t is = 2; is + 2 < s.size(); ++is) {
            if (s[is] < s_lo - 1e-12 || s[is] > s_hi + 1e-12) continue;
            const double qi = table.q[is], qpi = table.q_prime[is], si = s[is];
            const double e2 = std::exp(-table.I2[is]);
            // F = f e2; analytic w-derivatives from the Lax system
            const double fw = qi * qi * f[is] + (-w * qi - qpi) * g[is];
            const double gw = (-w * qi + qpi) * f[is] + (w * w - si - qi * qi) * g[is];
            const double fww = qi * qi * fw - qi * g[is] + (-w * qi - qpi) * gw;
            const double fs =
                (-f[is + 2] + 8.0 * f[is + 1] - 8.0 * f[is - 1] + f[is - 2]) / (12.0 * h);
            const double Fx = (fs + f[is] * table.J[is]) * e2;  // d/ds e2 = e2 * J
            const double Fw = fw * e2;
            const double Fww = fww * e2;
            const double r = Fx + Fww + (si - w * w) * Fw;  // beta = 2
            worst = std::max(worst, std::abs(r));
        }
        (void)dw;
    }
    return worst;
}

double pde_residual_soft_grid(const std::vector<double>& s_vals, const std::vector<double>& w_vals,
                              const std::vector<std::vector<double>>& f_vals, double beta) {
    const int ns = static_cast<int>(s_vals.size()), nw = static_cast<int>(w_vals.size());
    if (ns < 5 || nw < 5)
        throw std::invalid_argument("pde_residual_soft_grid: need at least 5 points per axis");
    const double hs = s_vals[1] - s_vals[0], hw = w_vals[1] - w_vals[0];
    double worst = 0.0;
    for (int i = 1; i + 1 < ns; ++i) {
        for (int j = 1; j + 1 < nw; ++j) {
            const double Fx = (f_vals[i + 1][j] - f_vals[i - 1][j]) / (2.0 * hs);
            const double Fw = (f_vals[i][j + 1] - f_vals[i][j - 1]) / (2.0 * hw);
            const double Fww =
                (f_vals[i][j + 1] - 2.0 * f_vals[i][j] + f_vals[i][j - 1]) / (hw * hw);
            const double r =
                Fx + (2.0 / beta) * Fww + (s_vals[i] - w_vals[j] * w_vals[j]) * Fw;
            worst = std::max(worst, std::abs(r));
        }
    }
    return worst;
}

}  // namespace spectra::edge
