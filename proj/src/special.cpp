#include "spectra/special.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace spectra::special {

namespace {

constexpr double kAi0 = 0.35502805388781723926;    // Ai(0) = 3^{-2/3}/Gamma(2/3)
constexpr double kAip0 = -0.25881940379280679841;  // Ai'(0) = -3^{-1/3}/Gamma(1/3)

// Maclaurin series; fine for -4 <= x <= 6.5 in absolute terms.
AiryValue airy_series(double x) {
    const double x3 = x * x * x;
    double f = 1.0, fp = 0.0, u = 1.0;
    double g = x, gp = 1.0, v = x;
    for (int k = 1; k < 80; ++k) {
        u *= x3 / ((3 * k - 1) * (3 * k));
        v *= x3 / ((3 * k) * (3 * k + 1));
        f += u;
        g += v;
        if (x != 0.0) {
            fp += u * (3 * k) / x;
            gp += v * (3 * k + 1) / x;
        }
        if (std::abs(u) + std::abs(v) < 1e-18 * (std::abs(f) + std::abs(g))) break;
    }
    return {kAi0 * f + kAip0 * g, kAi0 * fp + kAip0 * gp};
}

// Asymptotic expansion for large positive x (DLMF 9.7 coefficients).
AiryValue airy_asymptotic_pos(double x) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    double u = 1.0, zk = 1.0, sgn = -1.0;
    double su = 1.0, sv = 1.0;
    for (int k = 1; k <= 40; ++k) {
        u *= (6.0 * k - 5.0) * (6.0 * k - 1.0) / (72.0 * k);
        zk *= zeta;
        const double uterm = u / zk;
        const double vterm = uterm * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
        su += sgn * uterm;
        sv += sgn * vterm;
        if (uterm < 1e-18) break;
        sgn = -sgn;
    }
    const double pre = std::exp(-zeta) / (2.0 * std::sqrt(M_PI));
    const double x14 = std::pow(x, 0.25);
    return {pre / x14 * su, -pre * x14 * sv};
}

// Knot table on [-64, -4] built by Taylor-stepping the ODE y'' = x y from
// the series anchor at -4; both solutions stay bounded going left, so the
// propagation is stable.
struct AiryTable {
    static constexpr double kStep = 0.125;
    static constexpr double kLeft = -64.0;
    std::vector<AiryValue> knots;  // knots[i] at x = -4 - i*kStep

    AiryTable() {
        const int n = static_cast<int>(std::round((-4.0 - kLeft) / kStep)) + 1;
        knots.resize(n);
        knots[0] = airy_series(-4.0);
        for (int i = 1; i < n; ++i)
            knots[i] = taylor_step(knots[i - 1], -4.0 - (i - 1) * kStep, -kStep);
    }

    // Taylor coefficients from y'' = x y: c_{n+2} = (x c_n + c_{n-1}) / ((n+1)(n+2))
    static AiryValue taylor_step(AiryValue y, double x, double h) {
        constexpr int kOrder = 24;
        std::array<double, kOrder + 1> c{};
        c[0] = y.ai;
        c[1] = y.aip;
        for (int n = 0; n + 2 <= kOrder; ++n) {
            const double prev = (n >= 1) ? c[n - 1] : 0.0;
            c[n + 2] = (x * c[n] + prev) / ((n + 1.0) * (n + 2.0));
        }
        double val = 0.0, der = 0.0;
        for (int n = kOrder; n >= 0; --n) val = val * h + c[n];
        for (int n = kOrder; n >= 1; --n) der = der * h + n * c[n];
        return {val, der};
    }

    AiryValue eval(double x) const {
        const int i = static_cast<int>(std::round((-4.0 - x) / kStep));
        const int j = std::min(std::max(i, 0), static_cast<int>(knots.size()) - 1);
        const double x0 = -4.0 - j * kStep;
        return taylor_step(knots[j], x0, x - x0);
    }
};

const AiryTable& airy_table() {
    static const AiryTable table;
    return table;
}

}  // namespace

AiryValue airy(double x) {
    if (x > 6.5) return airy_asymptotic_pos(x);
    if (x >= -4.0) return airy_series(x);
    if (x < AiryTable::kLeft) throw std::invalid_argument("airy: x below table range");
    return airy_table().eval(x);
}

double bessel_i0e(double x) {
    if (x < 0) throw std::invalid_argument("bessel_i0e: x must be >= 0");
    if (x <= 15.0) {
        double sum = 1.0, term = 1.0;
        const double q = 0.25 * x * x;
        for (int k = 1; k < 120; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return sum * std::exp(-x);
    }
    double sum = 1.0, term = 1.0;
    for (int k = 1; k < 30; ++k) {
        term *= (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        sum += term;
        if (std::abs(term) < 1e-18 * sum) break;
    }
    return sum / std::sqrt(2.0 * M_PI * x);
}

double bessel_i1e(double x) {
    if (x < 0) throw std::invalid_argument("bessel_i1e: x must be >= 0");
    if (x <= 15.0) {
        double sum = 0.5 * x, term = 0.5 * x;
        const double q = 0.25 * x * x;
        for (int k = 1; k < 120; ++k) {
            term *= q / (static_cast<double>(k) * (k + 1.0));
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return sum * std::exp(-x);
    }
    double sum = 1.0, term = 1.0;
    for (int k = 1; k < 30; ++k) {
        term *= -(4.0 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * M_PI * x);
}

double gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) {
        // series
        double ap = a, sum = 1.0 / a, del = sum;
        for (int n = 0; n < 500; ++n) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    // continued fraction for Q, modified Lentz
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return 1.0 - std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_q(double a, double x) { return 1.0 - gamma_p(a, x); }

const QuadRule& gauss_legendre(int m) {
    static std::map<int, QuadRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    QuadRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= m; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[m - 1 - i] = x;
        rule.weights[i] = rule.weights[m - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return cache.emplace(m, std::move(rule)).first->second;
}

double airy_exp_integral_upper(double x, double w) {
    // integrand e^{wt} Ai(t) peaks near t = w^2 then dies superexponentially
    const double hi = std::max(x, w * w) + 40.0;
    const int panels = static_cast<int>(std::ceil((hi - x) / 1.5));
    return integrate([w](double t) { return std::exp(w * t) * airy(t).ai; }, x, hi,
                     std::max(panels, 4), 20);
}

double airy_exp_tail(double x, double w) {
    if (w < 0) throw std::invalid_argument("airy_exp_tail: w must be >= 0");
    if (w < 4.0) {
        // e^{-wx}( e^{w^3/3} - int_x^inf e^{wt} Ai dt ), using int_R e^{wt}Ai = e^{w^3/3}
        return std::exp(-w * x) * (std::exp(w * w * w / 3.0) - airy_exp_integral_upper(x, w));
    }
    // large w: direct, the weight e^{-wu} localizes near u = 0
    const double hi = 60.0 / w + 20.0;
    const int panels = static_cast<int>(std::ceil(hi / 0.5));
    return integrate([x, w](double u) { return std::exp(-w * u) * airy(x - u).ai; }, 0.0, hi,
                     panels, 20);
}

}  // namespace spectra::special
