#include "spectra/planar.hpp"

#include <cmath>
#include <stdexcept>

#include "spectra/ensembles.hpp"
#include "spectra/special.hpp"

namespace spectra::planar {

PlanarParams PlanarParams::from_alpha0(double alpha0) {
    if (alpha0 <= 0.0) throw std::invalid_argument("PlanarParams: alpha0 must be positive");
    PlanarParams p;
    p.alpha0 = alpha0;
    p.profile_g = 0.5 * (alpha0 + 1.0 / alpha0);
    return p;
}

double rho_profile(double g, double y) {
    if (g <= 1.0) throw std::invalid_argument("rho_profile: g must be > 1");
    if (y < 0.0) throw std::invalid_argument("rho_profile: Y must be >= 0");
    if (y < 1e-4) {
        // series: g sinh2Y/Y -> g(2 + 4Y^2/3), cosh2Y/Y - sinh2Y/(2Y^2) -> 4Y/3
        return std::exp(-2.0 * g * y) * (g * (2.0 + 4.0 * y * y / 3.0) - 4.0 * y / 3.0);
    }
    const double sh = std::sinh(2.0 * y), ch = std::cosh(2.0 * y);
    return std::exp(-2.0 * g * y) * (g * sh / y - ch / y + sh / (2.0 * y * y));
}

cplx kernel_planar(double g, cplx z1, cplx z2) {
    if (z1.imag() < 0.0 || z2.imag() < 0.0)
        throw std::invalid_argument("kernel_planar: need Im Z >= 0");
    const auto& rule = special::gauss_legendre(32);
    const cplx iu(0.0, 1.0);
    const cplx d = z1 - std::conj(z2);
    cplx sum = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double s = rule.nodes[j];
        sum += rule.weights[j] * (g + s) * std::exp(iu * s * d);
    }
    return std::exp(-g * (z1.imag() + z2.imag())) * sum;
}

double mean_overlap(double g, double y) {
    if (g <= 1.0) throw std::invalid_argument("mean_overlap: g must be > 1");
    if (y < 1e-4) {
        // e^{-2gY}( g sinh2Y/Y + cosh2Y/Y - sinh2Y/(2Y^2) ) -> 2g + (4/3 - ...)Y
        return std::exp(-2.0 * g * y) * (g * (2.0 + 4.0 * y * y / 3.0) + 4.0 * y / 3.0);
    }
    const double sh = std::sinh(2.0 * y), ch = std::cosh(2.0 * y);
    return std::exp(-2.0 * g * y) * (g * sh / y + ch / y - sh / (2.0 * y * y));
}

double overlap_pdf(double g, double y, double t) {
    if (g <= 1.0 || y <= 0.0 || t <= 0.0)
        throw std::invalid_argument("overlap_pdf: need g > 1, Y > 0, t > 0");
    const double k = 2.0 * g * (1.0 + 2.0 / t);
    const double a = 4.0 / t * std::sqrt((g * g - 1.0) * (1.0 + t));
    // u(Y) = e^{-kY} I0(aY) and derivatives, via scaled Bessels (k > a)
    const double e = std::exp((a - k) * y);
    const double b0 = special::bessel_i0e(a * y);
    const double b1 = special::bessel_i1e(a * y);
    const double u = e * b0;
    const double up = e * (-k * b0 + a * b1);
    const double upp = e * (k * k * b0 - 2.0 * k * a * b1 + a * a * (b0 - b1 / (a * y)));
    const double h = y * y * u;
    const double hp = 2.0 * y * u + y * y * up;
    const double hpp = 2.0 * u + 4.0 * y * up + y * y * upp;
    const double s2 = std::sinh(2.0 * y) / (2.0 * y);
    const double A = 1.0 + s2 * s2;
    const double B = (1.0 - std::sinh(4.0 * y) / (4.0 * y)) / (2.0 * y);
    const double C = 0.25 * (s2 * s2 - 1.0);
    return 16.0 / (t * t * t) * std::exp(-2.0 * g * y) * (A * h + B * hp + C * hpp);
}

namespace {

// (d/dx x)^l applied to u, from u, u', u'':
//  l=0: u ; l=1: u + x u' ; l=2: u + 3x u' + x^2 u''
double iterate_dxx(int l, double u, double up, double upp, double x) {
    switch (l) {
        case 0: return u;
        case 1: return u + x * up;
        case 2: return u + 3.0 * x * up + x * x * upp;
        default: throw std::invalid_argument("cue_density: k capped at 2");
    }
}

// entry function h(x) and its s-derivative structure: entries of the q/Q
// determinants are s*h(x) + x h'(x) at x = z_i conj(z_j)
struct EntryFn {
    cplx h, xhp;
};

EntryFn cue_entry_finite(int N, cplx x) {
    // h = (x^N - 1)/(x - 1) = sum_{p<N} x^p ; x h' = sum p x^p
    cplx h = 0.0, xhp = 0.0, xp = 1.0;
    for (int p = 0; p < N; ++p) {
        h += xp;
        xhp += double(p) * xp;
        xp *= x;
    }
    return {h, xhp};
}

EntryFn cue_entry_scaled(cplx x) {
    const cplx one_minus = 1.0 - x;
    return {1.0 / one_minus, x / (one_minus * one_minus)};
}

// coefficients of det[s h_ij + (xh')_ij] in s for k<=2 by evaluation at
// s = 0, 1, 2 and interpolation
std::vector<double> det_s_coeffs(int k, const std::vector<EntryFn>& e) {
    auto det_at = [&](double s) -> double {
        if (k == 1) return (s * e[0].h + e[0].xhp).real();
        const cplx d = (s * e[0].h + e[0].xhp) * (s * e[3].h + e[3].xhp) -
                       (s * e[1].h + e[1].xhp) * (s * e[2].h + e[2].xhp);
        return d.real();
    };
    const double d0 = det_at(0.0), d1 = det_at(1.0), d2 = det_at(2.0);
    if (k == 1) return {d0, d1 - d0};
    return {d0, (4.0 * d1 - d2 - 3.0 * d0) / 2.0, (d2 - 2.0 * d1 + d0) / 2.0};
}

}  // namespace

double cue_density(const CueSpec& spec, const std::vector<cplx>& z) {
    const int k = static_cast<int>(z.size());
    if (k < 1 || k > 2) throw std::invalid_argument("cue_density: k must be 1 or 2");
    for (const cplx& zi : z)
        if (std::abs(zi) >= 1.0) throw std::invalid_argument("cue_density: need |z| < 1");

    if (spec.kind == CueKind::Kac) {
        // det[ 1/(1 - z_i conj z_j)^2 ] / pi^k
        if (k == 1) {
            const double x = std::norm(z[0]);
            return 1.0 / (M_PI * (1.0 - x) * (1.0 - x));
        }
        auto entry = [&](int i, int j) {
            const cplx x = z[i] * std::conj(z[j]);
            return 1.0 / ((1.0 - x) * (1.0 - x));
        };
        const cplx d = entry(0, 0) * entry(1, 1) - entry(0, 1) * entry(1, 0);
        return d.real() / (M_PI * M_PI);
    }

    double x = 1.0;
    for (const cplx& zi : z) x *= std::norm(zi);
    std::vector<EntryFn> e(size_t(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            const cplx xij = z[i] * std::conj(z[j]);
            e[size_t(i) * k + j] = (spec.kind == CueKind::FiniteN) ? cue_entry_finite(spec.N, xij)
                                                                   : cue_entry_scaled(xij);
        }
    const std::vector<double> qcoef = det_s_coeffs(k, e);

    double u, up, upp;
    double prefactor;
    if (spec.kind == CueKind::FiniteN) {
        const double a2 = std::norm(spec.a);
        if (x < a2)
            throw std::invalid_argument("cue_density: prod |z|^2 < |a|^2 outside the formula");
        const int N = spec.N;
        // u(x) = (1/x)(1 - a2/x)^{N-1}
        const double r = 1.0 - a2 / x;
        const double rp = a2 / (x * x);             // d/dx (1 - a2/x)
        const double rN1 = std::pow(r, N - 1);
        const double rN2 = (N >= 2) ? std::pow(r, N - 2) : 0.0;
        const double rN3 = (N >= 3) ? std::pow(r, N - 3) : 0.0;
        u = rN1 / x;
        up = -rN1 / (x * x) + (N - 1) * rN2 * rp / x;
        upp = 2.0 * rN1 / (x * x * x) - 2.0 * (N - 1) * rN2 * rp / (x * x) +
              (N - 1) * (N - 2) * rN3 * rp * rp / x + (N - 1) * rN2 * (-2.0 * a2 / (x * x * x)) / x;
        prefactor = std::pow(1.0 - a2, 1 - N) / std::pow(M_PI, k);
    } else {
        const double c = 1.0 / std::norm(spec.mu);
        // u(x) = (1/x) e^{-c/x}
        const double ec = std::exp(-c / x);
        u = ec / x;
        up = ec * (c / (x * x * x) - 1.0 / (x * x));
        upp = ec * (c * c / (x * x * x * x * x) - 4.0 * c / (x * x * x * x) + 2.0 / (x * x * x));
        prefactor = std::exp(c) / std::pow(M_PI, k);
    }
    double sum = 0.0;
    for (int l = 0; l <= k; ++l)
        if (l < static_cast<int>(qcoef.size())) sum += qcoef[l] * iterate_dxx(l, u, up, upp, x);
    return prefactor * sum;
}

ZeroSample laurent_zeros(RngState& state, cplx mu, int truncation_degree, double radius_cut) {
    if (truncation_degree < 50)
        throw std::invalid_argument("laurent_zeros: truncation degree must be >= 50");
    if (radius_cut > 0.95 || radius_cut <= 0.0)
        throw std::invalid_argument("laurent_zeros: radius_cut must lie in (0, 0.95]");
    std::vector<cplx> coeffs(truncation_degree + 1);
    coeffs[0] = 1.0 / mu;
    for (int j = 1; j <= truncation_degree; ++j) coeffs[j] = -rng::gaussian_complex(state);
    const auto roots = spectral::roots_aberth(coeffs);
    ZeroSample out;
    out.truncation_degree = truncation_degree;
    out.radius_cut = radius_cut;
    for (const cplx& r : roots.values)
        if (std::abs(r) < radius_cut) out.zeros.push_back(r);
    return out;
}

SweepTable parameter_sweep(RngState& state, SweepModel model, int n,
                           const std::vector<double>& grid) {
    if (n < 2 || grid.empty()) throw std::invalid_argument("parameter_sweep: bad arguments");
    SweepTable table;
    table.grid = grid;
    table.eigenvalues.resize(grid.size());
    table.ambiguous.assign(grid.size(), false);

    std::vector<std::vector<cplx>> raw(grid.size());
    if (model == SweepModel::AntiHermitian) {
        // one GUE realization, diagonalized once; per-alpha roots from the
        // secular problem with weights |<u_j, e1>|^2
        linalg::CMatrix a = ensembles::sample_antiherm(state, n, 1.0);
        a(0, 0) -= cplx(0.0, 1.0);
        const auto sys = spectral::eig_hermitian_dense_vectors(a);
        spectral::SecularProblem p;
        p.poles = sys.spectrum.values;
        p.weights.resize(n);
        for (int j = 0; j < n; ++j) p.weights[j] = std::norm(sys.vectors(0, j));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (grid[i] <= 0.0) throw std::invalid_argument("parameter_sweep: alpha must be > 0");
            p.coupling = grid[i];
            raw[i] = spectral::solve_secular_complex(p).values;
        }
    } else {
        const linalg::CMatrix u = ensembles::sample_haar_unitary(state, n);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const cplx a = grid[i];
            if (std::abs(a) >= 1.0)
                throw std::invalid_argument("parameter_sweep: need |a| < 1 on the grid");
            linalg::CMatrix ua = u;
            for (int r = 0; r < n; ++r) ua(r, 0) *= a;
            raw[i] = spectral::eig_complex_dense(ua).values;
        }
    }

    table.eigenvalues[0] = raw[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const auto& prev = table.eigenvalues[i - 1];
        auto& cur = raw[i];
        std::vector<cplx> matched(n);
        std::vector<bool> used(n, false);
        for (int j = 0; j < n; ++j) {
            int best = -1, second = -1;
            double bd = 1e300, sd = 1e300;
            for (int m = 0; m < n; ++m) {
                if (used[m]) continue;
                const double d = std::abs(cur[m] - prev[j]);
                if (d < bd) {
                    sd = bd;
                    second = best;
                    bd = d;
                    best = m;
                } else if (d < sd) {
                    sd = d;
                    second = m;
                }
            }
            (void)second;
            if (sd < 2.0 * bd && second >= 0) table.ambiguous[i] = true;
            used[best] = true;
            matched[j] = cur[best];
        }
        table.eigenvalues[i] = std::move(matched);
    }
    return table;
}

}  // namespace spectra::planar
