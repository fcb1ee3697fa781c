#include "spectra/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spectra::spectral {

namespace {

constexpr double kEps = 2.220446049250313e-16;

double hypot2(double a, double b) { return std::hypot(a, b); }

// Implicit-shift QL on (d, e); e has length n with e[n-1] unused scratch.
// If z is non-null its columns are rotated along (EISPACK tql2). Deflation
// combines the neighbor-relative test with a norm-wise absolute floor so
// that graded matrices (rank-deficient inputs) cannot stall the sweep.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, CMatrix* z) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    e.resize(n, 0.0);
    double tnorm = 0.0;
    for (int i = 0; i < n; ++i)
        tnorm = std::max(tnorm, std::abs(d[i]) + (i > 0 ? std::abs(e[i - 1]) : 0.0) +
                                    (i < n - 1 ? std::abs(e[i]) : 0.0));
    const double floor_eps = kEps * tnorm;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            int m = l;
            while (m < n - 1) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= kEps * dd || std::abs(e[m]) <= floor_eps) break;
                ++m;
            }
            if (m == l) break;
            if (++iter > 50) throw std::runtime_error("eig_sym_tridiag: QL failed to converge");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = hypot2(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = hypot2(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (z) {
                    for (int k = 0; k < z->rows(); ++k) {
                        const cplx zf = (*z)(k, i + 1);
                        (*z)(k, i + 1) = s * (*z)(k, i) + c * zf;
                        (*z)(k, i) = c * (*z)(k, i) - s * zf;
                    }
                }
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

double gershgorin_lower(const std::vector<double>& d, const std::vector<double>& e) {
    const int n = static_cast<int>(d.size());
    double lo = d[0] - (n > 1 ? std::abs(e[0]) : 0.0);
    for (int i = 1; i < n; ++i) {
        const double r = std::abs(e[i - 1]) + (i < n - 1 ? std::abs(e[i]) : 0.0);
        lo = std::min(lo, d[i] - r);
    }
    return lo;
}

double gershgorin_upper(const std::vector<double>& d, const std::vector<double>& e) {
    const int n = static_cast<int>(d.size());
    double hi = d[0] + (n > 1 ? std::abs(e[0]) : 0.0);
    for (int i = 1; i < n; ++i) {
        const double r = std::abs(e[i - 1]) + (i < n - 1 ? std::abs(e[i]) : 0.0);
        hi = std::max(hi, d[i] + r);
    }
    return hi;
}

// k-th largest eigenvalue (k = 0 is the largest) via Sturm bisection.
double bisect_kth_largest(const std::vector<double>& d, const std::vector<double>& e, int k) {
    const int n = static_cast<int>(d.size());
    double lo = gershgorin_lower(d, e), hi = gershgorin_upper(d, e);
    const int want = n - 1 - k;  // at least want+1 eigenvalues strictly below x => x above target
    const double span = hi - lo;
    while (hi - lo > 1e-14 * std::max(1.0, std::abs(lo) + std::abs(hi)) && hi - lo > 1e-300) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(d, e, mid) > want)
            hi = mid;
        else
            lo = mid;
        if (hi - lo < 1e-16 * span) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

RealSpectrum make_real_spectrum(std::vector<double> values, SpectrumMeta meta) {
    RealSpectrum s;
    std::sort(values.begin(), values.end(), std::greater<double>());
    s.exact_ties = std::adjacent_find(values.begin(), values.end()) != values.end();
    s.values = std::move(values);
    s.meta = std::move(meta);
    return s;
}

int sturm_count(const std::vector<double>& diag, const std::vector<double>& offdiag, double x) {
    const int n = static_cast<int>(diag.size());
    int count = 0;
    double q = diag[0] - x;
    if (q < 0) ++count;
    for (int i = 1; i < n; ++i) {
        const double e2 = offdiag[i - 1] * offdiag[i - 1];
        if (q == 0.0) q = kEps * (std::abs(offdiag[i - 1]) + kEps);
        q = diag[i] - x - e2 / q;
        if (q < 0) ++count;
    }
    return count;
}

RealSpectrum eig_sym_tridiag(const TridiagonalMatrix& t, TridiagMode mode, int k) {
    const int n = static_cast<int>(t.diag.size());
    if (n < 1) throw std::invalid_argument("eig_sym_tridiag: empty matrix");
    if (static_cast<int>(t.offdiag.size()) != n - 1)
        throw std::invalid_argument("eig_sym_tridiag: offdiag size mismatch");
    switch (mode) {
        case TridiagMode::Full: {
            std::vector<double> d = t.diag, e = t.offdiag;
            ql_implicit(d, e, nullptr);
            return make_real_spectrum(std::move(d), {"tridiag", {}});
        }
        case TridiagMode::Extreme: {
            if (k < 1 || k > n) throw std::invalid_argument("eig_sym_tridiag: bad k");
            std::vector<double> out(k);
            for (int j = 0; j < k; ++j) out[j] = bisect_kth_largest(t.diag, t.offdiag, j);
            return make_real_spectrum(std::move(out), {"tridiag-extreme", {}});
        }
        case TridiagMode::Truncated: {
            const int n0 = std::min<int>(n, static_cast<int>(std::ceil(10.0 * std::cbrt(double(n)))));
            std::vector<double> d(t.diag.begin(), t.diag.begin() + n0);
            std::vector<double> e(t.offdiag.begin(), t.offdiag.begin() + std::max(0, n0 - 1));
            return make_real_spectrum({bisect_kth_largest(d, e, 0)}, {"tridiag-truncated", {}});
        }
    }
    throw std::logic_error("eig_sym_tridiag: unknown mode");
}

namespace {

// Real-symmetric specialization of the Householder reduction; complex
// arithmetic costs 4x and the beta=1 ensembles are all real.
void symmetric_to_tridiag_real(std::vector<double> a, int n, std::vector<double>& d,
                               std::vector<double>& e, std::vector<double>* q) {
    auto at = [&](int i, int j) -> double& { return a[size_t(i) * n + j]; };
    if (q) {
        q->assign(size_t(n) * n, 0.0);
        for (int i = 0; i < n; ++i) (*q)[size_t(i) * n + i] = 1.0;
    }
    std::vector<double> v(n), p(n), w(n);
    for (int k = 0; k < n - 2; ++k) {
        double xnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) xnorm2 += at(i, k) * at(i, k);
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) continue;
        const double alpha = at(k + 1, k) >= 0 ? -xnorm : xnorm;
        double vnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = at(i, k) - (i == k + 1 ? alpha : 0.0);
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;
        const double tau = 2.0 / vnorm2;
        for (int i = k + 1; i < n; ++i) {
            double s = 0.0;
            for (int j = k + 1; j < n; ++j) s += at(i, j) * v[j];
            p[i] = tau * s;
        }
        double vp = 0.0;
        for (int i = k + 1; i < n; ++i) vp += v[i] * p[i];
        for (int i = k + 1; i < n; ++i) w[i] = p[i] - 0.5 * tau * vp * v[i];
        for (int i = k + 1; i < n; ++i) {
            const double vi = v[i], wi = w[i];
            double* row = &a[size_t(i) * n];
            for (int j = k + 1; j < n; ++j) row[j] -= vi * w[j] + wi * v[j];
        }
        at(k + 1, k) = alpha;
        at(k, k + 1) = alpha;
        if (q) {
            for (int r = 0; r < n; ++r) {
                double s = 0.0;
                double* qrow = &(*q)[size_t(r) * n];
                for (int j = k + 1; j < n; ++j) s += qrow[j] * v[j];
                s *= tau;
                for (int j = k + 1; j < n; ++j) qrow[j] -= s * v[j];
            }
        }
    }
    d.resize(n);
    e.assign(std::max(0, n - 1), 0.0);
    for (int i = 0; i < n; ++i) d[i] = at(i, i);
    for (int i = 0; i + 1 < n; ++i) e[i] = std::abs(at(i + 1, i));
    // flip transform columns where the subdiagonal came out negative
    if (q) {
        double sign = 1.0;
        for (int i = 0; i + 1 < n; ++i) {
            if (at(i + 1, i) < 0) sign = -sign;
            if (sign < 0)
                for (int r = 0; r < n; ++r) (*q)[size_t(r) * n + (i + 1)] = -(*q)[size_t(r) * n + (i + 1)];
        }
    }
}

bool is_real(const CMatrix& h) {
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < h.cols(); ++j)
            if (h(i, j).imag() != 0.0) return false;
    return true;
}

// Householder reduction of a Hermitian matrix to real symmetric tridiagonal
// form; accumulates the unitary transform when q is non-null.
void hermitian_to_tridiag(CMatrix a, std::vector<double>& d, std::vector<double>& e, CMatrix* q) {
    const int n = a.rows();
    if (q) *q = CMatrix::identity(n);
    std::vector<cplx> v(n), p(n), w(n);
    for (int kcol = 0; kcol < n - 2; ++kcol) {
        double xnorm2 = 0.0;
        for (int i = kcol + 1; i < n; ++i) xnorm2 += std::norm(a(i, kcol));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) continue;
        const cplx x0 = a(kcol + 1, kcol);
        const double ax0 = std::abs(x0);
        const cplx phase = ax0 > 0 ? x0 / ax0 : cplx(1.0);
        const cplx alpha = -phase * xnorm;
        double vnorm2 = 0.0;
        for (int i = kcol + 1; i < n; ++i) {
            v[i] = a(i, kcol) - (i == kcol + 1 ? alpha : cplx(0.0));
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) continue;
        const double tau = 2.0 / vnorm2;
        // p = tau * A v on the trailing block
        for (int i = kcol + 1; i < n; ++i) {
            cplx s = 0.0;
            for (int j = kcol + 1; j < n; ++j) s += a(i, j) * v[j];
            p[i] = tau * s;
        }
        cplx vp = 0.0;
        for (int i = kcol + 1; i < n; ++i) vp += std::conj(v[i]) * p[i];
        for (int i = kcol + 1; i < n; ++i) w[i] = p[i] - 0.5 * tau * vp * v[i];
        for (int i = kcol + 1; i < n; ++i)
            for (int j = kcol + 1; j < n; ++j)
                a(i, j) -= v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]);
        a(kcol + 1, kcol) = alpha;
        a(kcol, kcol + 1) = std::conj(alpha);
        for (int i = kcol + 2; i < n; ++i) {
            a(i, kcol) = 0.0;
            a(kcol, i) = 0.0;
        }
        if (q) {
            for (int r = 0; r < n; ++r) {
                cplx s = 0.0;
                for (int j = kcol + 1; j < n; ++j) s += (*q)(r, j) * v[j];
                s *= tau;
                for (int j = kcol + 1; j < n; ++j) (*q)(r, j) -= s * std::conj(v[j]);
            }
        }
    }
    // phase similarity making the subdiagonal real non-negative
    d.resize(n);
    e.assign(std::max(0, n - 1), 0.0);
    cplx phi = 1.0;
    for (int i = 0; i < n; ++i) d[i] = a(i, i).real();
    for (int i = 0; i + 1 < n; ++i) {
        const cplx s = a(i + 1, i);
        const double m = std::abs(s);
        e[i] = m;
        const cplx phi_next = m > 0 ? phi * (s / m) : phi;
        if (q)
            for (int r = 0; r < n; ++r) (*q)(r, i + 1) *= phi_next;
        phi = phi_next;
    }
}

void check_hermitian(const CMatrix& h) {
    const int n = h.rows();
    if (h.cols() != n) throw std::invalid_argument("eig_hermitian_dense: matrix not square");
    double scale = linalg::max_abs(h);
    if (scale == 0.0) scale = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (std::abs(h(i, j) - std::conj(h(j, i))) > 1e-12 * scale)
                throw std::invalid_argument("eig_hermitian_dense: input not Hermitian");
}

}  // namespace

RealSpectrum eig_hermitian_dense(const CMatrix& h) {
    check_hermitian(h);
    std::vector<double> d, e;
    if (is_real(h)) {
        const int n = h.rows();
        std::vector<double> a(size_t(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a[size_t(i) * n + j] = h(i, j).real();
        symmetric_to_tridiag_real(std::move(a), n, d, e, nullptr);
    } else {
        hermitian_to_tridiag(h, d, e, nullptr);
    }
    ql_implicit(d, e, nullptr);
    return make_real_spectrum(std::move(d), {"hermitian", {}});
}

EigenSystem eig_hermitian_dense_vectors(const CMatrix& h) {
    check_hermitian(h);
    const int n = h.rows();
    std::vector<double> d, e;
    CMatrix q;
    if (is_real(h)) {
        std::vector<double> a(size_t(n) * n), qr;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a[size_t(i) * n + j] = h(i, j).real();
        symmetric_to_tridiag_real(std::move(a), n, d, e, &qr);
        q = CMatrix(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) q(i, j) = qr[size_t(i) * n + j];
    } else {
        hermitian_to_tridiag(h, d, e, &q);
    }
    ql_implicit(d, e, &q);
    // sort descending, permuting columns
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] > d[b]; });
    EigenSystem sys;
    sys.spectrum.values.resize(n);
    sys.vectors = CMatrix(n, n);
    for (int jnew = 0; jnew < n; ++jnew) {
        sys.spectrum.values[jnew] = d[idx[jnew]];
        for (int r = 0; r < n; ++r) sys.vectors(r, jnew) = q(r, idx[jnew]);
    }
    sys.spectrum.meta.tag = "hermitian";
    return sys;
}

namespace {

struct GivensC {
    cplx c, s;  // [[conj(c), conj(s)], [-s, c]] annihilates the second entry
};

GivensC make_givens(cplx a, cplx b) {
    const double na = std::abs(a), nb = std::abs(b);
    if (nb == 0.0) return {1.0, 0.0};
    const double r = std::hypot(na, nb);
    // conj(c) a + conj(s) b = r (real), -s a + c b = 0, |c|^2 + |s|^2 = 1
    return {a / r, b / r};
}

}  // namespace

ComplexSpectrum eig_complex_dense(const CMatrix& m_in) {
    const int n = m_in.rows();
    if (m_in.cols() != n) throw std::invalid_argument("eig_complex_dense: matrix not square");
    CMatrix h = m_in;
    // Hessenberg reduction by Householder similarity
    std::vector<cplx> v(n);
    for (int k = 0; k < n - 2; ++k) {
        double xnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) xnorm2 += std::norm(h(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) continue;
        const cplx x0 = h(k + 1, k);
        const double ax0 = std::abs(x0);
        const cplx phase = ax0 > 0 ? x0 / ax0 : cplx(1.0);
        const cplx alpha = -phase * xnorm;
        double vnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = h(i, k) - (i == k + 1 ? alpha : cplx(0.0));
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) continue;
        const double tau = 2.0 / vnorm2;
        for (int j = k; j < n; ++j) {  // left: H -= tau v (v^dag H)
            cplx s = 0.0;
            for (int i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
            s *= tau;
            for (int i = k + 1; i < n; ++i) h(i, j) -= s * v[i];
        }
        for (int i = 0; i < n; ++i) {  // right: H -= tau (H v) v^dag
            cplx s = 0.0;
            for (int j = k + 1; j < n; ++j) s += h(i, j) * v[j];
            s *= tau;
            for (int j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
        }
        for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
        h(k + 1, k) = alpha;
    }

    const double hnorm = std::max(linalg::max_abs(h), 1e-300);
    std::vector<cplx> eigs(n);
    int hi = n - 1;
    int total_iter = 0;
    const int max_total = 60 * n;
    std::vector<GivensC> rot(n);
    while (hi >= 0) {
        // deflate
        int lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            if (sub <= 1e-14 * hnorm ||
                sub <= kEps * (std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo)))) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eigs[hi] = h(hi, hi);
            --hi;
            continue;
        }
        if (hi - lo == 1) {
            // 2x2 block closed form
            const cplx a = h(lo, lo), b = h(lo, hi), c = h(hi, lo), d = h(hi, hi);
            const cplx tr = a + d;
            const cplx disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
            eigs[hi] = 0.5 * (tr + disc);
            eigs[hi - 1] = 0.5 * (tr - disc);
            hi -= 2;
            continue;
        }
        if (++total_iter > max_total)
            throw std::runtime_error("eig_complex_dense: QR failed to converge");
        // Wilkinson-like shift from the trailing 2x2
        const cplx a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
        const cplx tr = a + d;
        const cplx disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
        const cplx e1 = 0.5 * (tr + disc), e2 = 0.5 * (tr - disc);
        cplx shift = (std::abs(e1 - d) < std::abs(e2 - d)) ? e1 : e2;
        if (total_iter % 17 == 0) shift += 0.5 * std::abs(h(hi, hi - 1));
        // explicit single-shift QR sweep on the active block via Givens
        for (int i = lo; i <= hi; ++i) h(i, i) -= shift;
        for (int i = lo; i < hi; ++i) {
            const GivensC g = make_givens(h(i, i), h(i + 1, i));
            rot[i] = g;
            const int jmax = hi;
            for (int j = i; j <= jmax; ++j) {
                const cplx t1 = h(i, j), t2 = h(i + 1, j);
                h(i, j) = std::conj(g.c) * t1 + std::conj(g.s) * t2;
                h(i + 1, j) = -g.s * t1 + g.c * t2;
            }
        }
        for (int i = lo; i < hi; ++i) {
            const GivensC g = rot[i];
            const int imin = lo;
            for (int r = imin; r <= std::min(i + 2, hi); ++r) {
                const cplx t1 = h(r, i), t2 = h(r, i + 1);
                h(r, i) = t1 * g.c + t2 * g.s;
                h(r, i + 1) = -t1 * std::conj(g.s) + t2 * std::conj(g.c);
            }
        }
        for (int i = lo; i <= hi; ++i) h(i, i) += shift;
    }
    ComplexSpectrum out;
    out.values = std::move(eigs);
    out.meta.tag = "complex-dense";
    return out;
}

namespace {

// p(z) and p'(z) by Horner.
std::pair<cplx, cplx> horner(const std::vector<cplx>& c, cplx z) {
    cplx p = c.back(), dp = 0.0;
    for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
    return {p, dp};
}

}  // namespace

ComplexSpectrum roots_aberth(const std::vector<cplx>& coeffs) {
    if (coeffs.size() < 2 || std::abs(coeffs.back()) == 0.0)
        throw std::invalid_argument("roots_aberth: need degree >= 1 with nonzero leading coeff");
    const int deg = static_cast<int>(coeffs.size()) - 1;
    double cmax = 0.0;
    for (const auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
    // Cauchy-style radius and slightly irrational angular offset for the start
    double radius = 0.0;
    for (int i = 0; i < deg; ++i)
        radius = std::max(radius, 2.0 * std::pow(std::abs(coeffs[i] / coeffs.back()), 1.0 / (deg - i)));
    if (radius == 0.0) radius = 1.0;
    std::vector<cplx> z(deg);
    for (int i = 0; i < deg; ++i) {
        const double th = 2.0 * M_PI * i / deg + 0.4;
        z[i] = radius * cplx(std::cos(th), std::sin(th));
    }
    const double tol = 1e-14;
    bool converged = false;
    for (int iter = 0; iter < 2000 && !converged; ++iter) {
        converged = true;
        for (int i = 0; i < deg; ++i) {
            const auto [p, dp] = horner(coeffs, z[i]);
            if (std::abs(p) == 0.0) continue;
            cplx w = (dp != cplx(0.0)) ? p / dp : cplx(tol);
            cplx rep = 0.0;
            for (int j = 0; j < deg; ++j)
                if (j != i) rep += 1.0 / (z[i] - z[j]);
            const cplx denom = 1.0 - w * rep;
            const cplx dz = (std::abs(denom) > 1e-300) ? w / denom : w;
            z[i] -= dz;
            if (std::abs(dz) > tol * std::max(1.0, std::abs(z[i]))) converged = false;
        }
    }
    // residual contract
    double cnorm = 0.0;
    for (const auto& c : coeffs) cnorm += std::norm(c);
    cnorm = std::sqrt(cnorm);
    for (const auto& r : z) {
        const auto [p, dp] = horner(coeffs, r);
        (void)dp;
        const double scale = cnorm * std::pow(std::max(1.0, std::abs(r)), deg);
        if (std::abs(p) > 1e-9 * scale)
            throw std::runtime_error("roots_aberth: iteration stalled, residual too large");
    }
    ComplexSpectrum out;
    out.values = std::move(z);
    out.meta.tag = "polynomial-roots";
    return out;
}

RealSpectrum solve_secular_real(const SecularProblem& p) {
    if (p.coupling <= 0.0) throw std::invalid_argument("solve_secular_real: coupling must be > 0");
    std::vector<double> poles = p.poles;
    std::vector<double> w = p.weights;
    if (p.pole_at_zero_weight) {
        poles.push_back(0.0);
        w.push_back(*p.pole_at_zero_weight);
    }
    const int np = static_cast<int>(poles.size());
    std::vector<int> order(np);
    for (int i = 0; i < np; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return poles[a] < poles[b]; });
    std::vector<double> ps(np), ws(np);
    for (int i = 0; i < np; ++i) {
        ps[i] = poles[order[i]];
        ws[i] = w[order[i]];
        if (ws[i] <= 0.0) throw std::invalid_argument("solve_secular_real: weights must be positive");
        if (i > 0 && ps[i] == ps[i - 1])
            throw std::invalid_argument("solve_secular_real: coincident poles");
    }
    const double alpha = p.coupling;
    auto f = [&](double lam) {
        double s = 0.0;
        for (int i = 0; i < np; ++i) s += ws[i] / (lam - ps[i]);
        return 1.0 - alpha * s;
    };
    auto fp = [&](double lam) {
        double s = 0.0;
        for (int i = 0; i < np; ++i) s += ws[i] / ((lam - ps[i]) * (lam - ps[i]));
        return alpha * s;
    };
    double wsum = 0.0;
    for (double x : ws) wsum += x;
    std::vector<double> roots(np);
    for (int i = 0; i < np; ++i) {
        double lo, hi;
        if (i < np - 1) {
            lo = ps[i];
            hi = ps[i + 1];
        } else {
            lo = ps[np - 1];
            hi = ps[np - 1] + alpha * wsum + 1.0;
            while (f(hi) < 0.0) hi = ps[np - 1] + 2.0 * (hi - ps[np - 1]);
        }
        // f -> -inf at lo+, f -> +inf at hi- (interior) or f(hi) > 0 (last)
        double a = lo, b = hi;
        const double gap = b - a;
        double x = a + 0.5 * gap;
        for (int iter = 0; iter < 200; ++iter) {
            const double fx = f(x);
            if (fx < 0.0)
                a = x;
            else
                b = x;
            const double step = fx / fp(x);
            double xn = x - step;
            if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
            if (std::abs(xn - x) <= 1e-15 * std::max(1.0, std::abs(xn))) {
                x = xn;
                break;
            }
            x = xn;
        }
        if (!(x > lo && (i == np - 1 || x < hi)))
            throw std::runtime_error("solve_secular_real: bracket violation");
        roots[i] = x;
    }
    RealSpectrum out = make_real_spectrum(std::move(roots), {"secular", {}});
    return out;
}

ComplexSpectrum solve_secular_complex(const SecularProblem& p) {
    const double alpha = p.coupling;
    if (alpha <= 0.0) throw std::invalid_argument("solve_secular_complex: alpha must be > 0");
    const int n = static_cast<int>(p.poles.size());
    if (static_cast<int>(p.weights.size()) != n)
        throw std::invalid_argument("solve_secular_complex: weight/pole size mismatch");
    for (double w : p.weights)
        if (w <= 0.0) throw std::invalid_argument("solve_secular_complex: weights must be positive");
    std::vector<double> mu = p.poles, w = p.weights;

    const cplx iu(0.0, 1.0);
    auto g = [&](cplx z, double a) {
        cplx s = 0.0;
        for (int j = 0; j < n; ++j) s += w[j] / (z - mu[j]);
        return 1.0 - iu * a * s;
    };
    auto gp = [&](cplx z, double a) {
        cplx s = 0.0;
        for (int j = 0; j < n; ++j) s += w[j] / ((z - mu[j]) * (z - mu[j]));
        return iu * a * s;
    };
    // Aberth-Ehrlich on N(z) = g(z) prod (z - mu_j) without forming
    // coefficients: the log-derivative g'/g + sum 1/(z - mu_j) is evaluable
    // near poles, and the mutual-repulsion term keeps the roots distinct.
    std::vector<cplx> z(n);
    auto sweep_all = [&](double a) {
        for (int iter = 0; iter < 400; ++iter) {
            double worst = 0.0;
            for (int i = 0; i < n; ++i) {
                const cplx gv = g(z[i], a);
                cplx ld = gp(z[i], a) / gv;
                for (int j = 0; j < n; ++j) ld += 1.0 / (z[i] - mu[j]);
                cplx rep = 0.0;
                for (int j = 0; j < n; ++j)
                    if (j != i) rep += 1.0 / (z[i] - z[j]);
                const cplx denom = ld - rep;
                if (std::abs(denom) < 1e-300) continue;
                const cplx dz = 1.0 / denom;
                z[i] -= dz;
                worst = std::max(worst, std::abs(dz) / std::max(1.0, std::abs(z[i])));
            }
            if (worst < 1e-14) return;
        }
    };

    double gap = std::numeric_limits<double>::infinity();
    std::vector<double> mus = mu;
    std::sort(mus.begin(), mus.end());
    for (int i = 0; i + 1 < n; ++i) gap = std::min(gap, mus[i + 1] - mus[i]);
    double wmax = 0.0;
    for (double x : w) wmax = std::max(wmax, x);
    double a0 = alpha;
    if (n > 1) a0 = std::min(alpha, 0.05 * gap / wmax);

    for (int j = 0; j < n; ++j) z[j] = cplx(mu[j], a0 * w[j]);
    double a = a0;
    for (;;) {
        sweep_all(a);
        if (a >= alpha) break;
        a = std::min(alpha, 4.0 * a);
    }
    for (int j = 0; j < n; ++j) {
        // Newton-step residual: |g/g'| stays meaningful when g' blows up
        const cplx gv = g(z[j], alpha);
        const cplx gd = gp(z[j], alpha);
        const double step = std::abs(gv) / std::max(std::abs(gd), 1.0);
        if (step > 1e-9 * std::max(1.0, std::abs(z[j])))
            throw std::runtime_error("solve_secular_complex: residual too large");
        if (!(z[j].imag() > 0.0))
            throw std::runtime_error("solve_secular_complex: root left the upper half plane");
    }
    std::sort(z.begin(), z.end(), [](cplx u, cplx v) { return u.real() < v.real(); });
    ComplexSpectrum out;
    out.values = std::move(z);
    out.meta.tag = "secular-complex";
    return out;
}

ScatteringValue scattering_s(cplx e_point, double alpha, const RealSpectrum& a_eigs,
                             const rng::UnitVector& v) {
    const int n = static_cast<int>(a_eigs.values.size());
    if (static_cast<int>(v.entries.size()) != n)
        throw std::invalid_argument("scattering_s: vector/spectrum size mismatch");
    SecularProblem p;
    p.coupling = alpha;
    p.poles = a_eigs.values;
    p.weights.resize(n);
    for (int j = 0; j < n; ++j) {
        p.weights[j] = std::norm(v.entries[j]);
        if (std::abs(e_point - cplx(a_eigs.values[j])) < 1e-13)
            throw std::invalid_argument("scattering_s: E at a pole");
    }
    cplx k = 0.0;
    for (int j = 0; j < n; ++j) k += p.weights[j] / (e_point - a_eigs.values[j]);
    k *= alpha;
    const cplx iu(0.0, 1.0);
    ScatteringValue out;
    out.resolvent_form = (1.0 + iu * k) / (1.0 - iu * k);
    const ComplexSpectrum zs = solve_secular_complex(p);
    cplx prod = 1.0;
    for (const cplx& zj : zs.values) prod *= (e_point - std::conj(zj)) / (e_point - zj);
    out.product_form = prod;
    return out;
}

OverlapSet overlaps_from_eigs(const ComplexSpectrum& spec, bool with_off_diagonal) {
    const int n = static_cast<int>(spec.values.size());
    const auto& z = spec.values;
    for (int i = 0; i < n; ++i) {
        if (z[i].imag() == 0.0)
            throw std::invalid_argument("overlaps_from_eigs: eigenvalue on the real axis");
        for (int j = i + 1; j < n; ++j)
            if (std::abs(z[i] - z[j]) < 1e-14)
                throw std::invalid_argument("overlaps_from_eigs: coincident eigenvalues");
    }
    OverlapSet out;
    out.eigenvalues = z;
    out.diagonal.resize(n);
    for (int m = 0; m < n; ++m) {
        double prod = 1.0;
        for (int k = 0; k < n; ++k) {
            if (k == m) continue;
            prod *= std::norm((z[m] - std::conj(z[k])) / (z[m] - z[k]));
        }
        out.diagonal[m] = prod;
    }
    if (with_off_diagonal) {
        for (int m = 0; m < n; ++m) {
            for (int l = 0; l < n; ++l) {
                if (l == m) continue;
                cplx v = (z[l] - std::conj(z[l])) * (z[m] - std::conj(z[m]));
                v /= (z[l] - std::conj(z[m])) * (z[l] - std::conj(z[m]));
                cplx p1 = 1.0, p2 = 1.0;
                for (int k = 0; k < n; ++k) {
                    if (k != l) p1 *= (z[l] - std::conj(z[k])) / (z[l] - z[k]);
                    if (k != m) p2 *= (std::conj(z[m]) - z[k]) / (std::conj(z[m]) - std::conj(z[k]));
                }
                out.off_diagonal[{m, l}] = v * p1 * p2;
            }
        }
    }
    return out;
}

std::vector<double> first_component_product(const RealSpectrum& sigma, const RealSpectrum& mu) {
    const int n = static_cast<int>(sigma.values.size());
    if (static_cast<int>(mu.values.size()) != n - 1)
        throw std::invalid_argument("first_component_product: minor size must be N-1");
    const auto& s = sigma.values;  // descending
    const auto& m = mu.values;     // descending
    // interlacing gaps shrink to w_j * spacing for tiny first components and
    // can fall below eigensolver accuracy; only genuine violations reject
    const double tol = 1e-12 * (std::abs(s.front()) + std::abs(s.back()) + 1.0);
    for (int i = 0; i < n - 1; ++i)
        if (s[i] - m[i] < -tol || m[i] - s[i + 1] < -tol)
            throw std::invalid_argument("first_component_product: interlacing violated");
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) {
        double prod = 1.0;
        for (int i = 0; i < j; ++i) prod *= (s[j] - m[i]) / (s[j] - s[i]);
        for (int i = j + 1; i < n; ++i) prod *= (s[j] - m[i - 1]) / (s[j] - s[i]);
        out[j] = std::max(prod, 0.0);
    }
    return out;
}

}  // namespace spectra::spectral
