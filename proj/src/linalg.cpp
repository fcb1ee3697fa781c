#include "spectra/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace spectra::linalg {

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
    CMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

double frobenius_norm(const CMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

double max_abs(const CMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s = std::max(s, std::abs(a(i, j)));
    return s;
}

QrResult householder_qr(const CMatrix& a) {
    const int m = a.rows(), n = a.cols();
    CMatrix r = a;
    CMatrix q = CMatrix::identity(m);
    std::vector<cplx> v(m);
    for (int k = 0; k < std::min(m - 1, n); ++k) {
        double xnorm = 0.0;
        for (int i = k; i < m; ++i) xnorm += std::norm(r(i, k));
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) continue;
        const cplx x0 = r(k, k);
        const double ax0 = std::abs(x0);
        const cplx phase = ax0 > 0 ? x0 / ax0 : cplx(1.0);
        const cplx alpha = -phase * xnorm;
        double vnorm2 = 0.0;
        for (int i = k; i < m; ++i) {
            v[i] = r(i, k) - (i == k ? alpha : cplx(0.0));
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) continue;
        // apply P = I - 2 v v^dag / |v|^2 from the left to R, from the right to Q
        for (int j = k; j < n; ++j) {
            cplx s = 0.0;
            for (int i = k; i < m; ++i) s += std::conj(v[i]) * r(i, j);
            s *= 2.0 / vnorm2;
            for (int i = k; i < m; ++i) r(i, j) -= s * v[i];
        }
        for (int i = 0; i < m; ++i) {
            cplx s = 0.0;
            for (int j = k; j < m; ++j) s += q(i, j) * v[j];
            s *= 2.0 / vnorm2;
            for (int j = k; j < m; ++j) q(i, j) -= s * std::conj(v[j]);
        }
    }
    return {std::move(q), std::move(r)};
}

CLu::CLu(CMatrix a) : lu_(std::move(a)) {
    const int n = lu_.rows();
    if (lu_.cols() != n) throw std::invalid_argument("CLu: matrix not square");
    piv_.resize(n);
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(lu_(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        piv_[k] = p;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
            sign_ = -sign_;
        }
        if (best == 0.0) {
            singular_ = true;
            continue;
        }
        const cplx inv = 1.0 / lu_(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cplx lik = lu_(i, k) * inv;
            lu_(i, k) = lik;
            if (lik == cplx(0.0)) continue;
            for (int j = k + 1; j < n; ++j) lu_(i, j) -= lik * lu_(k, j);
        }
    }
}

std::vector<cplx> CLu::solve(std::vector<cplx> b) const {
    const int n = lu_.rows();
    if (singular_) throw std::runtime_error("CLu::solve: singular matrix");
    for (int k = 0; k < n; ++k)
        if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
    for (int i = 1; i < n; ++i) {
        cplx s = b[i];
        for (int j = 0; j < i; ++j) s -= lu_(i, j) * b[j];
        b[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        cplx s = b[i];
        for (int j = i + 1; j < n; ++j) s -= lu_(i, j) * b[j];
        b[i] = s / lu_(i, i);
    }
    return b;
}

cplx CLu::det() const {
    cplx d = static_cast<double>(sign_);
    for (int i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
    return d;
}

double det_real(std::vector<double> a, int n) {
    double d = 1.0;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a[size_t(k) * n + k]);
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a[size_t(i) * n + k]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a[size_t(k) * n + j], a[size_t(p) * n + j]);
            d = -d;
        }
        const double pivot = a[size_t(k) * n + k];
        d *= pivot;
        for (int i = k + 1; i < n; ++i) {
            const double lik = a[size_t(i) * n + k] / pivot;
            if (lik == 0.0) continue;
            for (int j = k + 1; j < n; ++j) a[size_t(i) * n + j] -= lik * a[size_t(k) * n + j];
        }
    }
    return d;
}

}  // namespace spectra::linalg
