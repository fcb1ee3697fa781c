#include "spectra/ensembles.hpp"

#include <cmath>
#include <stdexcept>

namespace spectra::ensembles {

using rng::chi_tilde;
using rng::gaussian;
using rng::gaussian_complex;
using rng::gaussian_pair;

CMatrix standard_complex_matrix(RngState& state, int rows, int cols) {
    CMatrix x(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) x(i, j) = gaussian_complex(state);
    return x;
}

CMatrix sample_gaussian_dense(RngState& state, int beta, int N, double alpha) {
    if (beta != 1 && beta != 2) throw std::invalid_argument("sample_gaussian_dense: beta must be 1 or 2");
    if (N < 1) throw std::invalid_argument("sample_gaussian_dense: N must be >= 1");
    const double scale = 1.0 / std::sqrt(2.0 * beta * N);
    const double shift = alpha / N;
    CMatrix m(N, N);
    for (int i = 0; i < N; ++i) {
        m(i, i) = gaussian(state) * scale + shift;
        for (int j = i + 1; j < N; ++j) {
            cplx g;
            if (beta == 1) {
                g = gaussian(state) * M_SQRT1_2;
            } else {
                g = gaussian_complex(state);
            }
            m(i, j) = g * scale + shift;
            m(j, i) = std::conj(g) * scale + shift;
        }
    }
    return m;
}

TridiagonalMatrix sample_tridiag(RngState& state, double beta, int N, double alpha) {
    if (beta <= 0.0) throw std::invalid_argument("sample_tridiag: beta must be positive");
    if (N < 1) throw std::invalid_argument("sample_tridiag: N must be >= 1");
    const double sc = std::sqrt(2.0 * beta * N);
    TridiagonalMatrix t;
    t.diag.resize(N);
    t.offdiag.resize(N - 1);
    t.diag[0] = (alpha * sc + gaussian(state)) / sc;
    for (int i = 1; i < N; ++i) t.diag[i] = gaussian(state) / sc;
    for (int i = 0; i < N - 1; ++i) t.offdiag[i] = chi_tilde(state, beta * (N - 1 - i)) / sc;
    return t;
}

BidiagonalModel sample_laguerre_bidiag(RngState& state, double beta, int n, int N, double b) {
    if (n < N || N < 1) throw std::invalid_argument("sample_laguerre_bidiag: need n >= N >= 1");
    if (beta <= 0.0 || b <= 0.0)
        throw std::invalid_argument("sample_laguerre_bidiag: beta and b must be positive");
    BidiagonalModel m;
    m.spike_b = b;
    m.beta = beta;
    m.n = n;
    m.N = N;
    m.main.resize(N);
    m.sub.resize(N - 1);
    const double inv = 1.0 / std::sqrt(beta);
    m.main[0] = std::sqrt(b) * rng::chi(state, beta * n) * inv;
    for (int i = 1; i < N; ++i) m.main[i] = rng::chi(state, beta * (n - i)) * inv;
    for (int i = 0; i < N - 1; ++i) m.sub[i] = rng::chi(state, beta * (N - 1 - i)) * inv;
    return m;
}

TridiagonalMatrix bidiag_gram_tridiag(const BidiagonalModel& b) {
    const int N = b.N;
    TridiagonalMatrix t;
    t.diag.resize(N);
    t.offdiag.resize(N - 1);
    for (int i = 0; i < N; ++i) {
        const double s_prev = (i > 0) ? b.sub[i - 1] : 0.0;
        t.diag[i] = b.main[i] * b.main[i] + s_prev * s_prev;
    }
    for (int i = 0; i < N - 1; ++i) t.offdiag[i] = b.main[i] * b.sub[i];
    return t;
}

CMatrix sample_spiked_wishart_dense(RngState& state, const SpikedWishartSpec& spec) {
    if (spec.n < spec.N || spec.N < 1 || spec.b <= 0.0)
        throw std::invalid_argument("sample_spiked_wishart_dense: invalid spec");
    const CMatrix x = standard_complex_matrix(state, spec.n, spec.N);
    CMatrix m(spec.n, spec.n);
    for (int i = 0; i < spec.n; ++i) {
        for (int k = i; k < spec.n; ++k) {
            cplx s = 0.0;
            for (int j = 0; j < spec.N; ++j) {
                const double sig = (j == 0) ? spec.b : 1.0;
                s += sig * x(i, j) * std::conj(x(k, j));
            }
            m(i, k) = s;
            m(k, i) = std::conj(s);
        }
    }
    return m;
}

CMatrix sample_haar_unitary(RngState& state, int N) {
    if (N < 1) throw std::invalid_argument("sample_haar_unitary: N must be >= 1");
    const CMatrix g = standard_complex_matrix(state, N, N);
    auto qr = linalg::householder_qr(g);
    for (int j = 0; j < N; ++j) {
        const cplx r = qr.r(j, j);
        const double ar = std::abs(r);
        const cplx phase = ar > 0 ? r / ar : cplx(1.0);
        for (int i = 0; i < N; ++i) qr.q(i, j) *= phase;
    }
    return std::move(qr.q);
}

CMatrix sample_subunitary(RngState& state, int N, cplx a) {
    if (std::abs(a) >= 1.0) throw std::invalid_argument("sample_subunitary: need |a| < 1");
    CMatrix u = sample_haar_unitary(state, N);
    for (int i = 0; i < N; ++i) u(i, 0) *= a;
    return u;
}

CMatrix sample_antiherm(RngState& state, int N, double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("sample_antiherm: alpha must be positive");
    CMatrix m(N, N);
    for (int i = 0; i < N; ++i) {
        m(i, i) = gaussian(state);
        for (int j = i + 1; j < N; ++j) {
            const cplx g = gaussian_complex(state);
            m(i, j) = g;
            m(j, i) = std::conj(g);
        }
    }
    m(0, 0) += cplx(0.0, alpha);
    return m;
}

std::vector<RealSpectrum> wishart_update_stream(RngState& state, int N, int n_max) {
    if (n_max < 1) throw std::invalid_argument("wishart_update_stream: n_max must be >= 1");
    std::vector<RealSpectrum> out;
    out.reserve(n_max);
    CMatrix w(N, N);
    std::vector<double> v(N);
    for (int n = 1; n <= n_max; ++n) {
        for (int i = 0; i < N; ++i) v[i] = gaussian(state);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) w(i, j) += v[i] * v[j];
        RealSpectrum s = spectral::eig_hermitian_dense(w);
        s.meta.tag = "wishart-update";
        s.meta.params["n"] = n;
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<RealSpectrum> dyson_paths(RngState& state, const DysonConfig& cfg) {
    if (cfg.steps < 1 || cfg.total_time <= 0.0 || cfg.N < 1)
        throw std::invalid_argument("dyson_paths: invalid config");
    const int N = cfg.N;
    const double dt = cfg.total_time / cfg.steps;
    const double sd_diag = std::sqrt(dt);
    const double sd_off = std::sqrt(0.5 * dt);
    CMatrix h(N, N);
    h(0, 0) = cfg.alpha;
    std::vector<RealSpectrum> out;
    out.reserve(cfg.steps + 1);
    auto record = [&](int step) {
        RealSpectrum s = spectral::eig_hermitian_dense(h);
        s.meta.tag = "dyson";
        s.meta.params["step"] = step;
        out.push_back(std::move(s));
    };
    record(0);
    for (int m = 1; m <= cfg.steps; ++m) {
        for (int i = 0; i < N; ++i) {
            h(i, i) += sd_diag * gaussian(state);
            for (int j = i + 1; j < N; ++j) {
                const double g = sd_off * gaussian(state);
                h(i, j) += g;
                h(j, i) += g;
            }
        }
        record(m);
    }
    return out;
}

CMatrix sample_iid_shifted(RngState& state, int N) {
    if (N < 2) throw std::invalid_argument("sample_iid_shifted: N must be >= 2");
    CMatrix m(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) m(i, j) = rng::uniform(state);
    return m;
}

}  // namespace spectra::ensembles
