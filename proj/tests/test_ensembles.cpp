#include <doctest.h>

#include <cmath>

#include "spectra/ensembles.hpp"
#include "spectra/spectral.hpp"
#include "spectra/stats.hpp"
#include "spectra/theory.hpp"

using namespace spectra;
using linalg::CMatrix;
using linalg::cplx;
using rng::RngState;
using spectral::TridiagMode;

TEST_CASE("gaussian dense: scalar variance, hermiticity, outlier at 5/3") {
    RngState st{31, 0, 0};
    const int reps = 100000;
    double var = 0.0;
    for (int r = 0; r < reps; ++r) {
        const CMatrix m = ensembles::sample_gaussian_dense(st, 1, 1, 0.0);
        var += m(0, 0).real() * m(0, 0).real();
    }
    CHECK(std::abs(var / reps - 0.5) < 0.01);

    const CMatrix g = ensembles::sample_gaussian_dense(st, 2, 40, 0.5);
    CHECK(linalg::max_abs(g - g.adjoint()) < 1e-15);

    const int n = 100, nr = 200;
    double mean = 0.0;
    for (int r = 0; r < nr; ++r) {
        const CMatrix m = ensembles::sample_gaussian_dense(st, 1, n, 1.5);
        mean += spectral::eig_hermitian_dense(m).values.front();
    }
    CHECK(std::abs(mean / nr - 5.0 / 3.0) < 0.05);
}

TEST_CASE("tridiagonal model: unshifted entry, chi support, dense equivalence at N=8") {
    RngState st{32, 0, 0};
    const int reps = 100000;
    double mean0 = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto t = ensembles::sample_tridiag(st, 1.7, 12, 0.0);
        mean0 += t.diag[0];
        for (double e : t.offdiag) CHECK(e > 0.0);
    }
    const double sc = std::sqrt(2.0 * 1.7 * 12.0);
    CHECK(std::abs(mean0 / reps) < 0.03 / sc);

    // ordered-spectrum law matches the dense sampler, beta = 1, N = 8
    const int n = 8, nr = 10000;
    std::vector<std::vector<double>> tri(n, std::vector<double>(nr)),
        den(n, std::vector<double>(nr));
    for (int r = 0; r < nr; ++r) {
        const auto t = ensembles::sample_tridiag(st, 1.0, n, 1.0);
        const auto ts = spectral::eig_sym_tridiag(t);
        const CMatrix m = ensembles::sample_gaussian_dense(st, 1, n, 1.0);
        const auto ds = spectral::eig_hermitian_dense(m);
        for (int k = 0; k < n; ++k) {
            tri[k][r] = ts.values[k];
            den[k][r] = ds.values[k];
        }
    }
    for (int k = 0; k < n; ++k) CHECK(stats::ks_two_sample(tri[k], den[k]) < 0.03);
}

TEST_CASE("laguerre bidiagonal: 1x1 mean, trace expectation, BBP outlier") {
    RngState st{33, 0, 0};
    const int reps = 100000;
    double m1 = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto b = ensembles::sample_laguerre_bidiag(st, 2.0, 7, 1, 2.5);
        m1 += b.main[0] * b.main[0];
    }
    CHECK(std::abs(m1 / reps - 2.5 * 7.0) / (2.5 * 7.0) < 0.01);

    double tr = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto b = ensembles::sample_laguerre_bidiag(st, 2.0, 2, 2, 1.0);
        const auto t = ensembles::bidiag_gram_tridiag(b);
        tr += t.diag[0] + t.diag[1];
    }
    CHECK(std::abs(tr / reps - 4.0) < 0.05);

    const int n = 400, N = 200, nr = 100;
    double mean = 0.0;
    for (int r = 0; r < nr; ++r) {
        const auto b = ensembles::sample_laguerre_bidiag(st, 2.0, n, N, 3.0);
        const auto t = ensembles::bidiag_gram_tridiag(b);
        mean += spectral::eig_sym_tridiag(t, TridiagMode::Extreme, 1).values.front() / n;
    }
    CHECK(std::abs(mean / nr - 3.75) < 0.1);
    CHECK_THROWS(ensembles::sample_laguerre_bidiag(st, 2.0, 3, 5, 1.0));
}

TEST_CASE("spiked wishart dense: spectrum identity and MP histogram") {
    RngState st{34, 0, 0};
    // nonzero eigenvalues of X Sigma X^dag equal those of Sigma^1/2 X^dag X Sigma^1/2
    const int n = 30, N = 20;
    RngState probe = st;
    const CMatrix x = ensembles::standard_complex_matrix(probe, n, N);
    const double b = 2.2;
    CMatrix big(n, n), small(N, N);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            cplx s = 0.0;
            for (int j = 0; j < N; ++j) s += (j == 0 ? b : 1.0) * x(i, j) * std::conj(x(k, j));
            big(i, k) = s;
        }
    for (int i = 0; i < N; ++i)
        for (int k = 0; k < N; ++k) {
            cplx s = 0.0;
            for (int j = 0; j < n; ++j) s += std::conj(x(j, i)) * x(j, k);
            small(i, k) = std::sqrt(i == 0 ? b : 1.0) * s * std::sqrt(k == 0 ? b : 1.0);
        }
    const auto sb = spectral::eig_hermitian_dense(big);
    const auto ss = spectral::eig_hermitian_dense(small);
    for (int k = 0; k < N; ++k)
        CHECK(std::abs(sb.values[k] - ss.values[k]) <= 1e-10 * std::abs(ss.values[k]));
    // the sampler's own output is Hermitian with the right shape
    ensembles::SpikedWishartSpec spec{n, N, b};
    const CMatrix m = ensembles::sample_spiked_wishart_dense(st, spec);
    CHECK(m.rows() == n);
    CHECK(linalg::max_abs(m - m.adjoint()) < 1e-12 * linalg::max_abs(m));

    // b = 1: eigenvalues/N follow the unspiked Marchenko-Pastur law
    ensembles::SpikedWishartSpec mp{400, 200, 1.0};
    const CMatrix w = ensembles::sample_spiked_wishart_dense(st, mp);
    const auto sw = spectral::eig_hermitian_dense(w);
    std::vector<double> nonzero;
    for (double v : sw.values)
        if (v > 1e-8) nonzero.push_back(v / 200.0);
    const auto law = theory::BulkLaw::marchenko_pastur(2.0);
    // cdf of the continuous part conditioned on being nonzero
    auto cdf = [&](double t) {
        const int steps = 400;
        const double lo = law.lower();
        if (t <= lo) return 0.0;
        double acc = 0.0;
        const double h = (std::min(t, law.upper()) - lo) / steps;
        for (int i = 0; i < steps; ++i) {
            const double xm = lo + (i + 0.5) * h;
            acc += theory::bulk_density(law, xm) * h;
        }
        return std::min(acc * law.gamma, 1.0);  // continuous mass is 1/gamma
    };
    CHECK(stats::ks_test(nonzero, cdf) < 0.03);
}

TEST_CASE("haar unitary: unitarity, first entry moment, argument uniformity") {
    RngState st{35, 0, 0};
    const CMatrix u = ensembles::sample_haar_unitary(st, 30);
    CHECK(linalg::max_abs(u.adjoint() * u - CMatrix::identity(30)) < 1e-12);

    const int reps = 100000;
    double m2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        const CMatrix v = ensembles::sample_haar_unitary(st, 4);
        m2 += std::norm(v(0, 0));
    }
    CHECK(std::abs(m2 / reps - 0.25) < 0.005);

    // pooled eigenvalue arguments uniform on [0, 2pi)
    std::vector<int> counts(24, 0);
    for (int r = 0; r < 400; ++r) {
        const CMatrix v = ensembles::sample_haar_unitary(st, 12);
        const auto s = spectral::eig_complex_dense(v);
        for (const auto& z : s.values) {
            double a = std::arg(z);
            if (a < 0) a += 2.0 * M_PI;
            ++counts[std::min<int>(int(a / (2.0 * M_PI) * 24), 23)];
        }
    }
    const auto chi2 = stats::chi2_uniform(counts);
    CHECK(chi2.p_value > 0.01);
}

TEST_CASE("subunitary: determinant modulus, a=0 zero eigenvalue, eigenvalue product") {
    RngState st{36, 0, 0};
    for (double amod : {0.7, 0.3}) {
        const CMatrix m = ensembles::sample_subunitary(st, 12, cplx(amod, 0.1));
        const auto lu = linalg::CLu(m);
        CHECK(std::abs(std::abs(lu.det()) - std::abs(cplx(amod, 0.1))) < 1e-12);
        const auto s = spectral::eig_complex_dense(m);
        double prod2 = 1.0;
        for (const auto& z : s.values) prod2 *= std::norm(z);
        CHECK(std::abs(prod2 - std::norm(cplx(amod, 0.1))) < 1e-10);
    }
    for (int r = 0; r < 10; ++r) {
        const CMatrix m = ensembles::sample_subunitary(st, 8, 0.0);
        const auto s = spectral::eig_complex_dense(m);
        double smallest = 1e300;
        for (const auto& z : s.values) smallest = std::min(smallest, std::abs(z));
        CHECK(smallest < 1e-12);
    }
    CHECK_THROWS(ensembles::sample_subunitary(st, 5, cplx(1.0, 0.0)));
}

TEST_CASE("anti-hermitian rank one: upper half plane, sum rule, scalar case") {
    RngState st{37, 0, 0};
    for (int r = 0; r < 10; ++r) {
        const double alpha = 0.5 + r * 0.3;
        const CMatrix m = ensembles::sample_antiherm(st, 25, alpha);
        const auto s = spectral::eig_complex_dense(m);
        double sum_im = 0.0;
        for (const auto& z : s.values) {
            CHECK(z.imag() > 0.0);
            sum_im += z.imag();
        }
        CHECK(std::abs(sum_im - alpha) < 1e-10);
    }
    const CMatrix one = ensembles::sample_antiherm(st, 1, 2.0);
    const auto s1 = spectral::eig_complex_dense(one);
    CHECK(std::abs(s1.values[0] - one(0, 0)) < 1e-14);
    CHECK(s1.values[0].imag() == doctest::Approx(2.0));
}

TEST_CASE("wishart update stream: interlacing, rank one start, trace growth") {
    RngState st{38, 0, 0};
    const int N = 10, steps = 15;
    const auto stream = ensembles::wishart_update_stream(st, N, steps);
    REQUIRE(int(stream.size()) == steps);
    // W_1 has one nonzero eigenvalue = |v|^2 > 0
    int nonzero1 = 0;
    for (double v : stream[0].values)
        if (std::abs(v) > 1e-10) ++nonzero1;
    CHECK(nonzero1 == 1);
    for (int s = 1; s < steps; ++s) {
        const auto& prev = stream[s - 1].values;
        const auto& cur = stream[s].values;
        const int nz = std::min(s, N);
        for (int k = 0; k < nz; ++k) {
            CHECK(cur[k] >= prev[k] - 1e-9);
            if (k + 1 < nz) CHECK(prev[k] >= cur[k + 1] - 1e-9);
        }
    }
    // trace(W_n)/(nN) over independent streams -> 1
    const int streams = 1000, nlast = 6;
    double tr = 0.0;
    for (int r = 0; r < streams; ++r) {
        const auto run = ensembles::wishart_update_stream(st, 8, nlast);
        double t = 0.0;
        for (double v : run.back().values) t += v;
        tr += t / (nlast * 8.0);
    }
    CHECK(std::abs(tr / streams - 1.0) < 0.02);
}

TEST_CASE("dyson paths: single increment variance, ordering, endpoint law") {
    RngState st{39, 0, 0};
    // steps=1, alpha=0: endpoint is one heat-kernel draw, variance t on the diagonal
    const int reps = 50000;
    double var = 0.0;
    for (int r = 0; r < reps; ++r) {
        ensembles::DysonConfig cfg{1, 0.0, 0.37, 1};
        const auto paths = ensembles::dyson_paths(st, cfg);
        var += paths.back().values[0] * paths.back().values[0];
    }
    CHECK(std::abs(var / reps - 0.37) / 0.37 < 0.02);

    ensembles::DysonConfig cfg{12, 1.0, 1.0 / 24.0, 40};
    const auto paths = ensembles::dyson_paths(st, cfg);
    for (const auto& spec : paths)
        for (std::size_t k = 0; k + 1 < spec.values.size(); ++k)
            CHECK(spec.values[k] >= spec.values[k + 1]);

    // endpoint law vs direct sampler at t = 1/(2N)
    const int n = 30, nr = 5000;
    std::vector<double> endp(nr), direct(nr);
    for (int r = 0; r < nr; ++r) {
        ensembles::DysonConfig quick{n, 1.2, 1.0 / (2.0 * n), 3};
        endp[r] = ensembles::dyson_paths(st, quick).back().values.front();
        direct[r] =
            spectral::eig_hermitian_dense(ensembles::sample_gaussian_dense(st, 1, n, 1.2))
                .values.front();
    }
    CHECK(stats::ks_two_sample(endp, direct) < 0.03);
}

TEST_CASE("iid shifted matrix: entries in range, scaled outlier, bulk disk") {
    RngState st{40, 0, 0};
    const int n = 100;
    const CMatrix m = ensembles::sample_iid_shifted(st, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CHECK(m(i, j).real() >= 0.0);
            CHECK(m(i, j).real() < 1.0);
        }
    const auto s = spectral::eig_complex_dense(m);
    const double scale = std::sqrt(n / 12.0);
    int outside = 0;
    cplx outlier = 0.0;
    for (const auto& z : s.values) {
        const cplx zs = z / scale;
        if (std::abs(zs) > 1.1) ++outside;
        if (std::abs(zs) > std::abs(outlier)) outlier = zs;
    }
    CHECK(outside == 1);
    CHECK(std::abs(outlier.real() - std::sqrt(3.0 * n)) < 1.0);
}
