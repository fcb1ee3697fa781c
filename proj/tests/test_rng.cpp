#include <doctest.h>

#include <cmath>

#include "spectra/rng.hpp"
#include "spectra/stats.hpp"

using namespace spectra;
using rng::RngState;

TEST_CASE("identical state reproduces the stream bit for bit") {
    RngState a{42, 7, 0}, b{42, 7, 0};
    for (int i = 0; i < 1000; ++i) CHECK(rng::next_u64(a) == rng::next_u64(b));
}

TEST_CASE("gaussian moments") {
    RngState st{1, 0, 0};
    const int n = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng::gaussian(st);
        sum += g;
        sum2 += g * g;
    }
    CHECK(std::abs(sum / n) < 0.005);
    CHECK(std::abs(sum2 / n - 1.0) < 0.01);
}

TEST_CASE("complex gaussian normalization E|z|^2 = 1") {
    RngState st{2, 0, 0};
    const int n = 1000000;
    double sum2 = 0.0;
    for (int i = 0; i < n; ++i) sum2 += std::norm(rng::gaussian_complex(st));
    CHECK(std::abs(sum2 / n - 1.0) < 0.01);
}

TEST_CASE("chi variates: both gamma conventions") {
    RngState st{3, 0, 0};
    const int n = 1000000;
    double tilde2 = 0.0, plain2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double ct = rng::chi_tilde(st, 5.0);
        const double cp = rng::chi(st, 5.0);
        tilde2 += ct * ct;
        plain2 += cp * cp;
    }
    CHECK(std::abs(tilde2 / n - 2.5) < 0.02);   // Gamma[5/2,1] mean
    CHECK(std::abs(plain2 / n - 5.0) < 0.05);   // Gamma[5/2,2] mean
    CHECK_THROWS(rng::chi_tilde(st, 0.0));
    CHECK_THROWS(rng::chi(st, -1.0));
}

TEST_CASE("chi_tilde k=2 squared is exponential with mean 1") {
    // chi~_2^2 ~ Gamma[1,1] = Exp(1)
    RngState st{4, 0, 0};
    const int n = 100000;
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) {
        const double c = rng::chi_tilde(st, 2.0);
        xs[i] = c * c;
    }
    const double ks = stats::ks_test(xs, [](double x) { return 1.0 - std::exp(-x); });
    CHECK(ks < 0.01);
}

TEST_CASE("gamma sampler covers shapes below one") {
    RngState st{5, 0, 0};
    const int n = 400000;
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += rng::gamma(st, 0.35, 1.0);
    CHECK(std::abs(mean / n - 0.35) < 0.01);
}

TEST_CASE("sphere vectors: unit norm, component variance 1/N, n=1 sign") {
    RngState st{6, 0, 0};
    auto v = rng::sphere_vector(st, 10, rng::Field::Real);
    double norm2 = 0.0;
    for (const auto& z : v.entries) norm2 += std::norm(z);
    CHECK(std::abs(norm2 - 1.0) < 1e-14);

    const int reps = 100000;
    double comp2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        auto u = rng::sphere_vector(st, 10, rng::Field::Real);
        comp2 += std::norm(u.entries[3]);
    }
    CHECK(std::abs(comp2 / reps - 0.1) < 0.003);

    for (int r = 0; r < 32; ++r) {
        auto w = rng::sphere_vector(st, 1, rng::Field::Real);
        CHECK(std::abs(std::abs(w.entries[0].real()) - 1.0) < 1e-14);
    }
    CHECK_THROWS(rng::sphere_vector(st, 0, rng::Field::Real));
}

TEST_CASE("split streams decorrelated and prefix-free") {
    const int n = 100000;
    std::vector<double> a(n), b(n);
    RngState sa{99, 0, 0}, sb{99, 1, 0};
    for (int i = 0; i < n; ++i) {
        a[i] = rng::gaussian(sa);
        b[i] = rng::gaussian(sb);
    }
    CHECK(std::abs(stats::pearson(a, b)) < 0.01);
    RngState ra{99, 0, 0}, rb{99, 1, 0};
    int shared_prefix = 0;
    while (shared_prefix < 64 && rng::next_u64(ra) == rng::next_u64(rb)) ++shared_prefix;
    CHECK(shared_prefix == 0);
}
