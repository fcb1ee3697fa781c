#include "spectra/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace spectra::rng {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4B7C15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t next_u64(RngState& s) {
    const std::uint64_t key = mix64(s.seed + kGolden * (s.stream_id + 1));
    const std::uint64_t c = s.counter++;
    return mix64(key ^ mix64(c + kGolden));
}

double uniform(RngState& s) {
    return (static_cast<double>(next_u64(s) >> 11) + 0.5) * 0x1.0p-53;
}

std::pair<double, double> gaussian_pair(RngState& s) {
    const double u1 = uniform(s);
    const double u2 = uniform(s);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    return {r * std::cos(t), r * std::sin(t)};
}

double gaussian(RngState& s) { return gaussian_pair(s).first; }

std::complex<double> gaussian_complex(RngState& s) {
    auto [x, y] = gaussian_pair(s);
    return {x * M_SQRT1_2, y * M_SQRT1_2};
}

double gamma(RngState& s, double shape, double scale) {
    if (shape <= 0.0) throw std::invalid_argument("gamma: shape must be positive");
    if (shape < 1.0) {
        // boost: Gamma(a) = Gamma(a+1) * U^{1/a}
        const double g = gamma(s, shape + 1.0, 1.0);
        return scale * g * std::pow(uniform(s), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = gaussian(s);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform(s);
        if (u < 1.0 - 0.0331 * x * x * x * x) return scale * d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return scale * d * v;
    }
}

double chi_tilde(RngState& s, double k) {
    if (k <= 0.0) throw std::invalid_argument("chi_tilde: k must be positive");
    return std::sqrt(gamma(s, 0.5 * k, 1.0));
}

double chi(RngState& s, double k) {
    if (k <= 0.0) throw std::invalid_argument("chi: k must be positive");
    return std::sqrt(gamma(s, 0.5 * k, 2.0));
}

UnitVector sphere_vector(RngState& s, int n, Field kind) {
    if (n < 1) throw std::invalid_argument("sphere_vector: n must be >= 1");
    UnitVector v;
    v.field_tag = kind;
    v.entries.resize(n);
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
        std::complex<double> z =
            kind == Field::Real ? std::complex<double>(gaussian(s), 0.0) : gaussian_complex(s);
        v.entries[i] = z;
        norm2 += std::norm(z);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& z : v.entries) z *= inv;
    return v;
}

}  // namespace spectra::rng
