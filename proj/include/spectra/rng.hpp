#pragma once
// Counter-based random number generation and the primitive distributions
// used by every sampler. A draw is a pure function of (seed, stream_id,
// counter); distinct stream_ids give independent streams, so replicas
// parallelize without any sequencing.

#include <complex>
#include <cstdint>
#include <vector>

namespace spectra::rng {

struct RngState {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
    std::uint64_t counter = 0;
};

/// Stream for replica r of a seeded experiment.
inline RngState substream(std::uint64_t seed, std::uint64_t stream_id) {
    return RngState{seed, stream_id, 0};
}

std::uint64_t next_u64(RngState& s);

/// Uniform on (0,1), never exactly 0 or 1.
double uniform(RngState& s);

/// Standard normal via Box-Muller.
double gaussian(RngState& s);

/// Two independent standard normals for the price of one transform.
std::pair<double, double> gaussian_pair(RngState& s);

/// Standard complex Gaussian, E|z|^2 = 1 (each component N[0,1/2]).
std::complex<double> gaussian_complex(RngState& s);

/// Gamma[shape, scale] variate, any shape > 0 (Marsaglia-Tsang, with the
/// uniform-power boost for shape < 1).
double gamma(RngState& s, double shape, double scale = 1.0);

/// chi~_k: square root of Gamma[k/2, 1]. Rejects k <= 0.
double chi_tilde(RngState& s, double k);

/// chi_k with chi_k^2 ~ Gamma[k/2, 2].
double chi(RngState& s, double k);

enum class Field { Real, Complex };

struct UnitVector {
    std::vector<std::complex<double>> entries;
    Field field_tag = Field::Real;
};

/// Uniform on the unit sphere (normalized iid Gaussians). Rejects n < 1.
UnitVector sphere_vector(RngState& s, int n, Field kind);

}  // namespace spectra::rng
