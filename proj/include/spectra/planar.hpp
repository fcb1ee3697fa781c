#pragma once
// Two-dimensional-spectrum evaluators and samplers: the anti-Hermitian
// perturbation kernel and Y-profile, mean overlap and overlap distribution,
// truncated/sub-unitary CUE correlations, random-Laurent-series zeros and
// single-realization parameter sweeps.

#include <complex>
#include <optional>
#include <vector>

#include "spectra/linalg.hpp"
#include "spectra/rng.hpp"
#include "spectra/spectral.hpp"

namespace spectra::planar {

using linalg::cplx;
using rng::RngState;

struct PlanarParams {
    double profile_g = 1.0;   // g = (alpha0 + 1/alpha0)/2 >= 1
    double alpha0 = 1.0;
    cplx mu = 1.0;

    static PlanarParams from_alpha0(double alpha0);
};

/// Normalized Y-profile rho_(1)(Y); the Y -> 0 limit is 2g.
double rho_profile(double g, double y);

/// Correlation kernel K(Z1, Z2) by 32-point Gauss-Legendre on the entire
/// integrand; the diagonal reproduces rho_profile. Reproduces itself under
/// the dX dY / pi measure.
cplx kernel_planar(double g, cplx z1, cplx z2);

/// Mean diagonal overlap density O(Y); O(Y)/rho_profile(Y) is the bin-mean
/// of O_nn at height Y.
double mean_overlap(double g, double y);

/// Density of t = O_nn - 1 at height Y (g > 1, Y > 0, t > 0); heavy 1/t^3
/// tail, and int (1+t) P dt = mean_overlap(g, Y).
double overlap_pdf(double g, double y, double t);

enum class CueKind { FiniteN, Kac, Scaled };

struct CueSpec {
    CueKind kind = CueKind::Kac;
    int N = 0;        // FiniteN
    cplx a = 0.0;     // FiniteN
    cplx mu = 1.0;    // Scaled
};

/// k-point correlation (k <= 2) of the sub-unitary CUE family:
///  FiniteN - exact finite-N formula (requires prod |z|^2 >= |a|^2);
///  Kac     - N -> infinity of the a=0 case, det[1/(1-z_i conj z_j)^2]/pi^k;
///  Scaled  - a = 1/(mu sqrt(N)) scaling limit.
double cue_density(const CueSpec& spec, const std::vector<cplx>& z);

struct ZeroSample {
    std::vector<cplx> zeros;    // all |zero| < radius_cut
    int truncation_degree = 0;
    double radius_cut = 0.0;
};

/// Zeros of 1/mu - sum_{j=1}^M c_j lambda^j inside |lambda| <= radius_cut,
/// c_j iid standard complex Gaussians.
ZeroSample laurent_zeros(RngState& state, cplx mu, int truncation_degree, double radius_cut);

enum class SweepModel { AntiHermitian, Subunitary };

struct SweepTable {
    std::vector<double> grid;                  // coupling values
    std::vector<std::vector<cplx>> eigenvalues;  // [step][j], continuity-matched
    std::vector<bool> ambiguous;               // assignment ambiguity flag per step
};

/// Eigenvalue trajectories of one fixed realization as the coupling sweeps
/// a grid; nearest-neighbor continuity matching with flagged ambiguities.
SweepTable parameter_sweep(RngState& state, SweepModel model, int n,
                           const std::vector<double>& grid);

}  // namespace spectra::planar
