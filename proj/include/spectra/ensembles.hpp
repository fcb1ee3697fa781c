#pragma once
// Samplers for the matrix models: shifted Gaussian ensembles (dense and
// tridiagonal), spiked Wishart (dense and bidiagonal), Haar unitary and its
// sub-unitary perturbation, the anti-Hermitian rank-1 family, rank-1 update
// streams and Dyson Brownian motion.
//
// Conventions, fixed once here: dense GOE/GUE entries follow the weight
// e^{-Tr G^2/2} (diagonal variance 1, off-diagonal per-component variance
// 1/2, complex off-diagonal E|g|^2 = 1); the scaled models divide by
// sqrt(2 beta N) so the bulk occupies [-1, 1].

#include "spectra/linalg.hpp"
#include "spectra/rng.hpp"
#include "spectra/spectral.hpp"

namespace spectra::ensembles {

using linalg::CMatrix;
using linalg::cplx;
using rng::RngState;
using spectral::RealSpectrum;
using spectral::TridiagonalMatrix;

struct BidiagonalModel {
    std::vector<double> main;  // length N, main[0] carries the sqrt(b) factor
    std::vector<double> sub;   // length N-1
    double spike_b = 1.0;
    double beta = 2.0;
    int n = 0;
    int N = 0;
};

struct SpikedWishartSpec {
    int n = 0;  // rows, n >= N
    int N = 0;  // columns
    double b = 1.0;
    double gamma() const { return double(n) / N; }
};

struct DysonConfig {
    int N = 0;
    double alpha = 0.0;
    double total_time = 0.0;
    int steps = 1;
};

/// n x m matrix of iid standard complex Gaussians (E|x|^2 = 1).
CMatrix standard_complex_matrix(RngState& state, int rows, int cols);

/// G~ + alpha 1^ 1^T with G~ = GOE (beta=1) or GUE (beta=2) scaled by
/// 1/sqrt(2 beta N).
CMatrix sample_gaussian_dense(RngState& state, int beta, int N, double alpha);

/// Tridiagonal model T_beta = (C0 + C1 + C1^T)/sqrt(2 beta N); the shift
/// alpha enters the first diagonal entry.
TridiagonalMatrix sample_tridiag(RngState& state, double beta, int N, double alpha);

/// Bidiagonal factor of the spiked Laguerre/Wishart model; the (1,1) entry
/// is sqrt(b) chi_{beta n} / sqrt(beta).
BidiagonalModel sample_laguerre_bidiag(RngState& state, double beta, int n, int N, double b);

/// Symmetric tridiagonal form of B^dagger B for a bidiagonal factor.
TridiagonalMatrix bidiag_gram_tridiag(const BidiagonalModel& b);

/// X Sigma X^dagger = X1 X1^dagger + b x x^dagger, an n x n Hermitian matrix.
CMatrix sample_spiked_wishart_dense(RngState& state, const SpikedWishartSpec& spec);

/// Haar unitary via QR of a complex Ginibre matrix with the R-diagonal
/// phase correction.
CMatrix sample_haar_unitary(RngState& state, int N);

/// U A with A = diag(a, 1, ..., 1), |a| < 1.
CMatrix sample_subunitary(RngState& state, int N, cplx a);

/// A + i alpha diag(1, 0, ..., 0) with A an (unscaled) GUE matrix.
CMatrix sample_antiherm(RngState& state, int N, double alpha);

/// Spectra of the rank-1 update stream W_n = sum_{j<=n} v_j v_j^T.
std::vector<RealSpectrum> wishart_update_stream(RngState& state, int N, int n_max);

/// Eigenvalue trajectories of the discrete Dyson Brownian motion started at
/// diag(alpha, 0, ..., 0); entries are resampled from the exact heat kernel
/// so the endpoint law is independent of the step count. Returns steps+1
/// spectra including the initial condition.
std::vector<RealSpectrum> dyson_paths(RngState& state, const DysonConfig& cfg);

/// N x N matrix of iid Uniform[0,1) entries.
CMatrix sample_iid_shifted(RngState& state, int N);

}  // namespace spectra::ensembles
