#pragma once
// Eigensolvers and secular-equation machinery: symmetric tridiagonal QL and
// Sturm bisection, Hermitian dense (Householder reduction), complex dense
// (Hessenberg + shifted QR), Aberth-Ehrlich polynomial roots, rank-1 secular
// solvers and the scattering / overlap identities built on them.

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spectra/linalg.hpp"
#include "spectra/rng.hpp"

namespace spectra::spectral {

using linalg::CMatrix;
using linalg::cplx;

struct SpectrumMeta {
    std::string tag;
    std::map<std::string, double> params;
};

struct RealSpectrum {
    std::vector<double> values;  // sorted descending
    SpectrumMeta meta;
    bool exact_ties = false;
};

struct ComplexSpectrum {
    std::vector<cplx> values;
    SpectrumMeta meta;
};

RealSpectrum make_real_spectrum(std::vector<double> values, SpectrumMeta meta = {});

struct TridiagonalMatrix {
    std::vector<double> diag;     // length N
    std::vector<double> offdiag;  // length N-1, positive a.s.
};

enum class TridiagMode { Full, Extreme, Truncated };

/// Eigenvalues of a symmetric tridiagonal matrix.
///  Full      - all eigenvalues, implicit-shift QL.
///  Extreme   - k largest via Sturm-sequence bisection.
///  Truncated - largest eigenvalue of the leading N0 x N0 block,
///              N0 = ceil(10 N^{1/3}).
RealSpectrum eig_sym_tridiag(const TridiagonalMatrix& t, TridiagMode mode = TridiagMode::Full,
                             int k = 1);

/// Number of eigenvalues of (diag, offdiag) strictly below x (Sturm count).
int sturm_count(const std::vector<double>& diag, const std::vector<double>& offdiag, double x);

struct EigenSystem {
    RealSpectrum spectrum;
    CMatrix vectors;  // column j pairs with spectrum.values[j]
};

/// All eigenvalues (and optionally orthonormal eigenvectors) of a Hermitian
/// matrix. Rejects inputs that are not Hermitian to 1e-12 relative.
RealSpectrum eig_hermitian_dense(const CMatrix& h);
EigenSystem eig_hermitian_dense_vectors(const CMatrix& h);

/// All eigenvalues of a general complex matrix: Hessenberg reduction followed
/// by single-shift QR with deflation. Throws on non-convergence.
ComplexSpectrum eig_complex_dense(const CMatrix& m);

/// All roots of a polynomial given by coefficients c[0] + c[1] z + ... + c[n] z^n
/// (Aberth-Ehrlich simultaneous iteration). Throws if the iteration stalls.
ComplexSpectrum roots_aberth(const std::vector<cplx>& coeffs);

struct SecularProblem {
    std::vector<double> poles;    // distinct
    std::vector<double> weights;  // positive
    double coupling = 0.0;        // alpha (real) or the alpha of i*alpha
    std::optional<double> pole_at_zero_weight;  // u0 term u0/lambda when present
};

/// Zeros of 1 - alpha ( u0/lambda + sum_j w_j/(lambda - mu_j) ), bracketed by
/// interlacing and found by safeguarded bisection+Newton to 1e-13 relative.
RealSpectrum solve_secular_real(const SecularProblem& p);

/// Zeros of 1 - i alpha sum_j w_j/(z - mu_j), alpha > 0: Newton with
/// continuation in alpha from perturbative seeds. All zeros have Im z > 0.
ComplexSpectrum solve_secular_complex(const SecularProblem& p);

struct ScatteringValue {
    cplx resolvent_form;  // (1 + iK)/(1 - iK)
    cplx product_form;    // prod (E - conj z_j)/(E - z_j)
};

/// The scalar s(E) computed both ways; the two agree to 1e-9 relative.
ScatteringValue scattering_s(cplx e_point, double alpha, const RealSpectrum& a_eigs,
                             const rng::UnitVector& v);

struct OverlapSet {
    std::vector<cplx> eigenvalues;
    std::vector<double> diagonal;                    // O_nn >= 1
    std::map<std::pair<int, int>, cplx> off_diagonal;
};

/// Eigenvector overlaps O_mn from the eigenvalues alone (valid for the
/// rank-1 anti-Hermitian family). Requires distinct, strictly complex values.
OverlapSet overlaps_from_eigs(const ComplexSpectrum& spec, bool with_off_diagonal = false);

/// |x_j^{(1)}|^2 for each j from the spectrum sigma and the spectrum mu of the
/// first-row/column minor (strict interlacing required).
std::vector<double> first_component_product(const RealSpectrum& sigma, const RealSpectrum& mu);

}  // namespace spectra::spectral
