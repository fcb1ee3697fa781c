#pragma once
// Closed-form evaluators: semicircle and Marchenko-Pastur bulk laws and
// Stieltjes transforms, outlier locations/thresholds/overlaps, hard-edge gap
// probability, the beta=2 joint eigenvalue PDF determinant, and the rank-1
// HCIZ identity check.
//
// Scale bookkeeping for Marchenko-Pastur: the tabulated law is the eig/N
// density (support ((1-sqrt(gamma))^2, (1+sqrt(gamma))^2), atom 1-1/gamma);
// outlier locations are reported on the eig/n scale where the classic value
// b(1 + 1/(gamma(b-1))) lives. The generic resolvent solve maps between the
// two: on the eig/N law the secular equation reads 1/(b gamma) = G(y) with
// the location y*/gamma.

#include <optional>
#include <vector>

namespace spectra::theory {

enum class LawKind { Semicircle, MarchenkoPastur };

struct BulkLaw {
    LawKind kind = LawKind::Semicircle;
    double gamma = 1.0;  // n/N >= 1, Marchenko-Pastur only

    static BulkLaw semicircle() { return {LawKind::Semicircle, 1.0}; }
    static BulkLaw marchenko_pastur(double gamma);

    double lower() const;
    double upper() const;
    double atom_at_zero() const;
};

/// Continuous part of the density (the atom is reported separately).
double bulk_density(const BulkLaw& law, double x);

/// Stieltjes transform G(y) = atom/y + int rho(x)/(y-x) dx for y above the
/// upper support edge. Rejects y inside the support.
double stieltjes(const BulkLaw& law, double y);

struct OutlierPrediction {
    double threshold = 0.0;
    std::optional<double> location;  // present iff coupling > threshold
    double overlap = 0.0;
};

/// Closed-form outlier threshold/location/overlap.
///  semicircle: threshold 1/2, location alpha + 1/(4 alpha); the overlap
///  formula 1 - 1/alpha^2 keeps the paper's own convention (transition at
///  alpha = 1, i.e. alpha measured on the [-2,2]-support scale).
///  Marchenko-Pastur: threshold 1 + sqrt(gamma) and overlap
///  ((b-1)^2-gamma)/((b-1)^2+gamma(b-1)) as printed; location (eig/n scale)
///  b(1 + 1/(gamma(b-1))).
OutlierPrediction outlier_prediction(const BulkLaw& law, double coupling);

/// Numeric root of the resolvent equation for the outlier, reported on the
/// same scale as outlier_prediction's location. Empty when no root exists
/// above the edge.
std::optional<double> outlier_root_solve(const BulkLaw& law, double coupling);

/// Hard-edge gap probability at a = 0: exp(-(beta x/2)(1/c + 1)).
double hard_edge_gap_a0(double beta, double c, double x);

/// log of the unnormalized beta=2 joint eigenvalue PDF
/// prod e^{-2N l^2} Delta(l) det[[l^{k-1}] | [e^{4 alpha N l}]],
/// evaluated in log space with column scaling.
double jointpdf_beta2_log(const std::vector<double>& lambdas, double alpha, int N);
double jointpdf_beta2(const std::vector<double>& lambdas, double alpha, int N);

struct HcizCheck {
    double det_form;      // det[[a^{k-1}] | [e^{a b}]] / Vandermonde(a)
    double residue_form;  // sum_j e^{b a_j} / prod_{k!=j} (a_j - a_k)
};

/// Both evaluations of the rank-1 HCIZ integral; proportional with an
/// (a, b)-independent constant.
HcizCheck hciz_rank1_check(const std::vector<double>& a, double b);

}  // namespace spectra::theory
