#include "spectra/theory.hpp"

#include <cmath>
#include <stdexcept>

#include "spectra/linalg.hpp"

namespace spectra::theory {

BulkLaw BulkLaw::marchenko_pastur(double gamma) {
    if (gamma < 1.0) throw std::invalid_argument("marchenko_pastur: gamma must be >= 1");
    return {LawKind::MarchenkoPastur, gamma};
}

double BulkLaw::lower() const {
    if (kind == LawKind::Semicircle) return -1.0;
    const double s = std::sqrt(gamma);
    return (1.0 - s) * (1.0 - s);
}

double BulkLaw::upper() const {
    if (kind == LawKind::Semicircle) return 1.0;
    const double s = std::sqrt(gamma);
    return (1.0 + s) * (1.0 + s);
}

double BulkLaw::atom_at_zero() const {
    return kind == LawKind::Semicircle ? 0.0 : 1.0 - 1.0 / gamma;
}

double bulk_density(const BulkLaw& law, double x) {
    if (law.kind == LawKind::Semicircle) {
        if (x <= -1.0 || x >= 1.0) return 0.0;
        return 2.0 / M_PI * std::sqrt(1.0 - x * x);
    }
    const double c = law.lower(), d = law.upper();
    if (x <= c || x >= d) return 0.0;
    return std::sqrt((x - c) * (d - x)) / (2.0 * M_PI * law.gamma * x);
}

double stieltjes(const BulkLaw& law, double y) {
    if (y <= law.upper()) throw std::invalid_argument("stieltjes: y must be above the support");
    if (law.kind == LawKind::Semicircle) {
        return 2.0 * y * (1.0 - std::sqrt(1.0 - 1.0 / (y * y)));
    }
    const double g = law.gamma;
    const double s = std::sqrt(1.0 - 2.0 * (g + 1.0) / y + (g - 1.0) * (g - 1.0) / (y * y));
    const double cont = (1.0 - (g - 1.0) / y - s) / (2.0 * g);
    return law.atom_at_zero() / y + cont;
}

OutlierPrediction outlier_prediction(const BulkLaw& law, double coupling) {
    if (coupling <= 0.0) throw std::invalid_argument("outlier_prediction: coupling must be > 0");
    OutlierPrediction out;
    if (law.kind == LawKind::Semicircle) {
        const double alpha = coupling;
        out.threshold = 0.5;
        if (alpha > out.threshold) out.location = alpha + 1.0 / (4.0 * alpha);
        out.overlap = alpha > 1.0 ? 1.0 - 1.0 / (alpha * alpha) : 0.0;
        return out;
    }
    const double b = coupling, g = law.gamma;
    out.threshold = 1.0 + std::sqrt(g);
    if (b > out.threshold) {
        out.location = b * (1.0 + 1.0 / (g * (b - 1.0)));
        out.overlap = ((b - 1.0) * (b - 1.0) - g) / ((b - 1.0) * (b - 1.0) + g * (b - 1.0));
    }
    return out;
}

std::optional<double> outlier_root_solve(const BulkLaw& law, double coupling) {
    if (coupling <= 0.0) throw std::invalid_argument("outlier_root_solve: coupling must be > 0");
    // effective 1/alpha level on the law's own scale
    const double level = (law.kind == LawKind::Semicircle) ? 1.0 / coupling
                                                           : 1.0 / (coupling * law.gamma);
    const double edge = law.upper();
    // G decreases from G(edge+) to 0; no root if the level is unreachable
    double y_lo = edge * (1.0 + 1e-13) + 1e-13;
    if (stieltjes(law, y_lo) <= level) return std::nullopt;
    double y_hi = edge + 1.0;
    while (stieltjes(law, y_hi) > level) y_hi = edge + 2.0 * (y_hi - edge);
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (y_lo + y_hi);
        if (stieltjes(law, mid) > level)
            y_lo = mid;
        else
            y_hi = mid;
        if (y_hi - y_lo < 1e-15 * std::max(1.0, y_hi)) break;
    }
    const double root = 0.5 * (y_lo + y_hi);
    return (law.kind == LawKind::Semicircle) ? root : root / law.gamma;
}

double hard_edge_gap_a0(double beta, double c, double x) {
    if (beta <= 0.0 || c <= 0.0 || x < 0.0)
        throw std::invalid_argument("hard_edge_gap_a0: need beta > 0, c > 0, x >= 0");
    return std::exp(-0.5 * beta * x * (1.0 / c + 1.0));
}

double jointpdf_beta2_log(const std::vector<double>& lambdas, double alpha, int N) {
    const int n = static_cast<int>(lambdas.size());
    if (n != N) throw std::invalid_argument("jointpdf_beta2: need N eigenvalues");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (lambdas[i] == lambdas[j])
                throw std::invalid_argument("jointpdf_beta2: coincident eigenvalues");
    double lg = 0.0;
    for (double l : lambdas) lg += -2.0 * N * l * l;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) lg += std::log(std::abs(lambdas[i] - lambdas[j]));
    // det[[l^{k-1}]_{k=1..N-1} | e^{4 alpha N l}] with column scaling
    double lmax = 0.0, emax = -1e300;
    for (double l : lambdas) {
        lmax = std::max(lmax, std::abs(l));
        emax = std::max(emax, 4.0 * alpha * N * l);
    }
    if (lmax == 0.0) lmax = 1.0;
    std::vector<double> m(size_t(n) * n);
    double colscale = 0.0;
    for (int k = 0; k < n - 1; ++k) colscale += k * std::log(lmax);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n - 1; ++k) m[size_t(i) * n + k] = std::pow(lambdas[i] / lmax, k);
        m[size_t(i) * n + (n - 1)] = std::exp(4.0 * alpha * N * lambdas[i] - emax);
    }
    const double det = linalg::det_real(std::move(m), n);
    return lg + colscale + emax + std::log(std::abs(det) + 1e-300);
}

double jointpdf_beta2(const std::vector<double>& lambdas, double alpha, int N) {
    return std::exp(jointpdf_beta2_log(lambdas, alpha, N));
}

HcizCheck hciz_rank1_check(const std::vector<double>& a, double b) {
    const int n = static_cast<int>(a.size());
    if (n < 2) throw std::invalid_argument("hciz_rank1_check: need at least two points");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(a[i] - a[j]) < 1e-8)
                throw std::invalid_argument("hciz_rank1_check: near-coincident points");
    HcizCheck out{};
    std::vector<double> m(size_t(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n - 1; ++k) m[size_t(i) * n + k] = std::pow(a[i], k);
        m[size_t(i) * n + (n - 1)] = std::exp(a[i] * b);
    }
    double vdm = 1.0;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) vdm *= (a[k] - a[j]);
    out.det_form = linalg::det_real(std::move(m), n) / vdm;
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        double denom = 1.0;
        for (int k = 0; k < n; ++k)
            if (k != j) denom *= (a[j] - a[k]);
        sum += std::exp(b * a[j]) / denom;
    }
    out.residue_form = sum;
    return out;
}

}  // namespace spectra::theory
