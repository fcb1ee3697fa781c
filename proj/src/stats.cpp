#include "spectra/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spectra/special.hpp"

namespace spectra::stats {

double ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
    const std::size_t n = samples.size();
    if (n < 10) throw std::invalid_argument("ks_test: need at least 10 samples");
    std::sort(samples.begin(), samples.end());
    double worst = 0.0;
    double prev_f = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(samples[i]);
        if (f < prev_f - 1e-12) throw std::invalid_argument("ks_test: cdf not monotone");
        prev_f = f;
        worst = std::max(worst, std::abs((i + 1.0) / n - f));
        worst = std::max(worst, std::abs(f - double(i) / n));
    }
    return worst;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const std::size_t na = a.size(), nb = b.size();
    std::size_t i = 0, j = 0;
    double worst = 0.0;
    while (i < na && j < nb) {
        const double v = std::min(a[i], b[j]);
        while (i < na && a[i] == v) ++i;
        while (j < nb && b[j] == v) ++j;
        worst = std::max(worst, std::abs(double(i) / na - double(j) / nb));
    }
    return worst;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("pearson: size mismatch");
    const double n = double(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

Chi2Result chi2_uniform(const std::vector<int>& counts) {
    const int k = static_cast<int>(counts.size());
    if (k < 2) throw std::invalid_argument("chi2_uniform: need at least 2 bins");
    long total = 0;
    for (int c : counts) total += c;
    const double expect = double(total) / k;
    double stat = 0.0;
    for (int c : counts) stat += (c - expect) * (c - expect) / expect;
    Chi2Result r;
    r.statistic = stat;
    r.dof = k - 1;
    r.p_value = special::gamma_q(0.5 * r.dof, 0.5 * stat);
    return r;
}

Histogram Histogram::regular(double lo, double hi, int bins) {
    Histogram h;
    h.bin_edges.resize(bins + 1);
    for (int i = 0; i <= bins; ++i) h.bin_edges[i] = lo + (hi - lo) * i / bins;
    h.counts.assign(bins, 0);
    return h;
}

void Histogram::add(double x) {
    ++total;
    if (x < bin_edges.front() || x >= bin_edges.back()) return;
    const int bins = static_cast<int>(counts.size());
    int i = static_cast<int>((x - bin_edges.front()) / (bin_edges.back() - bin_edges.front()) * bins);
    i = std::min(std::max(i, 0), bins - 1);
    ++counts[i];
}

double Histogram::density(int bin) const {
    const double w = bin_edges[bin + 1] - bin_edges[bin];
    return counts[bin] / (double(total) * w);
}

}  // namespace spectra::stats
