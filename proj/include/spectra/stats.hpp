#pragma once
// Statistics for the verification suites: Kolmogorov-Smirnov distances,
// chi-square uniformity tests, Pearson correlation, histograms.

#include <functional>
#include <vector>

namespace spectra::stats {

/// One-sample KS statistic sup|F_emp - F|; cdf must be nondecreasing over
/// the sample range (checked). Needs at least 10 samples.
double ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample KS statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Pearson correlation coefficient.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Chi-square statistic of observed counts against uniform expectation and
/// its upper-tail p-value.
struct Chi2Result {
    double statistic;
    double p_value;
    int dof;
};
Chi2Result chi2_uniform(const std::vector<int>& counts);

struct Histogram {
    std::vector<double> bin_edges;  // ascending, size = bins + 1
    std::vector<long> counts;       // size = bins
    long total = 0;

    static Histogram regular(double lo, double hi, int bins);
    void add(double x);
    double density(int bin) const;  // counts / (total * width)
};

}  // namespace spectra::stats
