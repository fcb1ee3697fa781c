#pragma once
// Monte-Carlo experiment orchestration: named figure suites, replica-level
// parallelism with deterministic merge, and the verification report format.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "spectra/rng.hpp"

namespace spectra::verify {

struct ExperimentConfig {
    std::string suite;
    int N = 0;
    int reps = 1;
    std::uint64_t seed = 1;
    std::map<std::string, double> params;
    std::string output_path;  // CSV at <path>.csv, report at <path>.json
    int threads = 0;          // 0 = hardware concurrency
    double wall_clock_cap_seconds = 600.0;
};

struct VerificationReport {
    std::string suite;
    std::map<std::string, double> params;
    std::string statistic_name;  // ks | chi2 | max_residual | abs_error
    double statistic_value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    double runtime_seconds = 0.0;
    std::string note;

    std::string to_json() const;
};

/// Run replicas 0..reps-1 on a thread pool; replica r draws from the split
/// stream (seed, r), results are merged in replica order regardless of the
/// execution interleaving.
void parallel_replicas(int reps, int threads, std::uint64_t seed,
                       const std::function<void(int, rng::RngState&)>& fn);

/// Known suite names: F1, F3, F3a, F4, F2.5, F5, F3.1, F4.3, F4.4, F4.5.
VerificationReport run_suite(const std::string& name, ExperimentConfig cfg);

std::vector<std::string> suite_names();

}  // namespace spectra::verify
