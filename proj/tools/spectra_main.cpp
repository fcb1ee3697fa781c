// Command-line surface: sample ensembles to CSV, evaluate closed-form
// quantities, run verification suites, and sweep single realizations.

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spectra/edge.hpp"
#include "spectra/ensembles.hpp"
#include "spectra/io.hpp"
#include "spectra/planar.hpp"
#include "spectra/spectral.hpp"
#include "spectra/theory.hpp"
#include "spectra/verify.hpp"

namespace {

using namespace spectra;
using linalg::CMatrix;
using linalg::cplx;

std::map<std::string, double> parse_params(const std::string& kv) {
    std::map<std::string, double> out;
    std::stringstream ss(kv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--params expects k=v,...");
        out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return out;
}

int cmd_sample(const std::string& ensemble, int n, int rows, double alpha, double b, double beta,
               double a_mod, int reps, std::uint64_t seed, const std::string& out_path) {
    io::Table table;
    const bool complex_spec = (ensemble == "haar" || ensemble == "subunitary" ||
                               ensemble == "antiherm" || ensemble == "iid");
    table.columns = {"replica"};
    const int cols = (ensemble == "laguerre-bidiag" || ensemble == "spiked-wishart") ? n : n;
    for (int j = 0; j < cols; ++j) {
        if (complex_spec) {
            table.columns.push_back("re_" + std::to_string(j));
            table.columns.push_back("im_" + std::to_string(j));
        } else {
            table.columns.push_back("lambda_" + std::to_string(j));
        }
    }
    for (int r = 0; r < reps; ++r) {
        rng::RngState st = rng::substream(seed, r);
        std::vector<double> row{double(r)};
        auto push_real = [&](const std::vector<double>& v) {
            row.insert(row.end(), v.begin(), v.end());
        };
        auto push_complex = [&](const std::vector<cplx>& v) {
            for (const cplx& z : v) {
                row.push_back(z.real());
                row.push_back(z.imag());
            }
        };
        if (ensemble == "gaussian-dense") {
            push_real(spectral::eig_hermitian_dense(
                          ensembles::sample_gaussian_dense(st, int(beta), n, alpha))
                          .values);
        } else if (ensemble == "tridiag") {
            push_real(spectral::eig_sym_tridiag(ensembles::sample_tridiag(st, beta, n, alpha))
                          .values);
        } else if (ensemble == "laguerre-bidiag") {
            const auto bd = ensembles::sample_laguerre_bidiag(st, beta, rows, n, b);
            push_real(spectral::eig_sym_tridiag(ensembles::bidiag_gram_tridiag(bd)).values);
        } else if (ensemble == "spiked-wishart") {
            ensembles::SpikedWishartSpec spec{rows, n, b};
            push_real(spectral::eig_hermitian_dense(
                          ensembles::sample_spiked_wishart_dense(st, spec))
                          .values);
        } else if (ensemble == "haar") {
            push_complex(spectral::eig_complex_dense(ensembles::sample_haar_unitary(st, n)).values);
        } else if (ensemble == "subunitary") {
            push_complex(
                spectral::eig_complex_dense(ensembles::sample_subunitary(st, n, a_mod)).values);
        } else if (ensemble == "antiherm") {
            push_complex(spectral::eig_complex_dense(ensembles::sample_antiherm(st, n, alpha))
                             .values);
        } else if (ensemble == "iid") {
            push_complex(spectral::eig_complex_dense(ensembles::sample_iid_shifted(st, n)).values);
        } else {
            throw CLI::ValidationError("unknown ensemble " + ensemble);
        }
        table.rows.push_back(std::move(row));
    }
    io::write_csv(table, out_path);
    std::cout << "wrote " << table.rows.size() << " replicas to " << out_path << "\n";
    return 0;
}

int cmd_theory(const std::string& quantity, const std::map<std::string, double>& p) {
    auto get = [&](const std::string& k, double fallback) {
        auto it = p.find(k);
        return it == p.end() ? fallback : it->second;
    };
    double value = 0.0;
    if (quantity == "bulk-density") {
        const auto law = get("gamma", 0.0) >= 1.0
                             ? theory::BulkLaw::marchenko_pastur(get("gamma", 1.0))
                             : theory::BulkLaw::semicircle();
        value = theory::bulk_density(law, get("x", 0.0));
    } else if (quantity == "stieltjes") {
        const auto law = get("gamma", 0.0) >= 1.0
                             ? theory::BulkLaw::marchenko_pastur(get("gamma", 1.0))
                             : theory::BulkLaw::semicircle();
        value = theory::stieltjes(law, get("y", 2.0));
    } else if (quantity == "outlier") {
        const auto law = get("gamma", 0.0) >= 1.0
                             ? theory::BulkLaw::marchenko_pastur(get("gamma", 1.0))
                             : theory::BulkLaw::semicircle();
        const auto pred = theory::outlier_prediction(law, get("coupling", 1.0));
        std::cout << "threshold " << io::format_full(pred.threshold) << "\n";
        std::cout << "location "
                  << (pred.location ? io::format_full(*pred.location) : std::string("none"))
                  << "\n";
        std::cout << "overlap " << io::format_full(pred.overlap) << "\n";
        return 0;
    } else if (quantity == "hard-edge-gap") {
        value = theory::hard_edge_gap_a0(get("beta", 2.0), get("c", 1.0), get("x", 1.0));
    } else if (quantity == "tw-cdf") {
        static const edge::PainleveTable table = edge::hastings_mcleod();
        value = edge::tw_cdf(table, int(get("beta", 2.0)), get("s", 0.0));
    } else if (quantity == "crit-cdf") {
        static const edge::PainleveTable table = edge::hastings_mcleod();
        static const edge::LaxField field = edge::lax_propagate(table, 3.0);
        value = edge::crit_cdf(field, int(get("beta", 2.0)), get("w", 0.0), get("s", 0.0));
    } else if (quantity == "fredholm") {
        value = edge::fredholm_f2w(get("w", 0.0), get("s", 0.0));
    } else if (quantity == "rho-profile") {
        value = planar::rho_profile(get("g", 1.25), get("Y", 0.5));
    } else if (quantity == "mean-overlap") {
        value = planar::mean_overlap(get("g", 1.25), get("Y", 0.5));
    } else if (quantity == "overlap-pdf") {
        value = planar::overlap_pdf(get("g", 1.25), get("Y", 0.5), get("t", 1.0));
    } else {
        throw CLI::ValidationError("unknown quantity " + quantity);
    }
    std::cout << io::format_full(value) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-1 perturbed random matrix ensembles: samplers, theory, verification"};
    app.require_subcommand(1);

    // sample
    auto* sample = app.add_subcommand("sample", "sample an ensemble and write eigenvalues to CSV");
    std::string ensemble, out_path = "sample.csv";
    int n = 100, rows = 0, reps = 1;
    std::uint64_t seed = 1;
    double alpha = 1.0, b = 1.0, beta = 1.0, a_mod = 0.5;
    sample->add_option("--ensemble", ensemble,
                       "gaussian-dense|tridiag|laguerre-bidiag|spiked-wishart|haar|subunitary|"
                       "antiherm|iid")
        ->required();
    sample->add_option("--n", n, "matrix dimension / columns")->required();
    sample->add_option("--rows", rows, "row count for the Wishart family (default 2n)");
    sample->add_option("--alpha", alpha, "additive coupling");
    sample->add_option("--b", b, "multiplicative spike");
    sample->add_option("--beta", beta, "Dyson index");
    sample->add_option("--a", a_mod, "sub-unitary |a| < 1");
    sample->add_option("--reps", reps, "number of replicas");
    sample->add_option("--seed", seed, "stream seed");
    sample->add_option("--out", out_path, "output CSV path");

    // theory
    auto* theory_cmd = app.add_subcommand("theory", "evaluate a closed-form quantity");
    std::string quantity, params_kv;
    theory_cmd->add_option("--quantity", quantity, "quantity tag")->required();
    theory_cmd->add_option("--params", params_kv, "comma-separated k=v list");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string suite, vparams_kv, vout;
    int vN = 0, vreps = 0, vthreads = 0;
    std::uint64_t vseed = 1;
    verify_cmd->add_option("--suite", suite, "suite name (or 'all')")->required();
    verify_cmd->add_option("--n", vN, "dimension override");
    verify_cmd->add_option("--reps", vreps, "replica override");
    verify_cmd->add_option("--seed", vseed, "seed");
    verify_cmd->add_option("--threads", vthreads, "worker threads (0 = hardware)");
    verify_cmd->add_option("--params", vparams_kv, "extra parameters k=v,...");
    verify_cmd->add_option("--out", vout, "output basename");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "single-realization coupling sweep");
    std::string model, grid_spec = "0.1:1.5:0.1", sout = "sweep";
    int sn = 100;
    std::uint64_t sseed = 1;
    sweep_cmd->add_option("--model", model, "antiherm|subunitary")->required();
    sweep_cmd->add_option("--grid", grid_spec, "lo:hi:step");
    sweep_cmd->add_option("--n", sn, "dimension");
    sweep_cmd->add_option("--seed", sseed, "seed");
    sweep_cmd->add_option("--out", sout, "output basename");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed()) {
            if (rows == 0) rows = 2 * n;
            return cmd_sample(ensemble, n, rows, alpha, b, beta, a_mod, reps, seed, out_path);
        }
        if (theory_cmd->parsed()) {
            return cmd_theory(quantity, params_kv.empty() ? std::map<std::string, double>{}
                                                          : parse_params(params_kv));
        }
        if (verify_cmd->parsed()) {
            spectra::verify::ExperimentConfig cfg;
            cfg.N = vN;
            cfg.reps = vreps > 0 ? vreps : 1;
            cfg.seed = vseed;
            cfg.threads = vthreads;
            cfg.output_path = vout;
            if (!vparams_kv.empty()) cfg.params = parse_params(vparams_kv);
            bool all_pass = true;
            const auto names = suite == "all" ? spectra::verify::suite_names()
                                              : std::vector<std::string>{suite};
            for (const auto& name : names) {
                auto c = cfg;
                if (!vout.empty() && names.size() > 1) c.output_path = vout + "_" + name;
                const auto rep = spectra::verify::run_suite(name, c);
                std::printf("%-6s %-12s %.6g (threshold %.6g) %s [%.2fs]\n", rep.suite.c_str(),
                            rep.statistic_name.c_str(), rep.statistic_value, rep.threshold,
                            rep.pass ? "PASS" : "FAIL", rep.runtime_seconds);
                all_pass = all_pass && rep.pass;
            }
            return all_pass ? 0 : 1;
        }
        if (sweep_cmd->parsed()) {
            double lo, hi, step;
            if (std::sscanf(grid_spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3)
                throw CLI::ValidationError("--grid expects lo:hi:step");
            spectra::verify::ExperimentConfig cfg;
            cfg.N = sn;
            cfg.seed = sseed;
            cfg.output_path = sout;
            cfg.params["step"] = step;
            cfg.params["hi"] = hi;
            const auto rep = spectra::verify::run_suite(
                model == "antiherm" ? "F4.4" : "F4.5", cfg);
            std::printf("%s %s %.3g %s\n", rep.suite.c_str(), rep.statistic_name.c_str(),
                        rep.statistic_value, rep.pass ? "PASS" : "FAIL");
            return rep.pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
