#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spectra/io.hpp"
#include "spectra/rng.hpp"
#include "spectra/stats.hpp"
#include "spectra/verify.hpp"

using namespace spectra;
using rng::RngState;

TEST_CASE("ks test: DKW self-test, point mass, monotonicity guard") {
    RngState st{71, 0, 0};
    std::vector<double> xs(10000);
    for (auto& x : xs) x = rng::uniform(st);
    const double d = stats::ks_test(xs, [](double x) { return std::min(std::max(x, 0.0), 1.0); });
    CHECK(d < 0.02);

    std::vector<double> c(100, 0.5);
    CHECK(stats::ks_test(c, [](double x) { return std::min(std::max(x, 0.0), 1.0); }) >= 0.5);

    CHECK_THROWS(stats::ks_test(xs, [](double x) { return -x; }));
    std::vector<double> few(5, 0.1);
    CHECK_THROWS(stats::ks_test(few, [](double x) { return x; }));
}

TEST_CASE("two-sample ks on identical samples is zero") {
    RngState st{72, 0, 0};
    std::vector<double> a(500);
    for (auto& x : a) x = rng::gaussian(st);
    CHECK(stats::ks_two_sample(a, a) == 0.0);
}

TEST_CASE("csv: emit then parse round-trips bit-exactly") {
    io::Table t;
    t.columns = {"index", "value_re", "value_im"};
    RngState st{73, 0, 0};
    for (int i = 0; i < 64; ++i) {
        const double a = rng::gaussian(st) * std::pow(10.0, int(rng::uniform(st) * 60) - 30);
        const double b = rng::gaussian(st);
        t.rows.push_back({double(i), a, b});
    }
    const std::string path = "roundtrip_test.csv";
    io::write_csv(t, path);
    const io::Table back = io::read_csv(path);
    REQUIRE(back.columns == t.columns);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t j = 0; j < t.rows[i].size(); ++j)
            CHECK(back.rows[i][j] == t.rows[i][j]);
    std::remove(path.c_str());
    CHECK_THROWS(io::write_csv(t, "/nonexistent_dir_zzz/file.csv"));
}

TEST_CASE("report json carries the documented schema") {
    verify::VerificationReport rep;
    rep.suite = "F3";
    rep.params = {{"N", 400.0}, {"alpha", 1.5}};
    rep.statistic_name = "abs_error";
    rep.statistic_value = 0.01;
    rep.threshold = 0.02;
    rep.pass = true;
    rep.runtime_seconds = 1.25;
    const auto j = nlohmann::json::parse(rep.to_json());
    for (const char* key :
         {"suite", "params", "statistic_name", "statistic_value", "threshold", "pass",
          "runtime_seconds"})
        CHECK(j.contains(key));
    CHECK(j["pass"].get<bool>() == (j["statistic_value"].get<double>() <=
                                    j["threshold"].get<double>()));
}

TEST_CASE("parallel replicas merge deterministically") {
    const int reps = 64;
    std::vector<double> seq(reps), par(reps);
    verify::parallel_replicas(reps, 1, 12345, [&](int r, RngState& st) {
        seq[r] = rng::gaussian(st);
    });
    verify::parallel_replicas(reps, 8, 12345, [&](int r, RngState& st) {
        par[r] = rng::gaussian(st);
    });
    for (int r = 0; r < reps; ++r) CHECK(seq[r] == par[r]);
}

TEST_CASE("run_suite determinism: identical config gives identical csv bytes") {
    verify::ExperimentConfig cfg;
    cfg.N = 10;
    cfg.params["steps"] = 12;
    cfg.seed = 777;
    cfg.output_path = "det_a";
    (void)verify::run_suite("F4", cfg);
    cfg.output_path = "det_b";
    (void)verify::run_suite("F4", cfg);
    auto slurp = [](const std::string& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    CHECK(slurp("det_a.csv") == slurp("det_b.csv"));
    for (const char* f : {"det_a.csv", "det_a.json", "det_b.csv", "det_b.json"})
        std::remove(f);
}

TEST_CASE("unknown suite rejected") {
    verify::ExperimentConfig cfg;
    CHECK_THROWS(verify::run_suite("F99", cfg));
}
