#pragma once

#include <optional>
#include <string>
#include <vector>

#include "palms/dynamics.hpp"
#include "palms/recon.hpp"

namespace palms {

struct BenchCell {
    Method method = Method::palms;
    ModelTag dgp = ModelTag::gaussian;
    int n = 50;
    int k = 5;
    int r = 5;
    double density = 0.5;
    int m = 5;
    double noise_std = 1.0;
    double coupling = 1.0;  // DGP 3 only
    double tau = 0.5;
    double gamma = 1.0;
    double grid_lo = -4.0;   // per-cell tuning-grid bounds
    double grid_hi = 0.0;
    int grid_points = 8;
    long max_iters = 500;    // sweep budget per fit; suites cap it for throughput
    std::string truth_file;  // when set, load the network instead of ER generation
};

struct BenchRow {
    BenchCell cell;
    int reps = 0;
    double mse_mean = 0.0, mse_sd = 0.0;
    std::optional<double> srnl_mean, srnl_sd;
    std::optional<double> srel_mean, srel_sd;
    double time_mean = 0.0, time_sd = 0.0;
    bool skipped = false;
    std::string reason;
};

std::vector<BenchCell> make_suite(const std::string& name, const std::string& data_dir);

std::vector<BenchRow> run_comparison(const std::vector<BenchCell>& suite, int reps,
                                     std::uint64_t seed, int workers);

void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows);

}  // namespace palms
