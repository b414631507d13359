#pragma once

#include <cstdint>
#include <string>

#include "palms/metrics.hpp"

namespace palms {

// Flat run configuration: key=value config file plus CLI flag overrides
// (flags win). Unknown keys are errors.
struct RunConfig {
    std::string out = "out";
    std::uint64_t seed = 0;
    int workers = 1;

    std::string dgp = "kuramoto";
    int n = 50;
    int r = 5;
    double density = 0.5;
    double noise_std = 1.0;
    double coupling = 1.0;
    double step = 0.01;

    std::string dataset;
    std::string method = "palms";
    int k = 5;
    int m = 5;
    double tau = 0.5;
    double lambda = -1.0;  // negative: CV/BIC-selected per regression
    double lambda2 = 0.0;
    double grid_lo = -4.0;
    double grid_hi = 0.0;
    int grid_points = 8;
    double gamma = 1.0;
    double tol = 1e-7;
    long max_iters = 10000;
    bool undirected = true;

    std::string truth;
    std::string estimate;

    std::string suite = "table2";
    int reps = 50;
    std::string data_dir = "data";
};

void apply_kv(RunConfig& cfg, const std::string& key, const std::string& value);
void load_config_file(RunConfig& cfg, const std::string& path);

void cmd_generate(const RunConfig& cfg);
void cmd_reconstruct(const RunConfig& cfg);
MetricsReport cmd_evaluate(const RunConfig& cfg);
void cmd_bench(const RunConfig& cfg);

}  // namespace palms
