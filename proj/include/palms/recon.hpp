#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "palms/dynamics.hpp"
#include "palms/graph.hpp"
#include "palms/solver.hpp"

namespace palms {

struct ReconConfig {
    int n_groups = 1;              // k
    int n_splits = 5;              // m
    SolverConfig solver;
    int workers = 1;
    double binarize_threshold = 0.5;  // tau, >= rule
    std::uint64_t master_seed = 0;
    bool undirected = true;  // symmetrize scores before binarization
};

struct BlockTask {
    long long split_id = 0;
    int row_group = 0;
    int col_group = 0;
    std::vector<int> row_nodes;
    std::vector<int> col_nodes;
    std::uint64_t task_seed = 0;  // pure function of (master_seed, split, k1, k2)
};

struct ReconReport {
    EdgeScoreMatrix scores;
    AdjacencyMatrix binary;
    double wall_time_s = 0.0;
    std::vector<double> per_block_times;
    long long blocks_total = 0;
    long long blocks_failed = 0;
};

enum class Method { lasso, signal_lasso, alms, palms, p_lasso, p_signal_lasso };

std::string method_name(Method m);
Method method_from(const std::string& name);
bool method_distributed(Method m);
Penalty method_penalty(Method m);

std::vector<BlockTask> make_block_tasks(const Partition& partition, std::uint64_t master_seed);

// Rows of the block: one penalized regression per row node on the block's
// columns. Lambda comes from cfg or per-regression selection (auto_lambda).
std::vector<double> estimate_block(const DynamicsDataset& d, const BlockTask& task,
                                   const SolverConfig& cfg);

EdgeScoreMatrix reconstruct_split(const DynamicsDataset& d, const Partition& partition,
                                  const ReconConfig& cfg,
                                  std::vector<double>* block_times = nullptr);

ReconReport reconstruct_palms(const DynamicsDataset& d, const ReconConfig& cfg);

// Forces k=1, m=1 for the non-distributed baselines, then runs the shared
// pipeline with the method's penalty.
ReconReport reconstruct_method(const DynamicsDataset& d, Method method, const ReconConfig& cfg);

AdjacencyMatrix binarize(const EdgeScoreMatrix& scores, double tau);

void symmetrize_scores(EdgeScoreMatrix& scores);

}  // namespace palms
