#include "palms/recon.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#include "palms/errors.hpp"
#include "palms/rng.hpp"

namespace palms {

std::string method_name(Method m) {
    switch (m) {
        case Method::lasso: return "lasso";
        case Method::signal_lasso: return "signal_lasso";
        case Method::alms: return "alms";
        case Method::palms: return "palms";
        case Method::p_lasso: return "p_lasso";
        case Method::p_signal_lasso: return "p_signal_lasso";
    }
    return "palms";
}

Method method_from(const std::string& name) {
    if (name == "lasso") return Method::lasso;
    if (name == "signal_lasso") return Method::signal_lasso;
    if (name == "alms") return Method::alms;
    if (name == "palms") return Method::palms;
    if (name == "p_lasso") return Method::p_lasso;
    if (name == "p_signal_lasso") return Method::p_signal_lasso;
    throw parameter_error("unknown method: " + name);
}

bool method_distributed(Method m) {
    return m == Method::palms || m == Method::p_lasso || m == Method::p_signal_lasso;
}

Penalty method_penalty(Method m) {
    switch (m) {
        case Method::lasso:
        case Method::p_lasso: return Penalty::lasso;
        case Method::signal_lasso:
        case Method::p_signal_lasso: return Penalty::signal_lasso;
        default: return Penalty::alms;
    }
}

std::vector<BlockTask> make_block_tasks(const Partition& partition, std::uint64_t master_seed) {
    auto groups = partition.groups();
    int k = partition.n_groups;
    std::vector<BlockTask> tasks;
    tasks.reserve(static_cast<std::size_t>(k) * k);
    for (int k1 = 0; k1 < k; ++k1)
        for (int k2 = 0; k2 < k; ++k2) {
            BlockTask t;
            t.split_id = partition.split_id;
            t.row_group = k1;
            t.col_group = k2;
            t.row_nodes = groups[k1];
            t.col_nodes = groups[k2];
            t.task_seed = derive_seed(master_seed, static_cast<std::uint64_t>(partition.split_id),
                                      static_cast<std::uint64_t>(k1), static_cast<std::uint64_t>(k2));
            tasks.push_back(std::move(t));
        }
    return tasks;
}

std::vector<double> estimate_block(const DynamicsDataset& d, const BlockTask& task,
                                   const SolverConfig& cfg) {
    if (task.row_nodes.empty() || task.col_nodes.empty())
        throw parameter_error("estimate_block: empty node group");
    const std::size_t n_cols = task.col_nodes.size();
    std::vector<double> out(task.row_nodes.size() * n_cols, 0.0);

    for (std::size_t ri = 0; ri < task.row_nodes.size(); ++ri) {
        int i = task.row_nodes[ri];
        // single-node column group estimating itself: no admissible pair
        if (n_cols == 1 && task.col_nodes[0] == i) continue;
        try {
            Design design = build_design(d, i, task.col_nodes);
            SolverConfig row_cfg = cfg;
            if (cfg.auto_lambda) {
                row_cfg.auto_lambda = false;
                row_cfg.lambda = select_lambda(
                    design, cfg, lambda_grid(design, cfg.grid_lo, cfg.grid_hi, cfg.grid_points));
            }
            WeightVector w;
            if (cfg.penalty == Penalty::alms)
                w = adaptive_weights(pilot_estimate(design), cfg.weight_gamma);
            BlockEstimate est = solve_block(design, row_cfg, w);
            // scatter back; the design dropped the self column
            std::size_t c = 0;
            for (std::size_t cj = 0; cj < n_cols; ++cj) {
                if (task.col_nodes[cj] == i) continue;
                out[ri * n_cols + cj] = est.coefficients[c++];
            }
        } catch (const solver_error& ex) {
            throw solver_error("block (split=" + std::to_string(task.split_id) +
                               ",k1=" + std::to_string(task.row_group) +
                               ",k2=" + std::to_string(task.col_group) +
                               ",node=" + std::to_string(i) + "): " + ex.what());
        } catch (const data_error& ex) {
            throw data_error("block (split=" + std::to_string(task.split_id) +
                             ",k1=" + std::to_string(task.row_group) +
                             ",k2=" + std::to_string(task.col_group) +
                             ",node=" + std::to_string(i) + "): " + ex.what());
        }
    }
    return out;
}

EdgeScoreMatrix reconstruct_split(const DynamicsDataset& d, const Partition& partition,
                                  const ReconConfig& cfg, std::vector<double>* block_times) {
    if (partition.n_nodes != d.n_nodes)
        throw parameter_error("reconstruct_split: partition does not cover the dataset's nodes");
    if (cfg.workers < 1) throw parameter_error("reconstruct_split: workers must be >= 1");

    std::vector<BlockTask> tasks = make_block_tasks(partition, cfg.master_seed);
    EdgeScoreMatrix scores(d.n_nodes);
    std::vector<double> times(tasks.size(), 0.0);

    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::vector<std::string> failures;

    auto worker = [&]() {
        while (true) {
            std::size_t idx = next.fetch_add(1);
            if (idx >= tasks.size()) return;
            const BlockTask& task = tasks[idx];
            auto t0 = std::chrono::steady_clock::now();
            try {
                std::vector<double> block = estimate_block(d, task, cfg.solver);
                const std::size_t nc = task.col_nodes.size();
                for (std::size_t ri = 0; ri < task.row_nodes.size(); ++ri) {
                    int i = task.row_nodes[ri];
                    for (std::size_t cj = 0; cj < nc; ++cj) {
                        int j = task.col_nodes[cj];
                        if (i == j) continue;
                        scores.score(i, j) = block[ri * nc + cj];
                        scores.cover(i, j) = 1;
                    }
                }
            } catch (const std::exception& ex) {
                std::lock_guard<std::mutex> lk(err_mutex);
                failures.emplace_back(ex.what());
            }
            times[idx] =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
    };

    int n_workers = std::min<std::size_t>(cfg.workers, tasks.size());
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (!failures.empty()) {
        std::string msg = "reconstruct_split: " + std::to_string(failures.size()) + " block(s) failed";
        for (const auto& f : failures) msg += "\n  " + f;
        throw solver_error(msg);
    }
    if (block_times) block_times->insert(block_times->end(), times.begin(), times.end());
    return scores;
}

void symmetrize_scores(EdgeScoreMatrix& s) {
    for (int i = 0; i < s.n_nodes; ++i)
        for (int j = i + 1; j < s.n_nodes; ++j) {
            double avg = 0.5 * (s.score(i, j) + s.score(j, i));
            s.score(i, j) = avg;
            s.score(j, i) = avg;
        }
}

AdjacencyMatrix binarize(const EdgeScoreMatrix& scores, double tau) {
    if (!(tau > 0.0 && tau < 1.0)) throw parameter_error("binarize: tau must lie in (0,1)");
    int n = scores.n_nodes;
    bool symmetric = true;
    for (int i = 0; i < n && symmetric; ++i)
        for (int j = i + 1; j < n; ++j)
            if (scores.score(i, j) != scores.score(j, i)) {
                symmetric = false;
                break;
            }
    AdjacencyMatrix a(n, symmetric ? Directedness::undirected : Directedness::directed);
    for (int i = 0; i < n; ++i)
        for (int j = symmetric ? i + 1 : 0; j < n; ++j) {
            if (i == j) continue;
            if (scores.score(i, j) >= tau) a.set(i, j, 1);
        }
    return a;
}

ReconReport reconstruct_palms(const DynamicsDataset& d, const ReconConfig& cfg) {
    if (cfg.n_groups < 1 || cfg.n_groups > d.n_nodes)
        throw parameter_error("reconstruct_palms: need 1 <= k <= n_nodes");
    if (cfg.n_splits < 1) throw parameter_error("reconstruct_palms: m must be >= 1");
    if (!(cfg.binarize_threshold > 0.0 && cfg.binarize_threshold < 1.0))
        throw parameter_error("reconstruct_palms: tau must lie in (0,1)");

    auto t0 = std::chrono::steady_clock::now();
    ReconReport report;
    EdgeScoreMatrix acc(d.n_nodes);
    for (long long l = 1; l <= cfg.n_splits; ++l) {
        Partition part = partition_nodes(d.n_nodes, cfg.n_groups, cfg.master_seed, l);
        EdgeScoreMatrix split = reconstruct_split(d, part, cfg, &report.per_block_times);
        for (std::size_t idx = 0; idx < acc.scores.size(); ++idx) {
            acc.scores[idx] += split.scores[idx];
            acc.coverage[idx] += split.coverage[idx];
        }
    }
    double inv_m = 1.0 / cfg.n_splits;
    for (double& v : acc.scores) v *= inv_m;
    for (int i = 0; i < d.n_nodes; ++i) acc.score(i, i) = 0.0;
    if (cfg.undirected) symmetrize_scores(acc);

    report.scores = std::move(acc);
    report.binary = binarize(report.scores, cfg.binarize_threshold);
    report.blocks_total = static_cast<long long>(cfg.n_splits) * cfg.n_groups * cfg.n_groups;
    report.blocks_failed = 0;
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

ReconReport reconstruct_method(const DynamicsDataset& d, Method method, const ReconConfig& cfg) {
    ReconConfig run_cfg = cfg;
    run_cfg.solver.penalty = method_penalty(method);
    if (!method_distributed(method)) {
        run_cfg.n_groups = 1;
        run_cfg.n_splits = 1;
    }
    return reconstruct_palms(d, run_cfg);
}

}  // namespace palms
