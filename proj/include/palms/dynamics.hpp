#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "palms/graph.hpp"

namespace palms {

enum class ModelTag { gaussian, ultimatum, kuramoto };

std::string model_tag_name(ModelTag t);
ModelTag model_tag_from(const std::string& name);

// r rounds of interaction matrices and responses following
// Y^t = (A o Psi^t) 1 + eps^t. Simulated datasets keep eps for the
// self-consistency invariant; loaded datasets have it empty.
struct DynamicsDataset {
    int n_nodes = 0;
    int n_rounds = 0;
    ModelTag model_tag = ModelTag::gaussian;
    std::vector<std::vector<double>> psi;  // per round, n*n row-major, zero diagonal
    std::vector<double> y;                 // r*n row-major
    std::vector<double> eps;               // r*n row-major, may be empty

    double psi_at(int t, int i, int j) const {
        return psi[t][static_cast<std::size_t>(i) * n_nodes + j];
    }
    double y_at(int t, int i) const { return y[static_cast<std::size_t>(t) * n_nodes + i]; }
};

struct StrategyProfile {
    std::vector<double> offers;      // p_i in [0,1]
    std::vector<double> thresholds;  // r_i in [0,1]
};

struct KuramotoConfig {
    double step = 0.01;
    double coupling = 1.0;
    std::uint64_t init_phase_seed = 0;
};

struct NoiseSpec {
    double std_dev = 0.0;
    std::uint64_t seed = 0;
};

// Eq.-style two-player payoffs; acceptance uses >= on both sides.
std::pair<double, double> payoff_pair(double p_i, double r_i, double p_j, double r_j);

// 1/(1 + exp((y_i - y_j)/n)); exponent clamped to +-700
double fermi_prob(double y_i, double y_j, int n_nodes);

DynamicsDataset simulate_gaussian(const AdjacencyMatrix& a, int n_rounds, const NoiseSpec& noise,
                                  std::uint64_t seed);
DynamicsDataset simulate_ultimatum(const AdjacencyMatrix& a, int n_rounds, const NoiseSpec& noise,
                                   std::uint64_t seed);
DynamicsDataset simulate_kuramoto(const AdjacencyMatrix& a, int n_rounds, const KuramotoConfig& cfg,
                                  const NoiseSpec& noise);

struct Design {
    std::vector<double> x;  // r * n_cols row-major
    std::vector<double> y;  // length r
    int n_rows = 0;
    int n_cols = 0;
    std::vector<int> col_nodes;  // column -> node index (row node excluded)
};

// Row t of x holds psi_{node,j}^t for j in columns (node's own column dropped).
// Never materializes the global rN x N^2 design.
Design build_design(const DynamicsDataset& d, int node, const std::vector<int>& columns);

void save_dataset(const DynamicsDataset& d, const std::string& dir);
DynamicsDataset load_dataset(const std::string& dir);

}  // namespace palms
