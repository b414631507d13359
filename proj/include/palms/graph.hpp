#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace palms {

enum class Directedness { undirected, directed };

// Binary network. Dense byte matrix up to kDenseLimit nodes, sorted edge list
// with binary-search lookup above it (block extraction needs O(1)-ish access,
// large real networks are sparse).
class AdjacencyMatrix {
  public:
    static constexpr int kDenseLimit = 8192;

    AdjacencyMatrix() = default;
    AdjacencyMatrix(int n_nodes, Directedness d);

    int n_nodes() const { return n_; }
    Directedness directedness() const { return dir_; }
    bool undirected() const { return dir_ == Directedness::undirected; }

    int at(int i, int j) const;
    // sets (i,j), mirrors to (j,i) when undirected; diagonal writes rejected
    void set(int i, int j, int value);

    long long edge_count() const;  // unordered pairs when undirected
    bool dense_storage() const { return n_ <= kDenseLimit; }

    bool operator==(const AdjacencyMatrix& o) const;

  private:
    void check_pair(int i, int j) const;
    void finalize_sparse() const;

    int n_ = 0;
    Directedness dir_ = Directedness::undirected;
    std::vector<std::uint8_t> dense_;
    mutable std::vector<std::uint64_t> sparse_;  // packed i<<32|j, sorted on demand
    mutable bool sorted_ = true;
};

struct Partition {
    int n_nodes = 0;
    int n_groups = 0;
    std::vector<int> assignment;  // group index in [0, k) per node
    long long split_id = 0;

    std::vector<std::vector<int>> groups() const;  // sorted members per group
};

// Continuous estimate before binarization plus per-pair split coverage.
struct EdgeScoreMatrix {
    int n_nodes = 0;
    std::vector<double> scores;  // row-major n*n, diagonal 0
    std::vector<int> coverage;   // contributing splits per ordered pair

    EdgeScoreMatrix() = default;
    explicit EdgeScoreMatrix(int n)
        : n_nodes(n), scores(static_cast<std::size_t>(n) * n, 0.0),
          coverage(static_cast<std::size_t>(n) * n, 0) {}

    double& score(int i, int j) { return scores[static_cast<std::size_t>(i) * n_nodes + j]; }
    double score(int i, int j) const { return scores[static_cast<std::size_t>(i) * n_nodes + j]; }
    int& cover(int i, int j) { return coverage[static_cast<std::size_t>(i) * n_nodes + j]; }
};

struct LoadedNetwork {
    AdjacencyMatrix matrix;
    std::vector<long long> original_ids;  // dense index -> original id
};

AdjacencyMatrix er_generate(int n_nodes, double edge_prob, std::uint64_t seed);

Partition partition_nodes(int n_nodes, int n_groups, std::uint64_t seed, long long split_id);

double density(const AdjacencyMatrix& a);

LoadedNetwork load_edge_list(const std::string& path, Directedness d);
void save_edge_list(const AdjacencyMatrix& a, const std::string& path);

}  // namespace palms
