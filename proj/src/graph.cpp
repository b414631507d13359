#include "palms/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "palms/errors.hpp"
#include "palms/rng.hpp"

namespace palms {

namespace {
std::uint64_t pack(int i, int j) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
           static_cast<std::uint32_t>(j);
}
}  // namespace

AdjacencyMatrix::AdjacencyMatrix(int n_nodes, Directedness d) : n_(n_nodes), dir_(d) {
    if (n_nodes < 1) throw parameter_error("AdjacencyMatrix: n_nodes must be positive");
    if (dense_storage()) dense_.assign(static_cast<std::size_t>(n_) * n_, 0);
}

void AdjacencyMatrix::check_pair(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
        throw parameter_error("AdjacencyMatrix: index out of range");
}

void AdjacencyMatrix::finalize_sparse() const {
    if (sorted_) return;
    std::sort(sparse_.begin(), sparse_.end());
    sparse_.erase(std::unique(sparse_.begin(), sparse_.end()), sparse_.end());
    sorted_ = true;
}

int AdjacencyMatrix::at(int i, int j) const {
    check_pair(i, j);
    if (i == j) return 0;
    if (dense_storage()) return dense_[static_cast<std::size_t>(i) * n_ + j];
    finalize_sparse();
    return std::binary_search(sparse_.begin(), sparse_.end(), pack(i, j)) ? 1 : 0;
}

void AdjacencyMatrix::set(int i, int j, int value) {
    check_pair(i, j);
    if (i == j) throw parameter_error("AdjacencyMatrix: diagonal entries are fixed at 0");
    if (value != 0 && value != 1) throw parameter_error("AdjacencyMatrix: entries are binary");
    if (dense_storage()) {
        dense_[static_cast<std::size_t>(i) * n_ + j] = static_cast<std::uint8_t>(value);
        if (undirected()) dense_[static_cast<std::size_t>(j) * n_ + i] = static_cast<std::uint8_t>(value);
        return;
    }
    if (value == 1) {
        sparse_.push_back(pack(i, j));
        if (undirected()) sparse_.push_back(pack(j, i));
        sorted_ = false;
    } else {
        finalize_sparse();
        auto drop = [this](int a, int b) {
            auto it = std::lower_bound(sparse_.begin(), sparse_.end(), pack(a, b));
            if (it != sparse_.end() && *it == pack(a, b)) sparse_.erase(it);
        };
        drop(i, j);
        if (undirected()) drop(j, i);
    }
}

long long AdjacencyMatrix::edge_count() const {
    long long ordered = 0;
    if (dense_storage()) {
        for (auto v : dense_) ordered += v;
    } else {
        finalize_sparse();
        ordered = static_cast<long long>(sparse_.size());
    }
    return undirected() ? ordered / 2 : ordered;
}

bool AdjacencyMatrix::operator==(const AdjacencyMatrix& o) const {
    if (n_ != o.n_ || dir_ != o.dir_) return false;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (at(i, j) != o.at(i, j)) return false;
    return true;
}

std::vector<std::vector<int>> Partition::groups() const {
    std::vector<std::vector<int>> out(n_groups);
    for (int i = 0; i < n_nodes; ++i) out[assignment[i]].push_back(i);
    return out;
}

AdjacencyMatrix er_generate(int n_nodes, double edge_prob, std::uint64_t seed) {
    if (n_nodes < 2) throw parameter_error("er_generate: n_nodes must be >= 2");
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0))
        throw parameter_error("er_generate: edge_prob must lie in [0,1]");
    AdjacencyMatrix a(n_nodes, Directedness::undirected);
    Rng rng(seed);
    for (int i = 0; i < n_nodes; ++i)
        for (int j = i + 1; j < n_nodes; ++j)
            if (rng.uniform01() < edge_prob) a.set(i, j, 1);
    return a;
}

Partition partition_nodes(int n_nodes, int n_groups, std::uint64_t seed, long long split_id) {
    if (n_nodes < 1) throw parameter_error("partition_nodes: n_nodes must be positive");
    if (n_groups < 1 || n_groups > n_nodes)
        throw parameter_error("partition_nodes: need 1 <= n_groups <= n_nodes");
    std::vector<int> perm(n_nodes);
    for (int i = 0; i < n_nodes; ++i) perm[i] = i;
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(split_id)));
    rng.shuffle(perm);

    Partition p;
    p.n_nodes = n_nodes;
    p.n_groups = n_groups;
    p.split_id = split_id;
    p.assignment.assign(n_nodes, 0);
    int base = n_nodes / n_groups;
    int extra = n_nodes % n_groups;  // first `extra` groups get one more node
    int pos = 0;
    for (int g = 0; g < n_groups; ++g) {
        int size = base + (g < extra ? 1 : 0);
        for (int s = 0; s < size; ++s) p.assignment[perm[pos++]] = g;
    }
    return p;
}

double density(const AdjacencyMatrix& a) {
    long long n = a.n_nodes();
    long long pairs = a.undirected() ? n * (n - 1) / 2 : n * (n - 1);
    if (pairs == 0) return 0.0;
    return static_cast<double>(a.edge_count()) / static_cast<double>(pairs);
}

LoadedNetwork load_edge_list(const std::string& path, Directedness d) {
    std::ifstream in(path);
    if (!in) throw data_error("load_edge_list: cannot open " + path);

    long long header_nodes = -1;
    std::vector<std::pair<long long, long long>> edges;
    std::vector<long long> seen_ids;
    std::string line;
    long line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') {
            if (first_content) {
                long long n = 0, e = 0;
                if (std::sscanf(line.c_str() + start, "# nodes=%lld edges=%lld", &n, &e) == 2)
                    header_nodes = n;
            }
            first_content = false;
            continue;
        }
        first_content = false;
        std::istringstream ss(line);
        long long u, v;
        if (!(ss >> u >> v)) throw parse_error("load_edge_list: malformed edge line", line_no);
        std::string rest;
        if (ss >> rest) throw parse_error("load_edge_list: trailing tokens on edge line", line_no);
        if (u < 0 || v < 0) throw parse_error("load_edge_list: negative node id", line_no);
        seen_ids.push_back(u);
        seen_ids.push_back(v);
        if (u != v) edges.emplace_back(u, v);  // self-loops dropped, ids still count
    }
    if (seen_ids.empty() && header_nodes <= 0)
        throw parameter_error("load_edge_list: empty edge list in " + path);

    LoadedNetwork out;
    if (header_nodes > 0) {
        // our writer's header: ids are already dense 0-based
        for (auto id : seen_ids)
            if (id >= header_nodes)
                throw data_error("load_edge_list: node id exceeds header count in " + path);
        out.matrix = AdjacencyMatrix(static_cast<int>(header_nodes), d);
        out.original_ids.resize(static_cast<std::size_t>(header_nodes));
        for (long long i = 0; i < header_nodes; ++i) out.original_ids[i] = i;
        for (auto [u, v] : edges) out.matrix.set(static_cast<int>(u), static_cast<int>(v), 1);
        return out;
    }

    std::sort(seen_ids.begin(), seen_ids.end());
    seen_ids.erase(std::unique(seen_ids.begin(), seen_ids.end()), seen_ids.end());
    std::unordered_map<long long, int> remap;
    remap.reserve(seen_ids.size());
    for (std::size_t i = 0; i < seen_ids.size(); ++i) remap[seen_ids[i]] = static_cast<int>(i);

    out.matrix = AdjacencyMatrix(static_cast<int>(seen_ids.size()), d);
    out.original_ids = seen_ids;
    for (auto [u, v] : edges) out.matrix.set(remap[u], remap[v], 1);
    return out;
}

void save_edge_list(const AdjacencyMatrix& a, const std::string& path) {
    std::ofstream outf(path);
    if (!outf) throw data_error("save_edge_list: cannot write " + path);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < a.n_nodes(); ++i) {
        int j0 = a.undirected() ? i + 1 : 0;
        for (int j = j0; j < a.n_nodes(); ++j)
            if (i != j && a.at(i, j)) edges.emplace_back(i, j);
    }
    std::sort(edges.begin(), edges.end());
    outf << "# nodes=" << a.n_nodes() << " edges=" << edges.size() << "\n";
    for (auto [i, j] : edges) outf << i << " " << j << "\n";
    if (!outf) throw data_error("save_edge_list: write failure on " + path);
}

}  // namespace palms
