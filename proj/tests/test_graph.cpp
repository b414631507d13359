#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "palms/errors.hpp"
#include "palms/graph.hpp"
#include "palms/rng.hpp"

using namespace palms;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("palms_graph_" + std::to_string(::getpid()) + "_" + name);
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

}  // namespace

TEST_CASE("adjacency set/at mirrors for undirected, not for directed") {
    AdjacencyMatrix u(5, Directedness::undirected);
    u.set(1, 3, 1);
    CHECK(u.at(1, 3) == 1);
    CHECK(u.at(3, 1) == 1);
    CHECK(u.edge_count() == 1);
    u.set(3, 1, 0);
    CHECK(u.at(1, 3) == 0);
    CHECK(u.edge_count() == 0);

    AdjacencyMatrix d(5, Directedness::directed);
    d.set(1, 3, 1);
    CHECK(d.at(1, 3) == 1);
    CHECK(d.at(3, 1) == 0);
    CHECK(d.edge_count() == 1);
    d.set(3, 1, 1);
    CHECK(d.edge_count() == 2);
}

TEST_CASE("adjacency rejects bad writes") {
    AdjacencyMatrix a(4, Directedness::undirected);
    CHECK_THROWS_AS(a.set(2, 2, 1), parameter_error);
    CHECK_THROWS_AS(a.set(0, 1, 2), parameter_error);
    CHECK_THROWS_AS(a.set(0, 1, -1), parameter_error);
    CHECK_THROWS_AS(a.set(0, 4, 1), parameter_error);
    CHECK_THROWS_AS(a.set(-1, 0, 1), parameter_error);
    CHECK_THROWS_AS((void)a.at(4, 0), parameter_error);
}

TEST_CASE("adjacency equality") {
    AdjacencyMatrix a(6, Directedness::undirected);
    AdjacencyMatrix b(6, Directedness::undirected);
    a.set(0, 5, 1);
    a.set(2, 3, 1);
    b.set(2, 3, 1);
    b.set(0, 5, 1);
    CHECK(a == b);
    b.set(1, 4, 1);
    CHECK_FALSE(a == b);
}

TEST_CASE("sparse storage above the dense limit behaves like dense") {
    const int n = AdjacencyMatrix::kDenseLimit + 100;
    AdjacencyMatrix a(n, Directedness::undirected);
    CHECK_FALSE(a.dense_storage());
    a.set(0, n - 1, 1);
    a.set(1234, 5678, 1);
    a.set(1234, 5678, 1);  // idempotent rewrite
    CHECK(a.at(n - 1, 0) == 1);
    CHECK(a.at(5678, 1234) == 1);
    CHECK(a.at(17, 18) == 0);
    CHECK(a.edge_count() == 2);
    a.set(1234, 5678, 0);
    CHECK(a.edge_count() == 1);
    CHECK(a.at(1234, 5678) == 0);

    AdjacencyMatrix b(n, Directedness::undirected);
    b.set(n - 1, 0, 1);
    CHECK(a == b);
}

TEST_CASE("er_generate edge cases and determinism") {
    CHECK(er_generate(10, 0.0, 5ULL).edge_count() == 0);
    CHECK(er_generate(10, 1.0, 5ULL).edge_count() == 45);

    AdjacencyMatrix a = er_generate(40, 0.3, 1009ULL);
    AdjacencyMatrix b = er_generate(40, 0.3, 1009ULL);
    CHECK(a == b);
    AdjacencyMatrix c = er_generate(40, 0.3, 1010ULL);
    CHECK_FALSE(a == c);

    CHECK_THROWS_AS(er_generate(1, 0.5, 0ULL), parameter_error);
    CHECK_THROWS_AS(er_generate(10, -0.1, 0ULL), parameter_error);
    CHECK_THROWS_AS(er_generate(10, 1.1, 0ULL), parameter_error);
}

TEST_CASE("er_generate mean edge count at n=50 p=0.5") {
    // 1225 pairs, expectation 612.5, sd of the 500-seed mean ~ 0.78
    double total = 0.0;
    for (int s = 0; s < 500; ++s)
        total += static_cast<double>(er_generate(50, 0.5, 100000ULL + s).edge_count());
    double mean = total / 500.0;
    CHECK(std::fabs(mean - 612.5) < 2.35);
}

TEST_CASE("er_generate per-pair inclusion is binomial") {
    const int n = 30, seeds = 1000;
    const double p = 0.3;
    std::vector<int> hits(static_cast<std::size_t>(n) * n, 0);
    for (int s = 0; s < seeds; ++s) {
        AdjacencyMatrix a = er_generate(n, p, 50000ULL + s);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                hits[static_cast<std::size_t>(i) * n + j] += a.at(i, j);
    }
    // per pair: mean 300, sd ~ 14.5, allow 5 sd
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int h = hits[static_cast<std::size_t>(i) * n + j];
            CHECK(h > 300 - 73);
            CHECK(h < 300 + 73);
        }
}

TEST_CASE("partition sizes are balanced") {
    Partition p = partition_nodes(50, 5, 3ULL, 1);
    auto g = p.groups();
    REQUIRE(g.size() == 5);
    for (const auto& grp : g) CHECK(grp.size() == 10);

    Partition q = partition_nodes(7, 3, 3ULL, 1);
    auto gq = q.groups();
    std::vector<std::size_t> sizes;
    for (const auto& grp : gq) sizes.push_back(grp.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{2, 2, 3});

    Partition one = partition_nodes(5, 1, 0ULL, 1);
    auto g1 = one.groups();
    REQUIRE(g1.size() == 1);
    CHECK(g1[0] == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("partition covers every node exactly once, random shapes") {
    Rng r(404ULL);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(r.below(39));
        int k = 1 + static_cast<int>(r.below(static_cast<std::uint32_t>(n)));
        Partition p = partition_nodes(n, k, 1000ULL + trial, trial);
        REQUIRE(static_cast<int>(p.assignment.size()) == n);
        auto g = p.groups();
        REQUIRE(static_cast<int>(g.size()) == k);
        std::size_t lo = n, hi = 0;
        std::set<int> seen;
        for (const auto& grp : g) {
            lo = std::min(lo, grp.size());
            hi = std::max(hi, grp.size());
            for (int v : grp) {
                CHECK(seen.insert(v).second);
                CHECK(p.assignment[v] >= 0);
            }
        }
        CHECK(static_cast<int>(seen.size()) == n);
        CHECK(hi - lo <= 1);
    }
}

TEST_CASE("partition depends on seed and split id, deterministically") {
    Partition a = partition_nodes(20, 4, 9ULL, 2);
    Partition b = partition_nodes(20, 4, 9ULL, 2);
    CHECK(a.assignment == b.assignment);
    Partition c = partition_nodes(20, 4, 9ULL, 3);
    CHECK(a.assignment != c.assignment);
    Partition d = partition_nodes(20, 4, 10ULL, 2);
    CHECK(a.assignment != d.assignment);

    CHECK_THROWS_AS(partition_nodes(5, 6, 0ULL, 1), parameter_error);
    CHECK_THROWS_AS(partition_nodes(5, 0, 0ULL, 1), parameter_error);
}

TEST_CASE("density") {
    AdjacencyMatrix empty(10, Directedness::undirected);
    CHECK(density(empty) == 0.0);

    AdjacencyMatrix full(8, Directedness::undirected);
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j) full.set(i, j, 1);
    CHECK(density(full) == 1.0);

    // 4039 nodes, 88234 edges: 88234 / C(4039,2)
    AdjacencyMatrix big(4039, Directedness::undirected);
    long long placed = 0;
    for (int i = 0; i < 4039 && placed < 88234; ++i)
        for (int j = i + 1; j < 4039 && placed < 88234; ++j) {
            big.set(i, j, 1);
            ++placed;
        }
    REQUIRE(placed == 88234);
    CHECK(density(big) == doctest::Approx(0.0108).epsilon(0.01));
}

TEST_CASE("edge list round trip") {
    AdjacencyMatrix a = er_generate(30, 0.4, 31337ULL);
    fs::path p = temp_file("roundtrip.edges");
    save_edge_list(a, p.string());

    // header carries node and edge counts
    std::ifstream in(p);
    std::string first;
    std::getline(in, first);
    CHECK(first == "# nodes=30 edges=" + std::to_string(a.edge_count()));
    in.close();

    LoadedNetwork back = load_edge_list(p.string(), Directedness::undirected);
    CHECK(back.matrix == a);
    REQUIRE(back.original_ids.size() == 30);
    for (int i = 0; i < 30; ++i) CHECK(back.original_ids[i] == i);
    fs::remove(p);
}

TEST_CASE("edge list parsing") {
    fs::path p = temp_file("parse.edges");

    write_file(p, "0 1\n1 2\n");
    LoadedNetwork g = load_edge_list(p.string(), Directedness::undirected);
    CHECK(g.matrix.n_nodes() == 3);
    CHECK(g.matrix.edge_count() == 2);
    CHECK(g.matrix.at(0, 1) == 1);
    CHECK(g.matrix.at(1, 2) == 1);
    CHECK(g.matrix.at(0, 2) == 0);

    // self loop dropped, node kept
    write_file(p, "5 5\n");
    LoadedNetwork self = load_edge_list(p.string(), Directedness::undirected);
    CHECK(self.matrix.n_nodes() == 1);
    CHECK(self.matrix.edge_count() == 0);
    CHECK(self.original_ids == std::vector<long long>{5});

    // duplicates collapse, ids remapped densely in sorted order
    write_file(p, "# comment\n7 9\n9 40\n7 9\n9 7\n");
    LoadedNetwork dup = load_edge_list(p.string(), Directedness::undirected);
    CHECK(dup.matrix.n_nodes() == 3);
    CHECK(dup.matrix.edge_count() == 2);
    CHECK(dup.original_ids == std::vector<long long>{7, 9, 40});

    fs::remove(p);
}

TEST_CASE("edge list errors") {
    fs::path p = temp_file("bad.edges");

    CHECK_THROWS_AS(load_edge_list((p.string() + ".missing"), Directedness::undirected),
                    data_error);

    write_file(p, "0 1\nnot numbers\n");
    try {
        load_edge_list(p.string(), Directedness::undirected);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line_no == 2);
    }

    write_file(p, "0 1 7\n");
    CHECK_THROWS_AS(load_edge_list(p.string(), Directedness::undirected), parse_error);

    write_file(p, "0 -2\n");
    CHECK_THROWS_AS(load_edge_list(p.string(), Directedness::undirected), parse_error);

    write_file(p, "0\n");
    CHECK_THROWS_AS(load_edge_list(p.string(), Directedness::undirected), parse_error);

    write_file(p, "# only a comment\n\n");
    CHECK_THROWS_AS(load_edge_list(p.string(), Directedness::undirected), parameter_error);

    fs::remove(p);
}
