#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "palms/dynamics.hpp"
#include "palms/errors.hpp"
#include "palms/graph.hpp"
#include "palms/rng.hpp"

using namespace palms;
namespace fs = std::filesystem;

namespace {

// y minus the model prediction, recomputed independently from psi and eps
double self_consistency_gap(const DynamicsDataset& d, const AdjacencyMatrix& a) {
    double worst = 0.0;
    for (int t = 0; t < d.n_rounds; ++t)
        for (int i = 0; i < d.n_nodes; ++i) {
            double pred = 0.0;
            for (int j = 0; j < d.n_nodes; ++j)
                if (j != i) pred += a.at(i, j) * d.psi_at(t, i, j);
            pred += d.eps[static_cast<std::size_t>(t) * d.n_nodes + i];
            worst = std::max(worst, std::fabs(d.y_at(t, i) - pred));
        }
    return worst;
}

}  // namespace

TEST_CASE("model tag names round trip") {
    for (ModelTag t : {ModelTag::gaussian, ModelTag::ultimatum, ModelTag::kuramoto})
        CHECK(model_tag_from(model_tag_name(t)) == t);
    CHECK_THROWS_AS(model_tag_from("sandpile"), parameter_error);
}

TEST_CASE("payoff_pair worked examples") {
    {
        auto [pij, pji] = payoff_pair(0.5, 0.2, 0.3, 0.4);
        CHECK(pij == doctest::Approx(0.8).epsilon(1e-12));
        CHECK(pji == doctest::Approx(1.2).epsilon(1e-12));
    }
    {
        // offer equal to threshold is accepted
        auto [pij, pji] = payoff_pair(0.3, 0.0, 0.2, 0.3);
        CHECK(pij == doctest::Approx(0.9).epsilon(1e-12));
        CHECK(pji == doctest::Approx(1.1).epsilon(1e-12));
    }
    {
        // both offers rejected
        auto [pij, pji] = payoff_pair(0.1, 0.5, 0.2, 0.4);
        CHECK(pij == 0.0);
        CHECK(pji == 0.0);
    }
}

TEST_CASE("payoff_pair conserves the pie when both sides accept") {
    Rng r(555ULL);
    for (int trial = 0; trial < 500; ++trial) {
        double ri = r.uniform01(), rj = r.uniform01();
        double pi = rj + (1.0 - rj) * r.uniform01();  // p_i >= r_j
        double pj = ri + (1.0 - ri) * r.uniform01();  // p_j >= r_i
        auto [pij, pji] = payoff_pair(pi, ri, pj, rj);
        CHECK(pij + pji == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(pij >= 0.0);
        CHECK(pji >= 0.0);
    }
}

TEST_CASE("payoff_pair validates inputs") {
    CHECK_THROWS_AS(payoff_pair(1.2, 0.0, 0.0, 0.0), parameter_error);
    CHECK_THROWS_AS(payoff_pair(0.0, -0.1, 0.0, 0.0), parameter_error);
    CHECK_THROWS_AS(payoff_pair(0.0, 0.0, std::nan(""), 0.0), parameter_error);
}

TEST_CASE("fermi_prob values, symmetry, clamping") {
    CHECK(fermi_prob(3.7, 3.7, 5) == 0.5);
    CHECK(fermi_prob(100.0, 0.0, 10) == doctest::Approx(1.0 / (1.0 + std::exp(10.0))).epsilon(1e-12));
    CHECK(fermi_prob(0.0, 100.0, 10) == doctest::Approx(1.0 / (1.0 + std::exp(-10.0))).epsilon(1e-12));

    Rng r(556ULL);
    for (int trial = 0; trial < 200; ++trial) {
        double a = r.uniform(-50.0, 50.0), b = r.uniform(-50.0, 50.0);
        double f = fermi_prob(a, b, 7);
        CHECK(f + fermi_prob(b, a, 7) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(f > 0.0);
        CHECK(f < 1.0);
    }

    double lo = fermi_prob(1e308, -1e308, 2);
    double hi = fermi_prob(-1e308, 1e308, 2);
    CHECK(std::isfinite(lo));
    CHECK(std::isfinite(hi));
    CHECK(lo >= 0.0);
    CHECK(hi <= 1.0);
    CHECK(lo < 1e-300);
    CHECK(hi > 1.0 - 1e-12);

    CHECK_THROWS_AS(fermi_prob(0.0, 0.0, 0), parameter_error);
}

TEST_CASE("responses equal network-weighted interactions plus noise, all models") {
    AdjacencyMatrix a = er_generate(12, 0.4, 808ULL);
    NoiseSpec noise{1.0, 909ULL};

    DynamicsDataset g = simulate_gaussian(a, 7, noise, 101ULL);
    CHECK(self_consistency_gap(g, a) == 0.0);

    DynamicsDataset u = simulate_ultimatum(a, 7, noise, 102ULL);
    CHECK(self_consistency_gap(u, a) == 0.0);

    KuramotoConfig kc;
    kc.init_phase_seed = 103ULL;
    DynamicsDataset k = simulate_kuramoto(a, 7, kc, noise);
    CHECK(self_consistency_gap(k, a) == 0.0);

    for (const DynamicsDataset* d : {&g, &u, &k}) {
        CHECK(d->n_nodes == 12);
        CHECK(d->n_rounds == 7);
        REQUIRE(d->psi.size() == 7);
        REQUIRE(d->y.size() == 7u * 12u);
        REQUIRE(d->eps.size() == 7u * 12u);
        for (int t = 0; t < 7; ++t)
            for (int i = 0; i < 12; ++i) CHECK(d->psi_at(t, i, i) == 0.0);
    }
}

TEST_CASE("empty network leaves only noise") {
    AdjacencyMatrix a(6, Directedness::undirected);
    NoiseSpec noise{2.0, 44ULL};
    DynamicsDataset g = simulate_gaussian(a, 5, noise, 45ULL);
    for (std::size_t idx = 0; idx < g.y.size(); ++idx) CHECK(g.y[idx] == g.eps[idx]);

    KuramotoConfig kc;
    kc.init_phase_seed = 46ULL;
    DynamicsDataset k = simulate_kuramoto(a, 5, kc, noise);
    for (std::size_t idx = 0; idx < k.y.size(); ++idx) CHECK(k.y[idx] == k.eps[idx]);
}

TEST_CASE("gaussian single edge, noiseless") {
    AdjacencyMatrix a(4, Directedness::undirected);
    a.set(1, 2, 1);
    DynamicsDataset d = simulate_gaussian(a, 9, NoiseSpec{0.0, 0ULL}, 777ULL);
    for (int t = 0; t < 9; ++t) {
        CHECK(d.y_at(t, 1) == d.psi_at(t, 1, 2));
        CHECK(d.y_at(t, 2) == d.psi_at(t, 2, 1));
        CHECK(d.y_at(t, 0) == 0.0);
        CHECK(d.y_at(t, 3) == 0.0);
    }
}

TEST_CASE("gaussian interaction moments per pair") {
    AdjacencyMatrix a(3, Directedness::undirected);
    const int r = 20000;
    DynamicsDataset d = simulate_gaussian(a, r, NoiseSpec{0.0, 0ULL}, 31ULL);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            double sum = 0.0, sumsq = 0.0;
            for (int t = 0; t < r; ++t) {
                double v = d.psi_at(t, i, j);
                sum += v;
                sumsq += v * v;
            }
            double mean = sum / r;
            double var = sumsq / r - mean * mean;
            // pair mean is a frozen draw from [-1,1], pair variance from [1,3]
            CHECK(mean > -1.1);
            CHECK(mean < 1.1);
            CHECK(var > 0.85);
            CHECK(var < 3.4);
        }
}

TEST_CASE("kuramoto interactions are antisymmetric, responses conserve") {
    AdjacencyMatrix a = er_generate(10, 0.5, 606ULL);
    KuramotoConfig kc;
    kc.coupling = 3.0;
    kc.init_phase_seed = 607ULL;
    DynamicsDataset d = simulate_kuramoto(a, 20, kc, NoiseSpec{0.0, 0ULL});
    for (int t = 0; t < 20; ++t) {
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j)
                CHECK(std::fabs(d.psi_at(t, i, j) + d.psi_at(t, j, i)) < 1e-12);
        double col_sum = 0.0;
        for (int i = 0; i < 10; ++i) col_sum += d.y_at(t, i);
        CHECK(std::fabs(col_sum) < 1e-9);
    }
}

TEST_CASE("ultimatum payoffs bounded, two-node identity") {
    AdjacencyMatrix a = er_generate(8, 0.5, 71ULL);
    DynamicsDataset d = simulate_ultimatum(a, 15, NoiseSpec{1.0, 72ULL}, 73ULL);
    for (int t = 0; t < 15; ++t)
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                CHECK(d.psi_at(t, i, j) >= 0.0);
                CHECK(d.psi_at(t, i, j) <= 2.0);
            }

    AdjacencyMatrix two(2, Directedness::undirected);
    two.set(0, 1, 1);
    DynamicsDataset e = simulate_ultimatum(two, 10, NoiseSpec{0.0, 0ULL}, 74ULL);
    for (int t = 0; t < 10; ++t) {
        CHECK(e.y_at(t, 0) == e.psi_at(t, 0, 1));
        CHECK(e.y_at(t, 1) == e.psi_at(t, 1, 0));
    }
}

TEST_CASE("simulators are deterministic in their seeds") {
    AdjacencyMatrix a = er_generate(9, 0.4, 81ULL);
    NoiseSpec noise{0.5, 82ULL};

    DynamicsDataset g1 = simulate_gaussian(a, 6, noise, 83ULL);
    DynamicsDataset g2 = simulate_gaussian(a, 6, noise, 83ULL);
    CHECK(g1.psi == g2.psi);
    CHECK(g1.y == g2.y);
    CHECK(g1.eps == g2.eps);
    DynamicsDataset g3 = simulate_gaussian(a, 6, noise, 84ULL);
    CHECK(g1.y != g3.y);

    DynamicsDataset u1 = simulate_ultimatum(a, 6, noise, 85ULL);
    DynamicsDataset u2 = simulate_ultimatum(a, 6, noise, 85ULL);
    CHECK(u1.psi == u2.psi);
    CHECK(u1.y == u2.y);

    KuramotoConfig kc;
    kc.init_phase_seed = 86ULL;
    DynamicsDataset k1 = simulate_kuramoto(a, 6, kc, noise);
    DynamicsDataset k2 = simulate_kuramoto(a, 6, kc, noise);
    CHECK(k1.psi == k2.psi);
    CHECK(k1.y == k2.y);
    kc.init_phase_seed = 87ULL;
    DynamicsDataset k3 = simulate_kuramoto(a, 6, kc, noise);
    CHECK(k1.y != k3.y);
}

TEST_CASE("simulators validate arguments") {
    AdjacencyMatrix a = er_generate(5, 0.5, 1ULL);
    CHECK_THROWS_AS(simulate_gaussian(a, 0, NoiseSpec{0.0, 0ULL}, 1ULL), parameter_error);
    CHECK_THROWS_AS(simulate_ultimatum(a, -3, NoiseSpec{0.0, 0ULL}, 1ULL), parameter_error);
    CHECK_THROWS_AS(simulate_gaussian(a, 5, NoiseSpec{-1.0, 0ULL}, 1ULL), parameter_error);
    KuramotoConfig bad;
    bad.step = 0.0;
    CHECK_THROWS_AS(simulate_kuramoto(a, 5, bad, NoiseSpec{0.0, 0ULL}), parameter_error);
}

TEST_CASE("build_design extracts rows and drops the self column") {
    AdjacencyMatrix a = er_generate(6, 0.5, 21ULL);
    DynamicsDataset d = simulate_gaussian(a, 4, NoiseSpec{1.0, 22ULL}, 23ULL);

    Design des = build_design(d, 2, {0, 2, 3, 5});
    CHECK(des.n_rows == 4);
    CHECK(des.n_cols == 3);
    CHECK(des.col_nodes == std::vector<int>{0, 3, 5});
    REQUIRE(des.x.size() == 12);
    REQUIRE(des.y.size() == 4);
    for (int t = 0; t < 4; ++t) {
        CHECK(des.y[t] == d.y_at(t, 2));
        for (int c = 0; c < 3; ++c)
            CHECK(des.x[static_cast<std::size_t>(t) * 3 + c] == d.psi_at(t, 2, des.col_nodes[c]));
    }

    CHECK_THROWS_AS(build_design(d, 2, {2}), parameter_error);
    CHECK_THROWS_AS(build_design(d, 2, {0, 6}), parameter_error);
    CHECK_THROWS_AS(build_design(d, -1, {0, 1}), parameter_error);
}

TEST_CASE("dataset save/load round trip") {
    AdjacencyMatrix a = er_generate(7, 0.4, 91ULL);
    DynamicsDataset d = simulate_ultimatum(a, 5, NoiseSpec{1.0, 92ULL}, 93ULL);

    fs::path dir = fs::temp_directory_path() /
                   ("palms_dyn_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    save_dataset(d, dir.string());
    DynamicsDataset back = load_dataset(dir.string());

    CHECK(back.n_nodes == d.n_nodes);
    CHECK(back.n_rounds == d.n_rounds);
    CHECK(back.model_tag == d.model_tag);
    CHECK(back.y == d.y);
    REQUIRE(back.psi.size() == d.psi.size());
    for (std::size_t t = 0; t < d.psi.size(); ++t) CHECK(back.psi[t] == d.psi[t]);
    CHECK(back.eps.empty());

    fs::remove_all(dir);
    CHECK_THROWS_AS(load_dataset(dir.string()), data_error);
}
