#include "palms/dynamics.hpp"

#include <cmath>
#include <filesystem>

#include "palms/errors.hpp"
#include "palms/io.hpp"
#include "palms/rng.hpp"

namespace palms {

std::string model_tag_name(ModelTag t) {
    switch (t) {
        case ModelTag::gaussian: return "gaussian";
        case ModelTag::ultimatum: return "ultimatum";
        case ModelTag::kuramoto: return "kuramoto";
    }
    return "gaussian";
}

ModelTag model_tag_from(const std::string& name) {
    if (name == "gaussian") return ModelTag::gaussian;
    if (name == "ultimatum") return ModelTag::ultimatum;
    if (name == "kuramoto") return ModelTag::kuramoto;
    throw parameter_error("unknown model tag: " + name);
}

std::pair<double, double> payoff_pair(double p_i, double r_i, double p_j, double r_j) {
    for (double v : {p_i, r_i, p_j, r_j})
        if (!(v >= 0.0 && v <= 1.0)) throw parameter_error("payoff_pair: inputs must lie in [0,1]");
    bool i_accepted = p_i >= r_j;  // j accepts i's offer (boundary accepts)
    bool j_accepted = p_j >= r_i;  // i accepts j's offer
    double pij = 0.0, pji = 0.0;
    if (i_accepted) {
        pij += 1.0 - p_i;
        pji += p_i;
    }
    if (j_accepted) {
        pij += p_j;
        pji += 1.0 - p_j;
    }
    return {pij, pji};
}

double fermi_prob(double y_i, double y_j, int n_nodes) {
    if (n_nodes < 1) throw parameter_error("fermi_prob: n_nodes must be >= 1");
    double arg = (y_i - y_j) / n_nodes;
    if (arg > 700.0) arg = 700.0;
    if (arg < -700.0) arg = -700.0;
    return 1.0 / (1.0 + std::exp(arg));
}

namespace {

DynamicsDataset make_empty(const AdjacencyMatrix& a, int n_rounds, ModelTag tag,
                           const NoiseSpec& noise) {
    if (n_rounds < 1) throw parameter_error("simulate: n_rounds must be >= 1");
    if (!(noise.std_dev >= 0.0)) throw parameter_error("simulate: noise std must be >= 0");
    DynamicsDataset d;
    d.n_nodes = a.n_nodes();
    d.n_rounds = n_rounds;
    d.model_tag = tag;
    d.psi.assign(n_rounds, std::vector<double>(static_cast<std::size_t>(d.n_nodes) * d.n_nodes, 0.0));
    d.y.assign(static_cast<std::size_t>(n_rounds) * d.n_nodes, 0.0);
    d.eps.assign(static_cast<std::size_t>(n_rounds) * d.n_nodes, 0.0);
    return d;
}

// Y^t = (A o Psi^t) 1 + eps^t, the exact arithmetic path the invariant checks
void fill_round_response(DynamicsDataset& d, const AdjacencyMatrix& a, int t, Rng& noise_rng,
                         double noise_std) {
    int n = d.n_nodes;
    for (int i = 0; i < n; ++i) {
        double e = noise_std > 0.0 ? noise_rng.normal(0.0, noise_std) : 0.0;
        double sum = 0.0;
        for (int j = 0; j < n; ++j)
            if (a.at(i, j)) sum += d.psi[t][static_cast<std::size_t>(i) * n + j];
        d.eps[static_cast<std::size_t>(t) * n + i] = e;
        d.y[static_cast<std::size_t>(t) * n + i] = sum + e;
    }
}

}  // namespace

DynamicsDataset simulate_gaussian(const AdjacencyMatrix& a, int n_rounds, const NoiseSpec& noise,
                                  std::uint64_t seed) {
    DynamicsDataset d = make_empty(a, n_rounds, ModelTag::gaussian, noise);
    int n = d.n_nodes;
    Rng model_rng(seed);
    Rng noise_rng(noise.seed);

    std::vector<double> mu(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> sd(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            mu[static_cast<std::size_t>(i) * n + j] = model_rng.uniform(-1.0, 1.0);
            sd[static_cast<std::size_t>(i) * n + j] = std::sqrt(model_rng.uniform(1.0, 3.0));
        }

    for (int t = 0; t < n_rounds; ++t) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                std::size_t idx = static_cast<std::size_t>(i) * n + j;
                d.psi[t][idx] = model_rng.normal(mu[idx], sd[idx]);
            }
        fill_round_response(d, a, t, noise_rng, noise.std_dev);
    }
    return d;
}

DynamicsDataset simulate_ultimatum(const AdjacencyMatrix& a, int n_rounds, const NoiseSpec& noise,
                                   std::uint64_t seed) {
    DynamicsDataset d = make_empty(a, n_rounds, ModelTag::ultimatum, noise);
    int n = d.n_nodes;
    Rng model_rng(seed);
    Rng noise_rng(noise.seed);

    StrategyProfile s;
    s.offers.resize(n);
    s.thresholds.resize(n);
    for (int i = 0; i < n; ++i) {
        s.offers[i] = model_rng.uniform01();
        s.thresholds[i] = model_rng.uniform01();
    }

    std::vector<std::vector<int>> nbrs(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && a.at(i, j)) nbrs[i].push_back(j);

    for (int t = 0; t < n_rounds; ++t) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                auto [pij, pji] = payoff_pair(s.offers[i], s.thresholds[i], s.offers[j], s.thresholds[j]);
                d.psi[t][static_cast<std::size_t>(i) * n + j] = pij;
                d.psi[t][static_cast<std::size_t>(j) * n + i] = pji;
            }
        fill_round_response(d, a, t, noise_rng, noise.std_dev);

        // synchronous imitation: all decisions from round-t incomes, then applied
        StrategyProfile next = s;
        for (int i = 0; i < n; ++i) {
            if (nbrs[i].empty()) continue;  // isolated nodes keep their strategy
            int j = nbrs[i][model_rng.below(nbrs[i].size())];
            double prob = fermi_prob(d.y_at(t, i), d.y_at(t, j), n);
            if (model_rng.uniform01() < prob) {
                next.offers[i] = s.offers[j];
                next.thresholds[i] = s.thresholds[j];
            }
        }
        s = next;
    }
    return d;
}

DynamicsDataset simulate_kuramoto(const AdjacencyMatrix& a, int n_rounds, const KuramotoConfig& cfg,
                                  const NoiseSpec& noise) {
    if (!(cfg.step > 0.0)) throw parameter_error("simulate_kuramoto: step must be > 0");
    DynamicsDataset d = make_empty(a, n_rounds, ModelTag::kuramoto, noise);
    int n = d.n_nodes;
    Rng phase_rng(cfg.init_phase_seed);
    Rng noise_rng(noise.seed);

    std::vector<double> theta(n);
    for (int i = 0; i < n; ++i) theta[i] = phase_rng.uniform(0.0, 6.283185307179586476925286766559);

    for (int t = 0; t < n_rounds; ++t) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                d.psi[t][static_cast<std::size_t>(i) * n + j] =
                    cfg.coupling * std::sin(theta[j] - theta[i]);
            }
        fill_round_response(d, a, t, noise_rng, noise.std_dev);

        // Euler step on the noiseless drift
        std::vector<double> drift(n, 0.0);
        for (int i = 0; i < n; ++i) {
            double sum = 0.0;
            for (int j = 0; j < n; ++j)
                if (a.at(i, j)) sum += d.psi[t][static_cast<std::size_t>(i) * n + j];
            drift[i] = sum;
        }
        for (int i = 0; i < n; ++i) theta[i] += cfg.step * drift[i];
    }
    return d;
}

Design build_design(const DynamicsDataset& d, int node, const std::vector<int>& columns) {
    if (node < 0 || node >= d.n_nodes) throw parameter_error("build_design: node out of range");
    Design out;
    for (int c : columns) {
        if (c < 0 || c >= d.n_nodes) throw parameter_error("build_design: column out of range");
        if (c != node) out.col_nodes.push_back(c);
    }
    if (out.col_nodes.empty())
        throw parameter_error("build_design: no columns left after excluding the node itself");
    out.n_rows = d.n_rounds;
    out.n_cols = static_cast<int>(out.col_nodes.size());
    out.x.resize(static_cast<std::size_t>(out.n_rows) * out.n_cols);
    out.y.resize(out.n_rows);
    for (int t = 0; t < out.n_rows; ++t) {
        for (int c = 0; c < out.n_cols; ++c)
            out.x[static_cast<std::size_t>(t) * out.n_cols + c] = d.psi_at(t, node, out.col_nodes[c]);
        out.y[t] = d.y_at(t, node);
    }
    return out;
}

void save_dataset(const DynamicsDataset& d, const std::string& dir) {
    std::filesystem::create_directories(dir);
    KvPairs meta{{"n", std::to_string(d.n_nodes)},
                 {"r", std::to_string(d.n_rounds)},
                 {"model", model_tag_name(d.model_tag)}};
    kv_write(dir + "/meta", meta);
    for (int t = 0; t < d.n_rounds; ++t)
        write_csv_matrix(dir + "/psi_" + std::to_string(t + 1) + ".csv", d.psi[t].data(), d.n_nodes,
                         d.n_nodes);
    // eps is simulation bookkeeping, not part of the observable dataset
    write_csv_matrix(dir + "/y.csv", d.y.data(), d.n_rounds, d.n_nodes);
}

DynamicsDataset load_dataset(const std::string& dir) {
    KvPairs meta = kv_read(dir + "/meta");
    const std::string* n_s = kv_find(meta, "n");
    const std::string* r_s = kv_find(meta, "r");
    const std::string* model_s = kv_find(meta, "model");
    if (!n_s || !r_s || !model_s) throw data_error("load_dataset: meta missing n/r/model in " + dir);

    DynamicsDataset d;
    d.n_nodes = std::stoi(*n_s);
    d.n_rounds = std::stoi(*r_s);
    d.model_tag = model_tag_from(*model_s);
    if (d.n_nodes < 1 || d.n_rounds < 1) throw data_error("load_dataset: bad meta shape in " + dir);

    d.psi.reserve(d.n_rounds);
    for (int t = 0; t < d.n_rounds; ++t) {
        CsvMatrix m = read_csv_matrix(dir + "/psi_" + std::to_string(t + 1) + ".csv");
        if (m.rows != d.n_nodes || m.cols != d.n_nodes)
            throw data_error("load_dataset: psi_" + std::to_string(t + 1) + " shape mismatch in " + dir);
        d.psi.push_back(std::move(m.data));
    }
    CsvMatrix ym = read_csv_matrix(dir + "/y.csv");
    if (ym.rows != d.n_rounds || ym.cols != d.n_nodes)
        throw data_error("load_dataset: y.csv shape mismatch in " + dir);
    d.y = std::move(ym.data);
    return d;
}

}  // namespace palms
