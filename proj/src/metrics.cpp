#include "palms/metrics.hpp"

#include "palms/errors.hpp"
#include "palms/recon.hpp"

namespace palms {

double mse(const AdjacencyMatrix& truth, const EdgeScoreMatrix& scores) {
    int n = truth.n_nodes();
    if (scores.n_nodes != n) throw parameter_error("mse: dimension mismatch");
    double sum = 0.0;
    long long pairs = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            double d = truth.at(i, j) - scores.score(i, j);
            sum += d * d;
            ++pairs;
        }
    return pairs ? sum / pairs : 0.0;
}

std::optional<double> srnl(const AdjacencyMatrix& truth, const AdjacencyMatrix& estimate) {
    int n = truth.n_nodes();
    if (estimate.n_nodes() != n) throw parameter_error("srnl: dimension mismatch");
    long long absent = 0, hit = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || truth.at(i, j)) continue;
            ++absent;
            if (!estimate.at(i, j)) ++hit;
        }
    if (!absent) return std::nullopt;
    return static_cast<double>(hit) / static_cast<double>(absent);
}

std::optional<double> srel(const AdjacencyMatrix& truth, const AdjacencyMatrix& estimate) {
    int n = truth.n_nodes();
    if (estimate.n_nodes() != n) throw parameter_error("srel: dimension mismatch");
    long long present = 0, hit = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !truth.at(i, j)) continue;
            ++present;
            if (estimate.at(i, j)) ++hit;
        }
    if (!present) return std::nullopt;
    return static_cast<double>(hit) / static_cast<double>(present);
}

MetricsReport evaluate_scores(const AdjacencyMatrix& truth, const EdgeScoreMatrix& scores,
                              double tau) {
    MetricsReport rep;
    rep.mse = mse(truth, scores);
    AdjacencyMatrix bin = binarize(scores, tau);
    rep.srnl = srnl(truth, bin);
    rep.srel = srel(truth, bin);
    return rep;
}

}  // namespace palms
