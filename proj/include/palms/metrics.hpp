#pragma once

#include <optional>
#include <string>

#include "palms/graph.hpp"

namespace palms {

struct MetricsReport {
    double mse = 0.0;
    std::optional<double> srnl;  // absent when truth has no non-links
    std::optional<double> srel;  // absent when truth has no links
    double cpu_time_s = 0.0;
    std::string method_tag;
};

// mean squared difference over off-diagonal ordered entries; binary truth
// against continuous pre-binarization scores
double mse(const AdjacencyMatrix& truth, const EdgeScoreMatrix& scores);

std::optional<double> srnl(const AdjacencyMatrix& truth, const AdjacencyMatrix& estimate);
std::optional<double> srel(const AdjacencyMatrix& truth, const AdjacencyMatrix& estimate);

MetricsReport evaluate_scores(const AdjacencyMatrix& truth, const EdgeScoreMatrix& scores,
                              double tau);

}  // namespace palms
