#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "palms/dynamics.hpp"

namespace palms {

enum class Penalty { lasso, signal_lasso, alms };

std::string penalty_name(Penalty p);
Penalty penalty_from(const std::string& name);

struct SolverConfig {
    Penalty penalty = Penalty::alms;
    double lambda = 0.0;        // fixed lambda when auto_lambda is off
    double lambda2 = 0.0;       // Signal Lasso second penalty
    long max_iters = 10000;
    double tol = 1e-7;
    double weight_gamma = 1.0;
    bool auto_lambda = true;    // per-regression CV/BIC selection over the grid below
    double grid_lo = -4.0;      // log10 bounds of the selection grid, relative to
    double grid_hi = 0.0;       // lambda_max of each regression
    int grid_points = 8;
};

struct WeightVector {
    std::vector<double> weights;  // per coefficient, clamped to [1e-4, 1e8]
};

struct BlockEstimate {
    std::vector<double> coefficients;
    std::vector<double> residuals;    // response - design * coefficients
    long iterations_used = 0;
    bool converged = false;
    std::vector<int> dropped;         // zero-norm columns fixed at 0
};

double soft_threshold(double z, double t);

// Exact global minimizer of f(b) = 0.5*s*b^2 - rho*b + lambda*w*min(|b|,|b-1|).
// Two arm candidates; ties toward the candidate nearer {0,1}, then toward 0.
double md_coordinate_update(double rho, double col_sq_norm, double w, double lambda);

// Exact minimizer of 0.5*s*b^2 - rho*b + l1*|b| + l2*|b-1| (Signal Lasso rule)
double sl_coordinate_update(double rho, double col_sq_norm, double l1, double l2);

BlockEstimate solve_block(const Design& design, const SolverConfig& cfg,
                          const WeightVector& weights);

// least squares when rows >= cols, ridge (1e-3 * trace(X^T X)/p) otherwise
std::vector<double> pilot_estimate(const Design& design);

WeightVector adaptive_weights(const std::vector<double>& initial, double gamma);

// lambda_max * logspace(lo, hi, points) with lambda_max = max_j |x_j^T y|
std::vector<double> lambda_grid(const Design& design, double lo, double hi, int points);

// lambda_grid with the default bounds: lambda_max * logspace(-4, 0, 8)
std::vector<double> default_lambda_grid(const Design& design);

// Round-wise 5-fold CV (fold = t mod 5), ties to the smaller lambda;
// BIC fallback when fewer than 5 rounds.
double select_lambda(const Design& design, const SolverConfig& cfg,
                     const std::vector<double>& grid);

double block_objective(const Design& design, const SolverConfig& cfg,
                       const WeightVector& weights, const std::vector<double>& beta);

}  // namespace palms
