#include "palms/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "palms/errors.hpp"

namespace palms {

std::string penalty_name(Penalty p) {
    switch (p) {
        case Penalty::lasso: return "lasso";
        case Penalty::signal_lasso: return "signal_lasso";
        case Penalty::alms: return "alms";
    }
    return "alms";
}

Penalty penalty_from(const std::string& name) {
    if (name == "lasso") return Penalty::lasso;
    if (name == "signal_lasso") return Penalty::signal_lasso;
    if (name == "alms") return Penalty::alms;
    throw parameter_error("unknown penalty: " + name);
}

double soft_threshold(double z, double t) {
    if (t < 0.0) throw parameter_error("soft_threshold: t must be >= 0");
    if (z > t) return z - t;
    if (z < -t) return z + t;
    return 0.0;
}

namespace {

double dist_to_signal(double b) { return std::min(std::abs(b), std::abs(b - 1.0)); }

// shared tie policy: lower objective wins; ties toward the candidate nearer
// {0,1}; toward the smaller value if still tied
double pick_candidate(double b0, double f0, double b1, double f1) {
    if (f0 < f1) return b0;
    if (f1 < f0) return b1;
    double d0 = dist_to_signal(b0), d1 = dist_to_signal(b1);
    if (d0 < d1) return b0;
    if (d1 < d0) return b1;
    return std::min(b0, b1);
}

}  // namespace

double md_coordinate_update(double rho, double col_sq_norm, double w, double lambda) {
    if (!(col_sq_norm > 0.0)) throw solver_error("md_coordinate_update: degenerate column");
    double t = lambda * w;
    double b0 = soft_threshold(rho, t) / col_sq_norm;
    double b1 = 1.0 + soft_threshold(rho - col_sq_norm, t) / col_sq_norm;
    auto f = [&](double b) {
        return 0.5 * col_sq_norm * b * b - rho * b + t * dist_to_signal(b);
    };
    return pick_candidate(b0, f(b0), b1, f(b1));
}

double sl_coordinate_update(double rho, double col_sq_norm, double l1, double l2) {
    if (!(col_sq_norm > 0.0)) throw solver_error("sl_coordinate_update: degenerate column");
    auto f = [&](double b) {
        return 0.5 * col_sq_norm * b * b - rho * b + l1 * std::abs(b) + l2 * std::abs(b - 1.0);
    };
    double best_b = 0.0;
    double best_f = f(0.0);
    auto consider = [&](double b) {
        double fb = f(b);
        double picked = pick_candidate(best_b, best_f, b, fb);
        if (picked == b) {
            best_b = b;
            best_f = fb;
        }
    };
    consider(1.0);
    double lo = (rho + l1 + l2) / col_sq_norm;  // piece b < 0
    if (lo < 0.0) consider(lo);
    double mid = (rho - l1 + l2) / col_sq_norm;  // piece 0 < b < 1
    if (mid > 0.0 && mid < 1.0) consider(mid);
    double hi = (rho - l1 - l2) / col_sq_norm;  // piece b > 1
    if (hi > 1.0) consider(hi);
    return best_b;
}

BlockEstimate solve_block(const Design& design, const SolverConfig& cfg,
                          const WeightVector& weights) {
    const int r = design.n_rows, p = design.n_cols;
    if (p < 1) throw parameter_error("solve_block: need at least one column");
    if (!(cfg.tol > 0.0)) throw parameter_error("solve_block: tol must be > 0");
    if (cfg.lambda < 0.0 || cfg.lambda2 < 0.0)
        throw parameter_error("solve_block: lambda values must be >= 0");
    for (double v : design.x)
        if (!std::isfinite(v)) throw data_error("solve_block: non-finite design entry");
    for (double v : design.y)
        if (!std::isfinite(v)) throw data_error("solve_block: non-finite response entry");
    if (cfg.penalty == Penalty::alms && !weights.weights.empty() &&
        static_cast<int>(weights.weights.size()) != p)
        throw parameter_error("solve_block: weight vector length mismatch");

    BlockEstimate est;
    est.coefficients.assign(p, 0.0);
    std::vector<double> s(p, 0.0);
    for (int t = 0; t < r; ++t)
        for (int j = 0; j < p; ++j) {
            double v = design.x[static_cast<std::size_t>(t) * p + j];
            s[j] += v * v;
        }
    for (int j = 0; j < p; ++j)
        if (s[j] == 0.0) est.dropped.push_back(j);

    std::vector<double> e = design.y;  // running residual at beta = 0
    double w_default = 1.0;
    const std::vector<double>& w = weights.weights;

    long sweep = 0;
    for (; sweep < cfg.max_iters; ++sweep) {
        double max_delta = 0.0;
        for (int j = 0; j < p; ++j) {
            if (s[j] == 0.0) continue;
            double bj = est.coefficients[j];
            double rho = s[j] * bj;
            for (int t = 0; t < r; ++t)
                rho += design.x[static_cast<std::size_t>(t) * p + j] * e[t];
            double bnew;
            switch (cfg.penalty) {
                case Penalty::lasso:
                    bnew = soft_threshold(rho, cfg.lambda) / s[j];
                    break;
                case Penalty::signal_lasso:
                    bnew = sl_coordinate_update(rho, s[j], cfg.lambda, cfg.lambda2);
                    break;
                case Penalty::alms:
                default:
                    bnew = md_coordinate_update(rho, s[j], w.empty() ? w_default : w[j], cfg.lambda);
                    break;
            }
            if (bnew != bj) {
                double d = bnew - bj;
                for (int t = 0; t < r; ++t)
                    e[t] -= design.x[static_cast<std::size_t>(t) * p + j] * d;
                est.coefficients[j] = bnew;
                max_delta = std::max(max_delta, std::abs(d));
            }
        }
        if (max_delta < cfg.tol) {
            est.converged = true;
            ++sweep;
            break;
        }
    }
    est.iterations_used = sweep;

    est.residuals.assign(r, 0.0);
    for (int t = 0; t < r; ++t) {
        double pred = 0.0;
        for (int j = 0; j < p; ++j)
            pred += design.x[static_cast<std::size_t>(t) * p + j] * est.coefficients[j];
        est.residuals[t] = design.y[t] - pred;
    }
    return est;
}

std::vector<double> pilot_estimate(const Design& design) {
    const int r = design.n_rows, p = design.n_cols;
    using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMat> X(design.x.data(), r, p);
    Eigen::Map<const Eigen::VectorXd> y(design.y.data(), r);

    // all-zero design (a node whose interactions never pay off): both
    // factorizations divide by vanishing pivots, so answer zeros directly
    if (X.cwiseAbs().maxCoeff() == 0.0) return std::vector<double>(p, 0.0);

    Eigen::VectorXd beta;
    if (r >= p) {
        beta = X.colPivHouseholderQr().solve(y);
    } else {
        Eigen::MatrixXd xtx = X.transpose() * X;
        double c = 1e-3 * xtx.trace() / p;
        xtx.diagonal().array() += c;
        beta = xtx.ldlt().solve(X.transpose() * y);
    }
    return std::vector<double>(beta.data(), beta.data() + p);
}

WeightVector adaptive_weights(const std::vector<double>& initial, double gamma) {
    if (!(gamma > 0.0)) throw parameter_error("adaptive_weights: gamma must be > 0");
    WeightVector wv;
    wv.weights.reserve(initial.size());
    for (double b : initial) {
        if (!std::isfinite(b)) throw data_error("adaptive_weights: non-finite pilot entry");
        double w = 1.0 / std::pow(dist_to_signal(b) + 1e-6, gamma);
        wv.weights.push_back(std::clamp(w, 1e-4, 1e8));
    }
    return wv;
}

std::vector<double> lambda_grid(const Design& design, double lo, double hi, int points) {
    if (points < 1) throw parameter_error("lambda_grid: points must be >= 1");
    if (!(lo <= hi)) throw parameter_error("lambda_grid: lo must be <= hi");
    const int r = design.n_rows, p = design.n_cols;
    double lmax = 0.0;
    for (int j = 0; j < p; ++j) {
        double dot = 0.0;
        for (int t = 0; t < r; ++t)
            dot += design.x[static_cast<std::size_t>(t) * p + j] * design.y[t];
        lmax = std::max(lmax, std::abs(dot));
    }
    if (lmax <= 0.0) lmax = 1.0;
    std::vector<double> grid;
    grid.reserve(points);
    for (int i = 0; i < points; ++i) {
        double e = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
        grid.push_back(lmax * std::pow(10.0, e));
    }
    return grid;
}

std::vector<double> default_lambda_grid(const Design& design) {
    return lambda_grid(design, -4.0, 0.0, 8);
}

namespace {

Design take_rows(const Design& d, const std::vector<int>& rows) {
    Design out;
    out.n_rows = static_cast<int>(rows.size());
    out.n_cols = d.n_cols;
    out.col_nodes = d.col_nodes;
    out.x.resize(static_cast<std::size_t>(out.n_rows) * out.n_cols);
    out.y.resize(out.n_rows);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        int t = rows[k];
        std::copy_n(d.x.begin() + static_cast<std::size_t>(t) * d.n_cols, d.n_cols,
                    out.x.begin() + k * out.n_cols);
        out.y[k] = d.y[t];
    }
    return out;
}

WeightVector weights_for(const Design& d, const SolverConfig& cfg) {
    if (cfg.penalty != Penalty::alms) return {};
    return adaptive_weights(pilot_estimate(d), cfg.weight_gamma);
}

}  // namespace

double select_lambda(const Design& design, const SolverConfig& cfg,
                     const std::vector<double>& grid) {
    if (grid.empty()) throw parameter_error("select_lambda: empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0)) throw parameter_error("select_lambda: grid values must be positive");
        if (i && grid[i] < grid[i - 1]) throw parameter_error("select_lambda: grid must be sorted");
    }
    const int r = design.n_rows;
    SolverConfig fit_cfg = cfg;
    fit_cfg.auto_lambda = false;

    if (r < 5) {
        // BIC fallback: r*log(RSS/r) + log(r)*df, signals at 1 count as active
        WeightVector w = weights_for(design, cfg);
        double best_bic = std::numeric_limits<double>::infinity();
        double best_lambda = grid.front();
        for (double lam : grid) {
            fit_cfg.lambda = lam;
            BlockEstimate est = solve_block(design, fit_cfg, w);
            double rss = 0.0;
            for (double v : est.residuals) rss += v * v;
            int df = 0;
            for (double b : est.coefficients)
                if (b != 0.0) ++df;
            double bic = r * std::log(std::max(rss, 1e-300) / r) + std::log(double(r)) * df;
            if (bic < best_bic) {
                best_bic = bic;
                best_lambda = lam;
            }
        }
        return best_lambda;
    }

    const int n_folds = 5;
    std::vector<Design> train(n_folds), val(n_folds);
    std::vector<WeightVector> fold_w(n_folds);
    for (int f = 0; f < n_folds; ++f) {
        std::vector<int> tr, va;
        for (int t = 0; t < r; ++t) (t % n_folds == f ? va : tr).push_back(t);
        train[f] = take_rows(design, tr);
        val[f] = take_rows(design, va);
        fold_w[f] = weights_for(train[f], cfg);
    }

    double best_err = std::numeric_limits<double>::infinity();
    double best_lambda = grid.front();
    for (double lam : grid) {
        fit_cfg.lambda = lam;
        double err = 0.0;
        for (int f = 0; f < n_folds; ++f) {
            BlockEstimate est = solve_block(train[f], fit_cfg, fold_w[f]);
            const Design& v = val[f];
            for (int t = 0; t < v.n_rows; ++t) {
                double pred = 0.0;
                for (int j = 0; j < v.n_cols; ++j)
                    pred += v.x[static_cast<std::size_t>(t) * v.n_cols + j] * est.coefficients[j];
                double dv = v.y[t] - pred;
                err += dv * dv;
            }
        }
        if (err < best_err) {
            best_err = err;
            best_lambda = lam;
        }
    }
    return best_lambda;
}

double block_objective(const Design& design, const SolverConfig& cfg,
                       const WeightVector& weights, const std::vector<double>& beta) {
    const int r = design.n_rows, p = design.n_cols;
    double loss = 0.0;
    for (int t = 0; t < r; ++t) {
        double pred = 0.0;
        for (int j = 0; j < p; ++j)
            pred += design.x[static_cast<std::size_t>(t) * p + j] * beta[j];
        double d = design.y[t] - pred;
        loss += 0.5 * d * d;
    }
    for (int j = 0; j < p; ++j) {
        switch (cfg.penalty) {
            case Penalty::lasso:
                loss += cfg.lambda * std::abs(beta[j]);
                break;
            case Penalty::signal_lasso:
                loss += cfg.lambda * std::abs(beta[j]) + cfg.lambda2 * std::abs(beta[j] - 1.0);
                break;
            case Penalty::alms: {
                double w = weights.weights.empty() ? 1.0 : weights.weights[j];
                loss += cfg.lambda * w * dist_to_signal(beta[j]);
                break;
            }
        }
    }
    return loss;
}

}  // namespace palms
