#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "palms/errors.hpp"
#include "palms/run.hpp"

namespace {

// every RunConfig key is also a flag; flags override the config file
const std::vector<std::string> kKeys = {
    "out",    "seed",    "workers",  "dgp",    "n",       "r",         "density",
    "noise_std", "coupling", "step", "dataset", "method", "k",         "m",
    "tau",    "lambda",  "lambda2",  "grid_lo", "grid_hi", "grid_points",
    "gamma",  "tol",     "max_iters", "undirected",
    "truth",  "estimate", "suite",   "reps",   "data_dir"};

struct SubState {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;
};

void add_common(CLI::App* sub, SubState& st) {
    sub->add_option("--config", st.config_path, "key=value config file");
    for (const auto& key : kKeys) {
        sub->add_option_function<std::string>(
            "--" + key, [&st, key](const std::string& v) { st.overrides.emplace_back(key, v); });
    }
}

palms::RunConfig build_config(const SubState& st) {
    palms::RunConfig cfg;
    if (!st.config_path.empty()) palms::load_config_file(cfg, st.config_path);
    for (const auto& [k, v] : st.overrides) palms::apply_kv(cfg, k, v);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"latent network reconstruction from nodal dynamics"};
    app.require_subcommand(1);

    SubState gen_st, rec_st, eval_st, bench_st;
    CLI::App* gen = app.add_subcommand("generate", "simulate dynamics on a random network");
    CLI::App* rec = app.add_subcommand("reconstruct", "estimate the network from a dataset");
    CLI::App* eval = app.add_subcommand("evaluate", "score an estimate against a truth network");
    CLI::App* bench = app.add_subcommand("bench", "run a comparison suite");
    add_common(gen, gen_st);
    add_common(rec, rec_st);
    add_common(eval, eval_st);
    add_common(bench, bench_st);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            palms::cmd_generate(build_config(gen_st));
        } else if (rec->parsed()) {
            palms::cmd_reconstruct(build_config(rec_st));
        } else if (eval->parsed()) {
            palms::cmd_evaluate(build_config(eval_st));
        } else if (bench->parsed()) {
            palms::cmd_bench(build_config(bench_st));
        }
    } catch (const palms::parameter_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const palms::data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const palms::solver_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
