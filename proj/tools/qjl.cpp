#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qjl/experiments.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<int> workers;
    std::optional<std::string> out_dir;
};

// Subcommand-specific name of the primary trial-count knob that --trials maps to.
std::optional<std::string> trials_key(const std::string& experiment) {
    if (experiment == "chi-tails" || experiment == "haar-tails" || experiment == "design-tails" ||
        experiment == "moments")
        return "trials";
    if (experiment == "jl-demo") return "unitaries";
    if (experiment == "block-dist") return "samples";
    if (experiment == "pir") return "runs";
    return std::nullopt;  // params, design-quality
}

int run(const std::string& experiment, const CommonFlags& flags) {
    nlohmann::json config_json = nlohmann::json::object();
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) {
            std::cerr << "error: cannot open config file " << flags.config_path << "\n";
            return 2;
        }
        try {
            in >> config_json;
        } catch (const nlohmann::json::parse_error& e) {
            std::cerr << "error: config parse failure: " << e.what() << "\n";
            return 2;
        }
    }

    try {
        qjl::ExperimentConfig cfg = qjl::parse_config(config_json, experiment);
        if (flags.seed) cfg.seed = *flags.seed;
        if (flags.workers) cfg.workers = *flags.workers;
        if (flags.out_dir) cfg.out_dir = *flags.out_dir;
        if (flags.trials) {
            const auto key = trials_key(experiment);
            if (!key) {
                std::cerr << "error: experiment \"" << experiment << "\" has no --trials knob\n";
                return 2;
            }
            cfg.params[*key] = *flags.trials;
        }

        const qjl::ExperimentResult res = qjl::run_experiment(cfg);
        for (const std::string& path : qjl::write_result_files(cfg, res)) {
            std::cerr << "wrote " << path << "\n";
        }
        std::cout << (res.passed ? "PASS" : "FAIL") << " " << experiment << " seed=" << cfg.seed
                  << "\n";
        return res.passed ? 0 : 1;
    } catch (const qjl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Experiment runner for block-projection dimensionality reduction and its"
                 " membership-query protocol"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string chosen;
    for (const std::string& name : qjl::experiment_names()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", flags.config_path, "JSON config file");
        sub->add_option("--seed", flags.seed, "master seed override");
        sub->add_option("--trials", flags.trials, "trial-count override");
        sub->add_option("--workers", flags.workers, "worker thread count (0 = all cores)");
        sub->add_option("--out", flags.out_dir, "output directory (default $QJL_OUT_DIR or .)");
        sub->callback([&chosen, name] { chosen = name; });
    }

    CLI11_PARSE(app, argc, argv);
    return run(chosen, flags);
}
