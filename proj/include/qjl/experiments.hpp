#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qjl/rng.hpp"

namespace qjl {

/// Any config schema violation; the CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One experiment run request. `workers` and the output location never
/// influence results; they are excluded from the embedded config and its
/// hash so that reruns produce byte-identical JSON.
struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 1;
    int workers = 0;  // 0 = hardware concurrency
    std::string out_dir;
    std::vector<std::string> formats = {"json", "csv"};
    nlohmann::json params = nlohmann::json::object();
};

struct ExperimentResult {
    nlohmann::json document;
    std::string csv;
    bool passed = true;
};

const std::vector<std::string>& experiment_names();

/// Desk-scale defaults for one subcommand.
nlohmann::json default_params(const std::string& experiment);

/// Strict parse of a config file object; unknown keys are rejected.
/// `cli_experiment` (when non-empty) must agree with any "experiment" key.
ExperimentConfig parse_config(const nlohmann::json& j, const std::string& cli_experiment = "");

/// Validates, dispatches and runs. Throws ConfigError on bad parameters.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes <experiment>-<seed>.json / .csv into cfg.out_dir (creating it) for
/// the formats requested; returns the paths written.
std::vector<std::string> write_result_files(const ExperimentConfig& cfg, const ExperimentResult& res);

/// ||Pi_1 U e_1|| for one fresh Haar unitary. route: "householder" (factored
/// Haar applier), "ginibre" (dense QR sampler) or "vector" (Haar unit vector
/// via normalized Gaussians; equal in distribution by unitary invariance).
double haar_block_norm_sample(std::size_t d1, std::size_t d2, const std::string& route,
                              RngStream& rng);

/// ||Pi_1 C e_1|| for one fresh local random circuit of s gates on q qubits.
double circuit_block_norm_sample(std::size_t q, std::size_t d2, std::size_t s, RngStream& rng);

}  // namespace qjl
