#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "qjl/experiments.hpp"
#include "sha1.hpp"

using namespace qjl;
using nlohmann::json;

TEST_CASE("sha1 known vectors") {
    CHECK(sha1_hex("abc") == "a9993e364706816aba3e25717850c26c9cd0d89d");
    CHECK(sha1_hex("") == "da39a3ee5e6b4b0d3255bfef95601890afd80709");
    // git hash-object on a file containing "hello world\n".
    CHECK(git_blob_sha1("hello world\n") == "3b18e512dba79e4c8300dd08aeb37f8e728b8dad");
}

TEST_CASE("config parsing is strict") {
    const json typo = {{"experimnt", "chi-tails"}};
    const json empty = json::object();
    const json unknown_exp = {{"experiment", "nope"}};
    const json chi = {{"experiment", "chi-tails"}};
    const json bad_format = {{"experiment", "chi-tails"}, {"output", {{"format", "xml"}}}};
    CHECK_THROWS_AS((void)parse_config(typo, ""), ConfigError);
    CHECK_THROWS_AS((void)parse_config(empty, ""), ConfigError);  // no experiment
    CHECK_THROWS_AS((void)parse_config(unknown_exp, ""), ConfigError);
    CHECK_THROWS_AS((void)parse_config(chi, "haar-tails"), ConfigError);
    CHECK_THROWS_AS((void)parse_config(bad_format, ""), ConfigError);

    const json good = {{"experiment", "chi-tails"},
                       {"seed", 9},
                       {"workers", 3},
                       {"output", {{"dir", "/tmp/x"}, {"format", "json"}}}};
    const ExperimentConfig cfg = parse_config(good, "");
    CHECK(cfg.seed == 9);
    CHECK(cfg.workers == 3);
    CHECK(cfg.out_dir == "/tmp/x");
    CHECK(cfg.formats == std::vector<std::string>{"json"});
}

TEST_CASE("unknown param keys are rejected") {
    ExperimentConfig cfg;
    cfg.experiment = "chi-tails";
    cfg.params = json{{"nn", 16}};
    CHECK_THROWS_AS((void)run_experiment(cfg), ConfigError);
}

TEST_CASE("chi-tails experiment document") {
    ExperimentConfig cfg;
    cfg.experiment = "chi-tails";
    cfg.seed = 42;
    cfg.workers = 2;
    cfg.params = json{{"trials", 2000}};
    const ExperimentResult res = run_experiment(cfg);
    CHECK(res.passed);
    CHECK(res.document.at("experiment") == "chi-tails");
    CHECK(res.document.at("config").at("seed") == 42);
    CHECK(res.document.at("config_hash").get<std::string>().size() == 40);
    CHECK(res.document.at("bounds").at("sharp").get<double>() ==
          doctest::Approx(0.171756865486086).epsilon(1e-12));
    CHECK(res.document.at("results").at("tail").at("trials") == 2000);
    CHECK(res.csv.find("experiment,seed,n,eps") == 0);
}

TEST_CASE("json output is byte-identical across worker counts") {
    ExperimentConfig one, four;
    one.experiment = four.experiment = "chi-tails";
    one.seed = four.seed = 7;
    one.params = four.params = json{{"trials", 4000}};
    one.workers = 1;
    four.workers = 4;
    const ExperimentResult r1 = run_experiment(one);
    const ExperimentResult r4 = run_experiment(four);
    CHECK(r1.document.dump() == r4.document.dump());
    CHECK(r1.csv == r4.csv);
}

TEST_CASE("haar-tails small run") {
    ExperimentConfig cfg;
    cfg.experiment = "haar-tails";
    cfg.seed = 5;
    cfg.workers = 2;
    cfg.params = json{{"d1", 64}, {"d2", 8}, {"trials", 300}, {"mean_trials", 2000}};
    const ExperimentResult res = run_experiment(cfg);
    CHECK(res.passed);
    const auto& mean = res.document.at("results").at("mean_block_mass");
    CHECK(mean.at("expected").get<double>() == doctest::Approx(0.125));
    CHECK(mean.at("within_3se") == true);
}

TEST_CASE("malformed dimensions surface as errors before any run") {
    ExperimentConfig cfg;
    cfg.experiment = "haar-tails";
    cfg.params = json{{"d1", 100}, {"d2", 7}};
    CHECK_THROWS((void)run_experiment(cfg));
}

TEST_CASE("params experiment hits the headline values") {
    ExperimentConfig cfg;
    cfg.experiment = "params";
    const ExperimentResult res = run_experiment(cfg);
    CHECK(res.passed);
    const auto& main = res.document.at("results").at("main");
    CHECK(main.at("t") == 512);
    CHECK(main.at("m") == 256);
    CHECK(main.at("k_bound_satisfied") == true);
    CHECK(res.document.at("results").at("grid_ok") == true);
}

TEST_CASE("design-quality experiment") {
    ExperimentConfig cfg;
    cfg.experiment = "design-quality";
    cfg.seed = 3;
    cfg.workers = 2;
    cfg.params = json{{"mc_samples", 20000}, {"monomial_mc_samples", 5000}};
    const ExperimentResult res = run_experiment(cfg);
    CHECK(res.passed);
    const auto& r = res.document.at("results");
    CHECK(r.at("pauli_lambda_t1").get<double>() <= 1e-9);
    CHECK(r.at("clifford_group_size") == 24);
    CHECK(r.at("clifford_lambda_t2").get<double>() <= 1e-9);
    CHECK(r.at("random_design").at("squaring_ok") == true);
}

TEST_CASE("block-dist small run") {
    ExperimentConfig cfg;
    cfg.experiment = "block-dist";
    cfg.seed = 8;
    cfg.params = json{{"d1", 256}, {"d2", 32}, {"samples", 4000}, {"threshold", 0.4}};
    const ExperimentResult res = run_experiment(cfg);
    const auto& r = res.document.at("results");
    CHECK(r.at("l1_empirical_vs_uniform").get<double>() >= 0.0);
    CHECK(r.at("noise_floor_uniform_source").get<double>() > 0.0);
    CHECK(res.passed);
}

TEST_CASE("pir experiment micro run") {
    ExperimentConfig cfg;
    cfg.experiment = "pir";
    cfg.seed = 11;
    cfg.workers = 2;
    cfg.params = json{{"m", 64},   {"n", 2},          {"d2", 16},
                      {"c_rep", 8}, {"runs", 40},      {"set_size", 2},
                      {"privacy_probes", {1, 33}},     {"privacy_runs", 512},
                      {"privacy_unitaries", 3},        {"privacy_circuit_size", 128}};
    const ExperimentResult res = run_experiment(cfg);
    const auto& r = res.document.at("results");
    CHECK(r.at("correct_rate_x_in_s").get<double>() > 0.6);
    CHECK(r.at("correct_rate_x_not_in_s").get<double>() > 0.6);
    CHECK(r.at("accounting").at("bob_bits").get<std::size_t>() == 64 + 32 * 2);
    CHECK(r.at("accounting").at("alice_qubits").get<std::size_t>() == 32 * 4);
}

TEST_CASE("result files are written where asked") {
    ExperimentConfig cfg;
    cfg.experiment = "params";
    cfg.seed = 77;
    cfg.out_dir = "/tmp/qjl_test_out";
    std::filesystem::remove_all(cfg.out_dir);
    const ExperimentResult res = run_experiment(cfg);
    const auto files = write_result_files(cfg, res);
    REQUIRE(files.size() == 2);
    CHECK(std::filesystem::exists("/tmp/qjl_test_out/params-77.json"));
    CHECK(std::filesystem::exists("/tmp/qjl_test_out/params-77.csv"));
    std::ifstream in("/tmp/qjl_test_out/params-77.json");
    json parsed;
    in >> parsed;
    CHECK(parsed.at("experiment") == "params");
    std::filesystem::remove_all(cfg.out_dir);
}
