// Acceptance suite: one statistical or exactness gate per headline property,
// each printed as a single [PASS]/[FAIL] line with its measured runtime.
// Deterministic for a fixed master seed (QJL_ACCEPT_SEED overrides the
// default); worker count never changes any number printed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qjl/bounds.hpp"
#include "qjl/design.hpp"
#include "qjl/experiments.hpp"
#include "qjl/rng.hpp"
#include "qjl/sampling.hpp"
#include "qjl/types.hpp"

using namespace qjl;
using nlohmann::json;

namespace {

std::uint64_t master_seed() {
    if (const char* env = std::getenv("QJL_ACCEPT_SEED"); env != nullptr && *env != '\0')
        return std::strtoull(env, nullptr, 10);
    return 20260810;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

json run_exp(const std::string& name, std::uint64_t seed, json params, int workers = 0) {
    ExperimentConfig cfg;
    cfg.experiment = name;
    cfg.seed = seed;
    cfg.workers = workers;
    cfg.params = std::move(params);
    return run_experiment(cfg).document;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

Outcome chi_square_tails(std::uint64_t seed) {
    const json a = run_exp("chi-tails", seed, {{"n", 16}, {"eps", 1.0}, {"trials", 100000}});
    const json b = run_exp("chi-tails", seed + 1, {{"n", 64}, {"eps", 0.5}, {"trials", 100000}});
    Outcome o;
    o.pass = a.at("passed").get<bool>() && b.at("passed").get<bool>();
    std::ostringstream d;
    d << "n=16 rate " << fmt(a["results"]["tail"]["empirical_rate"].get<double>()) << " <= "
      << fmt(a["bounds"]["sharp"].get<double>()) << "; n=64 rate "
      << fmt(b["results"]["tail"]["empirical_rate"].get<double>()) << " <= "
      << fmt(b["bounds"]["sharp"].get<double>());
    o.detail = d.str();
    return o;
}

Outcome haar_projection(std::uint64_t seed) {
    const json doc = run_exp("haar-tails", seed,
                             {{"d1", 1024}, {"d2", 64}, {"eps", 1.0}, {"trials", 2000},
                              {"route", "householder"}, {"mean_trials", 10000}});
    Outcome o;
    o.pass = doc.at("passed").get<bool>();
    std::ostringstream d;
    d << "2000 unitaries, rate " << fmt(doc["results"]["tail"]["empirical_rate"].get<double>())
      << " <= " << fmt(doc["bounds"]["haar_projection_tail"].get<double>()) << "; mean mass "
      << fmt(doc["results"]["mean_block_mass"]["estimate"].get<double>()) << " vs 1/16 within 3 SE="
      << (doc["results"]["mean_block_mass"]["within_3se"].get<bool>() ? "yes" : "no");
    o.detail = d.str();
    return o;
}

Outcome design_substitutes(std::uint64_t seed) {
    const json doc = run_exp("design-tails", seed,
                             {{"q", 10}, {"d2", 64}, {"eps", 1.0}, {"trials", 2000},
                              {"sizes", {250, 1000, 4000}}, {"haar_trials", 2000}});
    Outcome o;
    o.pass = doc.at("passed").get<bool>();
    std::ostringstream d;
    d << "KS(s)=";
    for (const auto& sr : doc["results"]["sizes"]) d << fmt(sr["ks_vs_haar"].get<double>()) << " ";
    d << "monotone=" << (doc["results"]["ks_monotone_nonincreasing"].get<bool>() ? "yes" : "no")
      << ", s=4000 rate diff " << fmt(doc["results"]["largest_size_rate_diff"].get<double>())
      << " <= 2SE " << fmt(doc["results"]["largest_size_two_se"].get<double>());
    o.detail = d.str();
    return o;
}

Outcome design_exactness(std::uint64_t seed) {
    const FiniteDesign pauli = FiniteDesign::from_unitaries(pauli_group_1q());
    const double pauli_lambda = estimate_tpe_lambda(pauli, 1);
    const FiniteDesign clifford = FiniteDesign::from_unitaries(clifford_group_1q());
    const double clifford_lambda = estimate_tpe_lambda(clifford, 2);

    RngStream rng(seed, 0);
    std::vector<Matrix> members;
    for (int i = 0; i < 4; ++i) members.push_back(sample_haar_unitary(2, rng));
    const FiniteDesign random_design = FiniteDesign::from_unitaries(std::move(members));
    const double l1 = estimate_tpe_lambda(random_design, 1);
    const double l2 = estimate_tpe_lambda(iterate_design(random_design, 2), 1);

    Outcome o;
    o.pass = pauli_lambda <= 1e-9 && clifford_lambda <= 1e-9 && l2 <= l1 * l1 + 1e-8;
    std::ostringstream d;
    d << "pauli lambda(t=1) " << fmt(pauli_lambda) << ", clifford lambda(t=2) "
      << fmt(clifford_lambda) << ", squaring " << fmt(l2) << " <= " << fmt(l1 * l1) << "+1e-8";
    o.detail = d.str();
    return o;
}

Outcome monomial_errors(std::uint64_t) {
    const FiniteDesign pauli = FiniteDesign::from_unitaries(pauli_group_1q());
    double max_gap = 0.0;
    for (std::size_t i = 1; i <= 2; ++i)
        for (std::size_t j = 1; j <= 2; ++j)
            for (std::size_t k = 1; k <= 2; ++k)
                for (std::size_t l = 1; l <= 2; ++l) {
                    const BalancedMonomial mono{{{i, j}}, {{k, l}}};
                    max_gap = std::max(max_gap, monomial_design_error(pauli, mono, 1).gap);
                }
    const FiniteDesign ident = FiniteDesign::from_unitaries({Matrix::identity(2)});
    const BalancedMonomial m1111{{{1, 1}}, {{1, 1}}};
    const double ident_gap = monomial_design_error(ident, m1111, 1).gap;

    Outcome o;
    o.pass = max_gap <= 1e-10 && std::abs(ident_gap - 0.5) <= 1e-12;
    std::ostringstream d;
    d << "pauli max gap over 16 monomials " << fmt(max_gap) << ", identity-design u11 gap "
      << fmt(ident_gap) << " (want 1/2)";
    o.detail = d.str();
    return o;
}

Outcome moment_machinery(std::uint64_t seed) {
    const json doc = run_exp("moments", seed,
                             {{"d1", 1024}, {"d2", 64}, {"m", 1}, {"trials", 10000},
                              {"route", "vector"}});
    Outcome o;
    o.pass = doc.at("passed").get<bool>();
    std::ostringstream d;
    d << "E[g^2] " << fmt(doc["results"]["g_moment"]["estimate"].get<double>()) << " <= "
      << fmt(doc["results"]["g_moment"]["bound"].get<double>()) << ", chain grid "
      << (doc["results"]["chain_grid_ok"].get<bool>() ? "1e-12 ok" : "FAILED");
    o.detail = d.str();
    return o;
}

Outcome inner_product_preservation(std::uint64_t seed) {
    const json doc = run_exp("jl-demo", seed,
                             {{"d1", 1024}, {"d2", 256}, {"eps", 0.25}, {"n_states", 8},
                              {"unitaries", 100}, {"route", "householder"},
                              {"polarization_pairs", 10000}});
    Outcome o;
    o.pass = doc.at("passed").get<bool>();
    std::ostringstream d;
    d << "violating-unitary fraction " << fmt(doc["results"]["ip_violation_fraction"].get<double>())
      << " <= 0.1, polarization max err "
      << fmt(doc["results"]["polarization_oracle"]["max_err"].get<double>()) << " <= 1e-9";
    o.detail = d.str();
    return o;
}

Outcome block_uniformity(std::uint64_t seed) {
    const json doc = run_exp("block-dist", seed,
                             {{"d1", 1024}, {"d2", 64}, {"samples", 10000}, {"threshold", 0.15}});
    Outcome o;
    o.pass = doc.at("passed").get<bool>();
    std::ostringstream d;
    d << "l1 " << fmt(doc["results"]["l1_empirical_vs_uniform"].get<double>())
      << " <= 0.15 (noise floor "
      << fmt(doc["results"]["noise_floor_uniform_source"].get<double>()) << ")";
    o.detail = d.str();
    return o;
}

Outcome pir_end_to_end(std::uint64_t seed) {
    const json doc = run_exp("pir", seed,
                             {{"m", 256}, {"n", 4}, {"d2", 64}, {"c_rep", 16}, {"runs", 200},
                              {"set_size", 4}});
    Outcome o;
    o.pass = doc.at("passed").get<bool>();
    const auto& r = doc["results"];
    std::ostringstream d;
    d << "correct in/out " << fmt(r["correct_rate_x_in_s"].get<double>()) << "/"
      << fmt(r["correct_rate_x_not_in_s"].get<double>()) << " >= 0.75; bob "
      << r["accounting"]["bob_bits"] << " bits, alice " << r["accounting"]["alice_qubits"]
      << " qubits; privacy diff " << fmt(r["privacy"]["abs_diff"].get<double>()) << " <= 2SE "
      << fmt(r["privacy"]["two_se"].get<double>());
    o.detail = d.str();
    return o;
}

Outcome parameter_formulas(std::uint64_t seed) {
    const json doc = run_exp("params", seed, json::object());
    const auto& main = doc["results"]["main"];
    Outcome o;
    o.pass = doc.at("passed").get<bool>() && main.at("t") == 512 && main.at("m") == 256 &&
             std::isfinite(main.at("lambda_target_log").get<double>());
    std::ostringstream d;
    d << "t=" << main["t"] << " m=" << main["m"] << " lambda_log "
      << fmt(main["lambda_target_log"].get<double>()) << ", k bound on grid "
      << (doc["results"]["grid_ok"].get<bool>() ? "holds" : "violated");
    o.detail = d.str();
    return o;
}

Outcome reproducibility(std::uint64_t seed) {
    auto run_with = [&](const std::string& name, json params, int workers) {
        ExperimentConfig cfg;
        cfg.experiment = name;
        cfg.seed = seed;
        cfg.workers = workers;
        cfg.params = std::move(params);
        const ExperimentResult r = run_experiment(cfg);
        return r.document.dump() + "\n---\n" + r.csv;
    };
    const json chi = {{"n", 16}, {"eps", 1.0}, {"trials", 20000}};
    const json haar = {{"d1", 64}, {"d2", 8}, {"trials", 300}, {"mean_trials", 2000}};
    const json pir = {{"m", 64},          {"n", 2},   {"d2", 16}, {"c_rep", 8},
                      {"runs", 20},        {"set_size", 2}, {"privacy_probes", {1, 33}},
                      {"privacy_runs", 256}, {"privacy_unitaries", 2}};
    const bool ok = run_with("chi-tails", chi, 1) == run_with("chi-tails", chi, 4) &&
                    run_with("haar-tails", haar, 1) == run_with("haar-tails", haar, 3) &&
                    run_with("pir", pir, 1) == run_with("pir", pir, 4);
    Outcome o;
    o.pass = ok;
    o.detail = ok ? "JSON and CSV byte-identical for workers {1,3,4} on 3 experiments"
                  : "outputs differ across worker counts";
    return o;
}

}  // namespace

int main() {
    const std::uint64_t seed = master_seed();
    std::printf("acceptance suite, master seed %llu\n", static_cast<unsigned long long>(seed));

    struct Criterion {
        const char* name;
        std::function<Outcome(std::uint64_t)> fn;
    };
    const std::vector<Criterion> criteria = {
        {"C1 chi-square tail bounds", chi_square_tails},
        {"C2 haar projection concentration", haar_projection},
        {"C3 circuits approach the haar tails", design_substitutes},
        {"C4 exact-design lambda and iteration squaring", design_exactness},
        {"C5 balanced-monomial design errors", monomial_errors},
        {"C6 moment bounds and tail-chain transcription", moment_machinery},
        {"C7 pairwise inner-product preservation", inner_product_preservation},
        {"C8 block-name near-uniformity", block_uniformity},
        {"C9 membership protocol end to end", pir_end_to_end},
        {"C10 design parameter formulas", parameter_formulas},
        {"C11 reproducibility across workers", reproducibility},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn(seed);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                    secs);
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    if (failures == 0)
        std::printf("all %zu criteria passed\n", criteria.size());
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures;
}
