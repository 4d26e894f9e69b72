#include "qjl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "qjl/bounds.hpp"
#include "qjl/circuits.hpp"
#include "qjl/design.hpp"
#include "qjl/jl.hpp"
#include "qjl/parallel.hpp"
#include "qjl/pir.hpp"
#include "qjl/sampling.hpp"
#include "qjl/stats.hpp"
#include "qjl/types.hpp"
#include "sha1.hpp"

namespace qjl {

namespace {

using nlohmann::json;

constexpr std::uint64_t kStreamBlock = std::uint64_t{1} << 40;

void check_keys(const json& obj, const std::vector<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected a JSON object");
    for (const auto& item : obj.items())
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            throw ConfigError(where + ": unknown key \"" + item.key() + "\"");
}

std::uint64_t get_u64(const json& p, const std::string& key) {
    const json& v = p.at(key);
    if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)))
        throw ConfigError("param \"" + key + "\" must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

double get_num(const json& p, const std::string& key) {
    const json& v = p.at(key);
    if (!v.is_number()) throw ConfigError("param \"" + key + "\" must be a number");
    return v.get<double>();
}

std::string get_str(const json& p, const std::string& key) {
    const json& v = p.at(key);
    if (!v.is_string()) throw ConfigError("param \"" + key + "\" must be a string");
    return v.get<std::string>();
}

bool is_pow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

void require_pow2(std::uint64_t v, const std::string& name) {
    if (!is_pow2(v)) throw ConfigError("param \"" + name + "\" must be a power of 2");
}

json merged_params(const json& defaults, const json& user, const std::string& experiment) {
    std::vector<std::string> allowed;
    for (const auto& item : defaults.items()) allowed.push_back(item.key());
    check_keys(user, allowed, experiment + " params");
    json out = defaults;
    for (const auto& item : user.items()) out[item.key()] = item.value();
    return out;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json tail_report_json(const TailReport& r) {
    return {{"trials", r.trials},
            {"failures", r.failures},
            {"empirical_rate", r.empirical_rate},
            {"wilson_ci_lower", r.wilson_ci_lower},
            {"wilson_ci_upper", r.wilson_ci_upper},
            {"analytic_bound", r.analytic_bound},
            {"vacuous", r.vacuous},
            {"passed", r.passed}};
}

ExperimentResult finalize(const ExperimentConfig& cfg, const json& params, json bounds, json results,
                          bool passed, std::string csv) {
    json config = {{"experiment", cfg.experiment}, {"seed", cfg.seed}, {"params", params}};
    ExperimentResult r;
    r.document = json{{"experiment", cfg.experiment},
                      {"config", config},
                      {"config_hash", git_blob_sha1(config.dump())},
                      {"bounds", std::move(bounds)},
                      {"results", std::move(results)},
                      {"passed", passed}};
    r.passed = passed;
    r.csv = std::move(csv);
    return r;
}

// ---------------------------------------------------------------- samplers

double block_norm_from_state(const StateVector& w, std::size_t d2) {
    double s = 0.0;
    for (std::size_t i = 0; i < d2; ++i) s += std::norm(w[i]);
    return std::sqrt(s);
}

}  // namespace

double haar_block_norm_sample(std::size_t d1, std::size_t d2, const std::string& route,
                              RngStream& rng) {
    if (route == "vector") {
        // U e_1 for Haar U is exactly a Haar unit vector; sample it directly
        // from normalized Gaussians.
        double block = 0.0, total = 0.0;
        for (std::size_t i = 0; i < d1; ++i) {
            const double re = rng.gaussian(), im = rng.gaussian();
            const double n = re * re + im * im;
            total += n;
            if (i < d2) block += n;
        }
        return std::sqrt(block / total);
    }
    if (route == "householder") {
        const HaarAction u(d1, rng);
        StateVector v = StateVector::basis(d1, 0);
        u.apply_in_place(v.amplitudes());
        return block_norm_from_state(v, d2);
    }
    if (route == "ginibre") {
        const Matrix u = sample_haar_unitary(d1, rng);
        double s = 0.0;
        for (std::size_t i = 0; i < d2; ++i) s += std::norm(u(i, 0));  // first column = U e_1
        return std::sqrt(s);
    }
    throw ConfigError("unknown haar route \"" + route + "\"");
}

double circuit_block_norm_sample(std::size_t q, std::size_t d2, std::size_t s, RngStream& rng) {
    const GateCircuit c = generate_local_random_circuit(q, s, rng);
    StateVector v = StateVector::basis(std::size_t{1} << q, 0);
    apply_circuit_in_place(c, v.amplitudes());
    return block_norm_from_state(v, d2);
}

namespace {

// --------------------------------------------------------------- chi-tails

ExperimentResult run_chi_tails(const ExperimentConfig& cfg, const json& params) {
    const std::uint64_t n = get_u64(params, "n");
    const double eps = get_num(params, "eps");
    const std::uint64_t trials = get_u64(params, "trials");
    if (n == 0) throw ConfigError("chi-tails: n must be >= 1");
    if (!(eps > 0.0)) throw ConfigError("chi-tails: eps must be > 0");

    const ChiSquareTailBound bound = chi_square_tail_bound(n, eps);
    const double nn = static_cast<double>(n);
    const Band band{(1.0 - eps) * nn, (1.0 + eps) * nn};
    const TailReport report = empirical_tail(
        [n](RngStream& rng) { return sample_chi_square_sum(static_cast<std::size_t>(n), rng); }, band,
        trials, bound.sharp, cfg.seed, 0, cfg.workers);

    json bounds = {{"sharp", bound.sharp}};
    if (bound.simplified) bounds["simplified"] = *bound.simplified;

    std::ostringstream csv;
    csv << "experiment,seed,n,eps,trials,failures,empirical_rate,wilson_lower,wilson_upper,"
           "sharp_bound,passed\n";
    csv << cfg.experiment << ',' << cfg.seed << ',' << n << ',' << fmt_double(eps) << ','
        << report.trials << ',' << report.failures << ',' << fmt_double(report.empirical_rate) << ','
        << fmt_double(report.wilson_ci_lower) << ',' << fmt_double(report.wilson_ci_upper) << ','
        << fmt_double(bound.sharp) << ',' << (report.passed ? 1 : 0) << '\n';

    return finalize(cfg, params, std::move(bounds),
                    json{{"band", {{"lo", band.lo}, {"hi", band.hi}}}, {"tail", tail_report_json(report)}},
                    report.passed, csv.str());
}

// --------------------------------------------------------------- haar-tails

ExperimentResult run_haar_tails(const ExperimentConfig& cfg, const json& params) {
    const std::uint64_t d1 = get_u64(params, "d1");
    const std::uint64_t d2 = get_u64(params, "d2");
    const double eps = get_num(params, "eps");
    const std::uint64_t trials = get_u64(params, "trials");
    const std::uint64_t mean_trials = get_u64(params, "mean_trials");
    const std::string route = get_str(params, "route");
    const BlockStructure bs(d1, d2);  // validates d2 | d1
    if (!(eps > 0.0)) throw ConfigError("haar-tails: eps must be > 0");

    const double target = std::sqrt(static_cast<double>(d2) / static_cast<double>(d1));
    const double bound = haar_projection_tail_bound(d2, eps);
    const Band band{(1.0 - eps) * target, (1.0 + eps) * target};

    const TailReport report = empirical_tail(
        [&](RngStream& rng) {
            return haar_block_norm_sample(static_cast<std::size_t>(d1), static_cast<std::size_t>(d2),
                                          route, rng);
        },
        band, trials, bound, cfg.seed, 0, cfg.workers);

    // Second moment of the block norm: E ||Pi_1 U v||^2 = d2/d1. Uses the
    // Haar unit-vector route, which is fast enough for large trial counts.
    const MomentEstimate mean2 = empirical_moment(
        [&](RngStream& rng) {
            return haar_block_norm_sample(static_cast<std::size_t>(d1), static_cast<std::size_t>(d2),
                                          "vector", rng);
        },
        2, mean_trials, cfg.seed, kStreamBlock, cfg.workers);
    const double expected = static_cast<double>(d2) / static_cast<double>(d1);
    const bool mean_ok = std::abs(mean2.mean - expected) <= 3.0 * mean2.jackknife_se;

    const bool passed = report.passed && mean_ok;
    json results = {{"band", {{"lo", band.lo}, {"hi", band.hi}}},
                    {"tail", tail_report_json(report)},
                    {"mean_block_mass",
                     {{"estimate", mean2.mean},
                      {"jackknife_se", mean2.jackknife_se},
                      {"expected", expected},
                      {"trials", mean2.trials},
                      {"route", "vector"},
                      {"within_3se", mean_ok}}},
                    {"route", route}};

    std::ostringstream csv;
    csv << "experiment,seed,d1,d2,eps,route,trials,failures,empirical_rate,wilson_lower,"
           "analytic_bound,mean_block_mass,mean_expected,passed\n";
    csv << cfg.experiment << ',' << cfg.seed << ',' << d1 << ',' << d2 << ',' << fmt_double(eps) << ','
        << route << ',' << report.trials << ',' << report.failures << ','
        << fmt_double(report.empirical_rate) << ',' << fmt_double(report.wilson_ci_lower) << ','
        << fmt_double(bound) << ',' << fmt_double(mean2.mean) << ',' << fmt_double(expected) << ','
        << (passed ? 1 : 0) << '\n';

    return finalize(cfg, params, json{{"haar_projection_tail", bound}}, std::move(results), passed,
                    csv.str());
}

// ------------------------------------------------------------- design-tails

ExperimentResult run_design_tails(const ExperimentConfig& cfg, const json& params) {
    const std::uint64_t q = get_u64(params, "q");
    const std::uint64_t d2 = get_u64(params, "d2");
    const double eps = get_num(params, "eps");
    const std::uint64_t trials = get_u64(params, "trials");
    const std::uint64_t haar_trials = get_u64(params, "haar_trials");
    if (q < 2 || q > 20) throw ConfigError("design-tails: q must be in [2, 20]");
    const std::uint64_t d1 = std::uint64_t{1} << q;
    require_pow2(d2, "d2");
    const BlockStructure bs(d1, d2);
    if (!(eps > 0.0)) throw ConfigError("design-tails: eps must be > 0");
    if (!params.at("sizes").is_array() || params.at("sizes").empty())
        throw ConfigError("design-tails: sizes must be a nonempty array");
    std::vector<std::uint64_t> sizes;
    for (const auto& v : params.at("sizes")) {
        if (!v.is_number_unsigned() && !v.is_number_integer())
            throw ConfigError("design-tails: sizes entries must be integers");
        sizes.push_back(v.get<std::uint64_t>());
    }
    if (!std::is_sorted(sizes.begin(), sizes.end()))
        throw ConfigError("design-tails: sizes must be increasing");

    const double target = std::sqrt(static_cast<double>(d2) / static_cast<double>(d1));
    const Band band{(1.0 - eps) * target, (1.0 + eps) * target};
    const double haar_bound = haar_projection_tail_bound(d2, eps);
    const bool design_bound_defined = eps < 1.0;
    const double design_bound = design_bound_defined ? design_projection_tail_bound(d2, eps)
                                                     : std::numeric_limits<double>::quiet_NaN();

    std::vector<double> haar_devs(haar_trials);
    parallel_trials(haar_trials, cfg.workers, [&](std::size_t i) {
        RngStream rng(cfg.seed, i);
        haar_devs[i] = haar_block_norm_sample(d1, d2, "householder", rng);
    });
    const TailReport haar_report = tail_report_from_deviations(haar_devs, band, haar_bound);

    // KS noise floor from a half/half split of the Haar sample.
    const std::size_t half = haar_devs.size() / 2;
    const double ks_floor = ks_two_sample(
        std::vector<double>(haar_devs.begin(), haar_devs.begin() + half),
        std::vector<double>(haar_devs.begin() + half, haar_devs.end()));

    json size_results = json::array();
    std::vector<double> ks_values;
    bool final_within = false;
    double final_diff = 0.0, final_two_se = 0.0;
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        const std::uint64_t s = sizes[si];
        std::vector<double> devs(trials);
        parallel_trials(trials, cfg.workers, [&](std::size_t i) {
            RngStream rng(cfg.seed, (si + 1) * kStreamBlock + i);
            devs[i] = circuit_block_norm_sample(q, d2, s, rng);
        });
        const TailReport rep = tail_report_from_deviations(devs, band, haar_bound);
        const double ks = ks_two_sample(devs, haar_devs);
        ks_values.push_back(ks);

        const double p1 = rep.empirical_rate, p2 = haar_report.empirical_rate;
        const double se = std::sqrt(p1 * (1.0 - p1) / static_cast<double>(rep.trials) +
                                    p2 * (1.0 - p2) / static_cast<double>(haar_report.trials));
        const double diff = std::abs(p1 - p2);
        const bool within = diff <= 2.0 * se;
        if (si + 1 == sizes.size()) {
            final_within = within;
            final_diff = diff;
            final_two_se = 2.0 * se;
        }
        size_results.push_back({{"s", s},
                                {"tail", tail_report_json(rep)},
                                {"ks_vs_haar", ks},
                                {"rate_diff_vs_haar", diff},
                                {"rate_diff_two_se", 2.0 * se},
                                {"within_two_se", within}});
    }
    bool ks_monotone = true;
    for (std::size_t i = 0; i + 1 < ks_values.size(); ++i)
        if (ks_values[i + 1] > ks_values[i]) ks_monotone = false;

    const bool passed = final_within && ks_monotone;
    json bounds = {{"haar_projection_tail", haar_bound}};
    if (design_bound_defined) bounds["design_projection_tail"] = design_bound;

    json results = {{"band", {{"lo", band.lo}, {"hi", band.hi}}},
                    {"haar", tail_report_json(haar_report)},
                    {"ks_noise_floor_half_split", ks_floor},
                    {"sizes", size_results},
                    {"ks_monotone_nonincreasing", ks_monotone},
                    {"largest_size_within_two_se", final_within},
                    {"largest_size_rate_diff", final_diff},
                    {"largest_size_two_se", final_two_se}};

    std::ostringstream csv;
    csv << "experiment,seed,q,d2,eps,s,trials,failures,empirical_rate,ks_vs_haar,passed\n";
    csv << cfg.experiment << ',' << cfg.seed << ',' << q << ',' << d2 << ',' << fmt_double(eps)
        << ",haar," << haar_report.trials << ',' << haar_report.failures << ','
        << fmt_double(haar_report.empirical_rate) << ",0," << (passed ? 1 : 0) << '\n';
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        const auto& sr = size_results[si];
        csv << cfg.experiment << ',' << cfg.seed << ',' << q << ',' << d2 << ',' << fmt_double(eps)
            << ',' << sizes[si] << ',' << sr["tail"]["trials"].get<std::uint64_t>() << ','
            << sr["tail"]["failures"].get<std::uint64_t>() << ','
            << fmt_double(sr["tail"]["empirical_rate"].get<double>()) << ','
            << fmt_double(ks_values[si]) << ',' << (passed ? 1 : 0) << '\n';
    }

    return finalize(cfg, params, std::move(bounds), std::move(results), passed, csv.str());
}

// ------------------------------------------------------------------ moments

ExperimentResult run_moments(const ExperimentConfig& cfg, const json& params) {
    const std::uint64_t d1 = get_u64(params, "d1");
    const std::uint64_t d2 = get_u64(params, "d2");
    const std::uint64_t m = get_u64(params, "m");
    const std::uint64_t trials = get_u64(params, "trials");
    const std::string route = get_str(params, "route");
    const BlockStructure bs(d1, d2);
    if (m == 0 || m > 16) throw ConfigError("moments: m must be in [1, 16]");

    const double ratio = static_cast<double>(d2) / static_cast<double>(d1);
    const double target = std::sqrt(ratio);
    const double bound_g = moment_bound_g(d1, d2, m);
    const double bound_f = moment_bound_f(d1, m);

    const MomentEstimate g_est = empirical_moment(
        [&](RngStream& rng) {
            const double nrm = haar_block_norm_sample(d1, d2, route, rng);
            return nrm * nrm - ratio;
        },
        2 * m, trials, cfg.seed, 0, cfg.workers);
    const MomentEstimate f_est = empirical_moment(
        [&](RngStream& rng) { return haar_block_norm_sample(d1, d2, route, rng) - target; }, 2 * m,
        trials, cfg.seed, kStreamBlock, cfg.workers);

    const bool g_ok = g_est.mean <= bound_g + 3.0 * g_est.jackknife_se;
    const bool f_ok = f_est.mean <= bound_f + 3.0 * f_est.jackknife_se;

    // Transcription check of the moment-to-tail chain: both algebraic routes
    // must agree term by term in log domain.
    json grid = json::array();
    bool chain_ok = true;
    const double grid_d1[] = {1024.0, 1048576.0, 1099511627776.0};
    const double grid_eps[] = {0.25, 0.5, 0.9};
    const std::uint64_t grid_m[] = {1, 4, 64};
    const double grid_lambda_log[] = {-50.0, -500.0, -5000.0};
    for (double gd1 : grid_d1)
        for (std::uint64_t gd2 : {std::uint64_t{64}, std::uint64_t{1024}}) {
            if (static_cast<double>(gd2) >= gd1) continue;
            for (double geps : grid_eps)
                for (std::uint64_t gm : grid_m)
                    for (double gl : grid_lambda_log) {
                        const auto lhs =
                            tail_chain_lhs(static_cast<std::uint64_t>(gd1), gd2, geps, gm, gl);
                        const auto rhs =
                            tail_chain_rhs(static_cast<std::uint64_t>(gd1), gd2, geps, gm, gl);
                        auto rel = [](double a, double b) {
                            return std::abs(a - b) / std::max(1.0, std::abs(b));
                        };
                        const double worst = std::max({rel(lhs.term_moment_log, rhs.term_moment_log),
                                                       rel(lhs.term_exp_log, rhs.term_exp_log),
                                                       rel(lhs.term_lambda_log, rhs.term_lambda_log)});
                        if (worst > 1e-12) chain_ok = false;
                        grid.push_back({{"d1", gd1},
                                        {"d2", gd2},
                                        {"eps", geps},
                                        {"m", gm},
                                        {"lambda_log", gl},
                                        {"max_term_rel_err", worst}});
                    }
        }

    const bool passed = g_ok && f_ok && chain_ok;
    json results = {{"g_moment",
                     {{"estimate", g_est.mean},
                      {"jackknife_se", g_est.jackknife_se},
                      {"bound", bound_g},
                      {"within", g_ok}}},
                    {"f_moment",
                     {{"estimate", f_est.mean},
                      {"jackknife_se", f_est.jackknife_se},
                      {"bound", bound_f},
                      {"within", f_ok}}},
                    {"route", route},
                    {"chain_grid_ok", chain_ok},
                    {"chain_grid", grid}};

    std::ostringstream csv;
    csv << "experiment,seed,d1,d2,m,trials,g_estimate,g_se,g_bound,f_estimate,f_se,f_bound,"
           "chain_grid_ok,passed\n";
    csv << cfg.experiment << ',' << cfg.seed << ',' << d1 << ',' << d2 << ',' << m << ',' << trials
        << ',' << fmt_double(g_est.mean) << ',' << fmt_double(g_est.jackknife_se) << ','
        << fmt_double(bound_g) << ',' << fmt_double(f_est.mean) << ',' << fmt_double(f_est.jackknife_se)
        << ',' << fmt_double(bound_f) << ',' << (chain_ok ? 1 : 0) << ',' << (passed ? 1 : 0) << '\n';

    return finalize(cfg, params, json{{"moment_bound_g", bound_g}, {"moment_bound_f", bound_f}},
                    std::move(results), passed, csv.str());
}

// ------------------------------------------------------------ design-quality

ExperimentResult run_design_quality(const ExperimentConfig& cfg, const json& params) {
    const std::uint64_t random_design_size = get_u64(params, "random_design_size");
    const std::uint64_t mc_samples = get_u64(params, "mc_samples");
    const std::uint64_t monomial_mc_samples = get_u64(params, "monomial_mc_samples");
    if (random_design_size == 0) throw ConfigError("design-quality: random_design_size must be >= 1");

    const FiniteDesign pauli = FiniteDesign::from_unitaries(pauli_group_1q());
    const double pauli_lambda = estimate_tpe_lambda(pauli, 1);

    const std::vector<Matrix> cliffords = clifford_group_1q();
    const FiniteDesign clifford = FiniteDesign::from_unitaries(cliffords);
    const double clifford_lambda = estimate_tpe_lambda(clifford, 2);

    RngStream rng(cfg.seed, 0);
    std::vector<Matrix> random_members;
    for (std::uint64_t i = 0; i < random_design_size; ++i)
        random_members.push_back(sample_haar_unitary(2, rng));
    const FiniteDesign random_design = FiniteDesign::from_unitaries(std::move(random_members));
    const double lambda_base = estimate_tpe_lambda(random_design, 1);
    const double lambda_squared = estimate_tpe_lambda(iterate_design(random_design, 2), 1);
    const bool squaring_ok = lambda_squared <= lambda_base * lambda_base + 1e-8;

    // All 16 balanced degree-1 monomials at d = 2 for the Pauli group.
    double pauli_max_monomial_gap = 0.0;
    for (std::size_t i = 1; i <= 2; ++i)
        for (std::size_t j = 1; j <= 2; ++j)
            for (std::size_t k = 1; k <= 2; ++k)
                for (std::size_t l = 1; l <= 2; ++l) {
                    BalancedMonomial mono{{{i, j}}, {{k, l}}};
                    pauli_max_monomial_gap =
                        std::max(pauli_max_monomial_gap, monomial_design_error(pauli, mono, 1).gap);
                }

    const FiniteDesign identity_only = FiniteDesign::from_unitaries({Matrix::identity(2)});
    const BalancedMonomial m1111{{{1, 1}}, {{1, 1}}};
    const MonomialError identity_gap = monomial_design_error(identity_only, m1111, 1);

    // Closed-form t = 2 Haar twirl vs Monte-Carlo cross-check at d = 2.
    RngStream mc_rng = rng.substream(1);
    const MomentSuperoperator closed = haar_moment_superoperator(2, 2);
    const MomentSuperoperator mc = haar_moment_superoperator_mc(2, 2, mc_samples, mc_rng);
    double mc_max_err = 0.0;
    for (std::size_t i = 0; i < closed.matrix.rows(); ++i)
        for (std::size_t j = 0; j < closed.matrix.cols(); ++j)
            mc_max_err = std::max(mc_max_err, std::abs(closed.matrix(i, j) - mc.matrix(i, j)));
    const double mc_tol = 5.0 / std::sqrt(static_cast<double>(mc_samples));
    const bool mc_ok = mc_max_err <= mc_tol;

    // t = 2 monomial Monte-Carlo path: the Clifford group is an exact
    // 2-design, so the measured gap is pure Monte-Carlo noise.
    RngStream mono_rng = rng.substream(2);
    const BalancedMonomial m2{{{1, 1}, {2, 2}}, {{1, 1}, {2, 2}}};
    const MonomialError clifford_t2_gap =
        monomial_design_error(clifford, m2, 2, monomial_mc_samples, mono_rng);
    const double mono_tol = 5.0 / std::sqrt(static_cast<double>(monomial_mc_samples));

    const bool pauli_ok = pauli_lambda <= 1e-9;
    const bool clifford_ok = clifford_lambda <= 1e-9 && cliffords.size() == 24;
    const bool monomials_ok =
        pauli_max_monomial_gap <= 1e-10 && std::abs(identity_gap.gap - 0.5) <= 1e-12;
    const bool mono_t2_ok = clifford_t2_gap.gap <= mono_tol;
    const bool passed = pauli_ok && clifford_ok && squaring_ok && monomials_ok && mc_ok && mono_t2_ok;

    json results = {{"pauli_lambda_t1", pauli_lambda},
                    {"clifford_group_size", cliffords.size()},
                    {"clifford_lambda_t2", clifford_lambda},
                    {"random_design",
                     {{"size", random_design_size},
                      {"lambda", lambda_base},
                      {"lambda_iterated_twice", lambda_squared},
                      {"squaring_ok", squaring_ok}}},
                    {"pauli_max_monomial_gap", pauli_max_monomial_gap},
                    {"identity_design_gap_u11",
                     {{"gap", identity_gap.gap}, {"implied_alpha", identity_gap.implied_alpha}}},
                    {"haar_t2_mc_cross_check",
                     {{"samples", mc_samples}, {"max_entry_err", mc_max_err}, {"tol", mc_tol}, {"ok", mc_ok}}},
                    {"clifford_t2_monomial_mc",
                     {{"samples", monomial_mc_samples},
                      {"gap", clifford_t2_gap.gap},
                      {"tol", mono_tol},
                      {"ok", mono_t2_ok}}}};

    std::ostringstream csv;
    csv << "experiment,seed,pauli_lambda_t1,clifford_lambda_t2,random_lambda,random_lambda_sq,"
           "pauli_max_monomial_gap,identity_gap,passed\n";
    csv << cfg.experiment << ',' << cfg.seed << ',' << fmt_double(pauli_lambda) << ','
        << fmt_double(clifford_lambda) << ',' << fmt_double(lambda_base) << ','
        << fmt_double(lambda_squared) << ',' << fmt_double(pauli_max_monomial_gap) << ','
        << fmt_double(identity_gap.gap) << ',' << (passed ? 1 : 0) << '\n';

    return finalize(cfg, params, json::object(), std::move(results), passed, csv.str());
}

// ------------------------------------------------------------------- params

json design_params_json(const DesignParams& p) {
    return {{"d1", p.d1},
            {"d2", p.d2},
            {"eps", p.eps},
            {"t", p.t},
            {"m", p.m},
            {"lambda_target_log", p.lambda_target_log},
            {"lambda0", p.lambda0},
            {"s_base", p.s_base},
            {"k_real", p.k_real},
            {"iterations_k", p.iterations_k},
            {"k_upper_bound", p.k_upper_bound},
            {"k_bound_satisfied", p.k_bound_satisfied},
            {"log_s_bound", p.log_s_bound}};
}

ExperimentResult run_params(const ExperimentConfig& cfg, const json& params) {
    const std::uint64_t d1 = get_u64(params, "d1");
    const std::uint64_t d2 = get_u64(params, "d2");
    const double eps = get_num(params, "eps");
    const double lambda0 = get_num(params, "lambda0");
    const double s_base = get_num(params, "s_base");

    const DesignParams main = compute_design_params(d1, d2, eps, lambda0, s_base);

    json grid_spec = params.at("grid");
    json grid_rows = json::array();
    bool grid_ok = std::isfinite(main.lambda_target_log);
    for (const auto& row : grid_spec) {
        if (!row.is_array() || row.size() != 4)
            throw ConfigError("params: grid rows must be [d1, d2, eps, lambda0]");
        const DesignParams p = compute_design_params(row[0].get<std::uint64_t>(),
                                                     row[1].get<std::uint64_t>(), row[2].get<double>(),
                                                     row[3].get<double>(), s_base);
        const bool finite = std::isfinite(p.lambda_target_log) && std::isfinite(p.log_s_bound) &&
                            std::isfinite(p.k_real);
        if (!p.k_bound_satisfied || !finite) grid_ok = false;
        json pj = design_params_json(p);
        pj["finite"] = finite;
        grid_rows.push_back(std::move(pj));
    }

    const bool passed = grid_ok;
    json results = {{"main", design_params_json(main)}, {"grid", grid_rows}, {"grid_ok", grid_ok}};

    std::ostringstream csv;
    csv << "experiment,seed,d1,d2,eps,lambda0,t,m,lambda_target_log,iterations_k,k_upper_bound,"
           "k_bound_satisfied,log_s_bound,passed\n";
    csv << cfg.experiment << ',' << cfg.seed << ',' << d1 << ',' << d2 << ',' << fmt_double(eps) << ','
        << fmt_double(lambda0) << ',' << main.t << ',' << main.m << ','
        << fmt_double(main.lambda_target_log) << ',' << main.iterations_k << ','
        << fmt_double(main.k_upper_bound) << ',' << (main.k_bound_satisfied ? 1 : 0) << ','
        << fmt_double(main.log_s_bound) << ',' << (passed ? 1 : 0) << '\n';

    return finalize(cfg, params, json::object(), std::move(results), passed, csv.str());
}

// ------------------------------------------------------------------ jl-demo

ExperimentResult run_jl_demo(const ExperimentConfig& cfg, const json& params) {
    const std::uint64_t d1 = get_u64(params, "d1");
    const std::uint64_t d2 = get_u64(params, "d2");
    const double eps = get_num(params, "eps");
    const std::uint64_t n_states = get_u64(params, "n_states");
    const std::uint64_t unitaries = get_u64(params, "unitaries");
    const std::string route = get_str(params, "route");
    const std::uint64_t circuit_size = get_u64(params, "circuit_size");
    const std::uint64_t polarization_pairs = get_u64(params, "polarization_pairs");
    const BlockStructure bs(d1, d2);
    if (!(eps > 0.0)) throw ConfigError("jl-demo: eps must be > 0");
    if (n_states == 0 || unitaries == 0) throw ConfigError("jl-demo: need states and unitaries");
    if (route == "circuit") require_pow2(d1, "d1");

    // The state family is fixed once; the unitary is the random object.
    std::vector<StateVector> states;
    {
        RngStream srng(cfg.seed, 7 * kStreamBlock);
        for (std::uint64_t i = 0; i < n_states; ++i)
            states.push_back(sample_haar_unit_vector(d1, srng));
    }

    std::vector<int> ip_violated(unitaries, 0), norm_violated(unitaries, 0);
    std::vector<double> max_ip_devs(unitaries, 0.0), max_norm_rel(unitaries, 0.0);
    parallel_trials(unitaries, cfg.workers, [&](std::size_t i) {
        RngStream rng(cfg.seed, i);
        PreservationReport rep = [&] {
            if (route == "householder") {
                const HaarAction u(d1, rng);
                return pairwise_preservation_report(states, UnitaryApplier(u), bs, eps);
            }
            if (route == "ginibre") {
                const Matrix u = sample_haar_unitary(d1, rng);
                return pairwise_preservation_report(states, UnitaryApplier(u), bs, eps);
            }
            if (route == "circuit") {
                const GateCircuit c = generate_local_random_circuit(
                    static_cast<std::size_t>(std::log2(static_cast<double>(d1))), circuit_size, rng);
                return pairwise_preservation_report(states, UnitaryApplier(c), bs, eps);
            }
            throw ConfigError("jl-demo: unknown route \"" + route + "\"");
        }();
        ip_violated[i] = rep.ip_violations.empty() ? 0 : 1;
        norm_violated[i] = rep.norm_violations.empty() ? 0 : 1;
        max_ip_devs[i] = rep.max_ip_dev;
        max_norm_rel[i] = rep.max_norm_rel_dev;
    });

    std::size_t ip_count = 0, norm_count = 0;
    double worst_ip = 0.0, worst_norm = 0.0;
    for (std::size_t i = 0; i < unitaries; ++i) {
        ip_count += ip_violated[i];
        norm_count += norm_violated[i];
        worst_ip = std::max(worst_ip, max_ip_devs[i]);
        worst_norm = std::max(worst_norm, max_norm_rel[i]);
    }
    const double ip_fraction = static_cast<double>(ip_count) / static_cast<double>(unitaries);
    const double norm_fraction = static_cast<double>(norm_count) / static_cast<double>(unitaries);

    // Mandatory oracle: the norm-only reconstruction must agree with the
    // sesquilinear inner product on random unit pairs across dimensions.
    double polar_max_err = 0.0;
    {
        RngStream prng(cfg.seed, 9 * kStreamBlock);
        const std::size_t dims[] = {2, 4, 8, 16, 32, 64};
        for (std::uint64_t i = 0; i < polarization_pairs; ++i) {
            const std::size_t d = dims[i % 6];
            const StateVector a = sample_haar_unit_vector(d, prng);
            const StateVector b = sample_haar_unit_vector(d, prng);
            polar_max_err = std::max(
                polar_max_err, std::abs(polarization_inner_product(a, b) - inner_product(a, b)));
        }
    }
    const bool polar_ok = polar_max_err <= 1e-9;
    const bool passed = ip_fraction <= 0.10 && polar_ok;

    json results = {{"ip_violation_fraction", ip_fraction},
                    {"norm_violation_fraction", norm_fraction},
                    {"max_ip_dev", worst_ip},
                    {"max_norm_rel_dev", worst_norm},
                    {"per_unitary_max_ip_dev", max_ip_devs},
                    {"polarization_oracle",
                     {{"pairs", polarization_pairs}, {"max_err", polar_max_err}, {"ok", polar_ok}}},
                    {"ip_band_halfwidth", 8.0 * eps},
                    {"route", route}};

    std::ostringstream csv;
    csv << "experiment,seed,d1,d2,eps,n_states,unitaries,route,ip_violation_fraction,"
           "norm_violation_fraction,max_ip_dev,polarization_max_err,passed\n";
    csv << cfg.experiment << ',' << cfg.seed << ',' << d1 << ',' << d2 << ',' << fmt_double(eps) << ','
        << n_states << ',' << unitaries << ',' << route << ',' << fmt_double(ip_fraction) << ','
        << fmt_double(norm_fraction) << ',' << fmt_double(worst_ip) << ','
        << fmt_double(polar_max_err) << ',' << (passed ? 1 : 0) << '\n';

    return finalize(cfg, params, json::object(), std::move(results), passed, csv.str());
}

// --------------------------------------------------------------- block-dist

ExperimentResult run_block_dist(const ExperimentConfig& cfg, const json& params) {
    const std::uint64_t d1 = get_u64(params, "d1");
    const std::uint64_t d2 = get_u64(params, "d2");
    const std::uint64_t samples = get_u64(params, "samples");
    const std::string route = get_str(params, "route");
    const std::uint64_t circuit_size = get_u64(params, "circuit_size");
    const double threshold = get_num(params, "threshold");
    const BlockStructure bs(d1, d2);
    if (samples == 0) throw ConfigError("block-dist: samples must be >= 1");
    if (route == "circuit") require_pow2(d1, "d1");

    RngStream urng(cfg.seed, 1);
    const StateVector v = StateVector::basis(d1, 0);
    std::vector<double> probs;
    if (route == "householder") {
        const HaarAction u(d1, urng);
        probs = block_probability_vector(v, UnitaryApplier(u), bs);
    } else if (route == "ginibre") {
        const Matrix u = sample_haar_unitary(d1, urng);
        probs = block_probability_vector(v, UnitaryApplier(u), bs);
    } else if (route == "circuit") {
        const GateCircuit c = generate_local_random_circuit(
            static_cast<std::size_t>(std::log2(static_cast<double>(d1))), circuit_size, urng);
        probs = block_probability_vector(v, UnitaryApplier(c), bs);
    } else {
        throw ConfigError("block-dist: unknown route \"" + route + "\"");
    }

    auto draw_counts = [&](const std::vector<double>& dist, RngStream& rng) {
        std::vector<double> counts(dist.size(), 0.0);
        for (std::uint64_t i = 0; i < samples; ++i) {
            const double r = rng.uniform();
            double acc = 0.0;
            std::size_t idx = dist.size() - 1;
            for (std::size_t j = 0; j < dist.size(); ++j) {
                acc += dist[j];
                if (r < acc) {
                    idx = j;
                    break;
                }
            }
            counts[idx] += 1.0;
        }
        for (double& c : counts) c /= static_cast<double>(samples);
        return counts;
    };

    const std::vector<double> uniform(bs.num_blocks, 1.0 / static_cast<double>(bs.num_blocks));
    RngStream srng(cfg.seed, 2);
    const std::vector<double> empirical = draw_counts(probs, srng);
    const double l1 = l1_distance(empirical, uniform);
    const double exact_l1 = l1_distance(probs, uniform);

    RngStream crng(cfg.seed, 3);
    const std::vector<double> calib = draw_counts(uniform, crng);
    const double floor_l1 = l1_distance(calib, uniform);

    const bool passed = l1 <= threshold;
    json results = {{"l1_empirical_vs_uniform", l1},
                    {"l1_exact_vs_uniform", exact_l1},
                    {"noise_floor_uniform_source", floor_l1},
                    {"threshold", threshold},
                    {"samples", samples},
                    {"route", route},
                    {"block_probabilities", probs},
                    {"empirical_distribution", empirical}};

    std::ostringstream csv;
    csv << "experiment,seed,d1,d2,samples,route,l1_empirical,l1_exact,noise_floor,threshold,passed\n";
    csv << cfg.experiment << ',' << cfg.seed << ',' << d1 << ',' << d2 << ',' << samples << ','
        << route << ',' << fmt_double(l1) << ',' << fmt_double(exact_l1) << ','
        << fmt_double(floor_l1) << ',' << fmt_double(threshold) << ',' << (passed ? 1 : 0) << '\n';

    return finalize(cfg, params, json::object(), std::move(results), passed, csv.str());
}

// --------------------------------------------------------------------- pir

ExperimentResult run_pir(const ExperimentConfig& cfg, const json& params) {
    PirParams pp;
    pp.m = get_u64(params, "m");
    pp.n = get_u64(params, "n");
    pp.d2 = get_u64(params, "d2");
    pp.c_rep = get_u64(params, "c_rep");
    const std::string unitary = get_str(params, "unitary");
    pp.circuit_size = get_u64(params, "circuit_size");
    if (unitary == "haar")
        pp.kind = PirParams::UnitaryKind::haar;
    else if (unitary == "circuit")
        pp.kind = PirParams::UnitaryKind::circuit;
    else
        throw ConfigError("pir: unitary must be \"haar\" or \"circuit\"");
    pp.eps = params.at("eps").is_null() ? 0.01 / std::pow(static_cast<double>(pp.n), 3.0)
                                        : get_num(params, "eps");
    pp.validate();

    const std::uint64_t runs = get_u64(params, "runs");
    const std::uint64_t set_size = get_u64(params, "set_size");
    if (runs == 0) throw ConfigError("pir: runs must be >= 1");
    if (set_size == 0 || set_size > pp.n) throw ConfigError("pir: set_size must be in [1, n]");
    if (set_size >= pp.m) throw ConfigError("pir: set_size must be < m");

    std::vector<int> correct_in(runs, 0), correct_out(runs, 0);
    std::vector<double> frac_in(runs, 0.0), frac_out(runs, 0.0);
    parallel_trials(runs, cfg.workers, [&](std::size_t r) {
        RngStream rng(cfg.seed, r);
        // Fresh S, x_in, x_out per run.
        std::vector<std::size_t> s;
        while (s.size() < set_size) {
            const std::size_t cand = 1 + rng.uniform_index(pp.m);
            if (std::find(s.begin(), s.end(), cand) == s.end()) s.push_back(cand);
        }
        const std::size_t x_in = s[rng.uniform_index(s.size())];
        std::size_t x_out = 1 + rng.uniform_index(pp.m);
        while (std::find(s.begin(), s.end(), x_out) != s.end()) x_out = 1 + rng.uniform_index(pp.m);

        const ProtocolTranscript t_in = run_protocol(s, x_in, pp, rng.substream(10).next_u64());
        const ProtocolTranscript t_out = run_protocol(s, x_out, pp, rng.substream(11).next_u64());
        correct_in[r] = t_in.decision ? 1 : 0;
        correct_out[r] = t_out.decision ? 0 : 1;
        frac_in[r] = t_in.success_fraction;
        frac_out[r] = t_out.success_fraction;
    });

    auto mean_of = [](const std::vector<double>& xs) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s / static_cast<double>(xs.size());
    };
    auto rate_of = [](const std::vector<int>& xs) {
        std::size_t s = 0;
        for (int x : xs) s += x;
        return static_cast<double>(s) / static_cast<double>(xs.size());
    };
    const double rate_in = rate_of(correct_in), rate_out = rate_of(correct_out);
    const double mean_frac_in = mean_of(frac_in), mean_frac_out = mean_of(frac_out);

    // Privacy: design circuit vs Haar baseline, several unitaries per arm.
    const std::uint64_t privacy_unitaries = get_u64(params, "privacy_unitaries");
    const std::uint64_t privacy_runs = get_u64(params, "privacy_runs");
    const std::uint64_t privacy_circuit_size = get_u64(params, "privacy_circuit_size");
    std::vector<std::size_t> probes;
    for (const auto& v : params.at("privacy_probes")) probes.push_back(v.get<std::size_t>());
    if (probes.empty()) throw ConfigError("pir: privacy_probes must be nonempty");

    auto privacy_arm = [&](PirParams::UnitaryKind kind, std::size_t circ_size, std::uint64_t base) {
        PirParams arm = pp;
        arm.kind = kind;
        arm.circuit_size = circ_size;
        std::vector<double> metrics(privacy_unitaries, 0.0);
        parallel_trials(privacy_unitaries, cfg.workers, [&](std::size_t k) {
            RngStream rng(cfg.seed, base + k);
            metrics[k] = privacy_metric(arm, rng.next_u64(), probes, privacy_runs).metric;
        });
        const double mean = mean_of(metrics);
        double ss = 0.0;
        for (double x : metrics) ss += (x - mean) * (x - mean);
        const double se = metrics.size() > 1
                              ? std::sqrt(ss / (static_cast<double>(metrics.size()) *
                                                 static_cast<double>(metrics.size() - 1)))
                              : 0.0;
        return std::pair<double, double>{mean, se};
    };
    const auto [priv_circuit_mean, priv_circuit_se] =
        privacy_arm(PirParams::UnitaryKind::circuit, privacy_circuit_size, 5 * kStreamBlock);
    const auto [priv_haar_mean, priv_haar_se] =
        privacy_arm(PirParams::UnitaryKind::haar, 0, 6 * kStreamBlock);
    const double priv_diff = std::abs(priv_circuit_mean - priv_haar_mean);
    const double priv_two_se =
        2.0 * std::sqrt(priv_circuit_se * priv_circuit_se + priv_haar_se * priv_haar_se);
    const bool privacy_within = priv_diff <= priv_two_se;

    // Message accounting (identical for every run at fixed params).
    const ProtocolTranscript sample_t = run_protocol({1}, 1, pp, cfg.seed);

    const bool passed = rate_in >= 0.75 && rate_out >= 0.75 && privacy_within;
    json results = {{"runs", runs},
                    {"correct_rate_x_in_s", rate_in},
                    {"correct_rate_x_not_in_s", rate_out},
                    {"mean_success_fraction_in", mean_frac_in},
                    {"mean_success_fraction_out", mean_frac_out},
                    {"success_fraction_gap", mean_frac_in - mean_frac_out},
                    {"decision_threshold", pp.threshold()},
                    {"reps", pp.reps()},
                    {"accounting",
                     {{"bob_bits", sample_t.bob_bits}, {"alice_qubits", sample_t.alice_qubits}}},
                    {"privacy",
                     {{"circuit_mean", priv_circuit_mean},
                      {"circuit_se", priv_circuit_se},
                      {"circuit_size", privacy_circuit_size},
                      {"haar_mean", priv_haar_mean},
                      {"haar_se", priv_haar_se},
                      {"abs_diff", priv_diff},
                      {"two_se", priv_two_se},
                      {"within_two_se", privacy_within}}}};

    std::ostringstream csv;
    csv << "experiment,seed,m,n,d2,c_rep,unitary,runs,correct_in,correct_out,mean_frac_in,"
           "mean_frac_out,bob_bits,alice_qubits,privacy_circuit,privacy_haar,passed\n";
    csv << cfg.experiment << ',' << cfg.seed << ',' << pp.m << ',' << pp.n << ',' << pp.d2 << ','
        << pp.c_rep << ',' << unitary << ',' << runs << ',' << fmt_double(rate_in) << ','
        << fmt_double(rate_out) << ',' << fmt_double(mean_frac_in) << ',' << fmt_double(mean_frac_out)
        << ',' << sample_t.bob_bits << ',' << sample_t.alice_qubits << ','
        << fmt_double(priv_circuit_mean) << ',' << fmt_double(priv_haar_mean) << ','
        << (passed ? 1 : 0) << '\n';

    return finalize(cfg, params, json::object(), std::move(results), passed, csv.str());
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {"chi-tails",      "haar-tails", "design-tails",
                                                   "moments",        "design-quality", "params",
                                                   "jl-demo",        "block-dist", "pir"};
    return names;
}

json default_params(const std::string& experiment) {
    if (experiment == "chi-tails") return {{"n", 16}, {"eps", 1.0}, {"trials", 100000}};
    if (experiment == "haar-tails")
        return {{"d1", 1024},           {"d2", 64},          {"eps", 1.0}, {"trials", 2000},
                {"route", "householder"}, {"mean_trials", 10000}};
    if (experiment == "design-tails")
        return {{"q", 10},       {"d2", 64},          {"eps", 1.0}, {"trials", 2000},
                {"sizes", {250, 1000, 4000}}, {"haar_trials", 2000}};
    if (experiment == "moments")
        return {{"d1", 1024}, {"d2", 64}, {"m", 1}, {"trials", 10000}, {"route", "vector"}};
    if (experiment == "design-quality")
        return {{"random_design_size", 4}, {"mc_samples", 200000}, {"monomial_mc_samples", 20000}};
    if (experiment == "params")
        return {{"d1", 1099511627776ull},
                {"d2", 1048576},
                {"eps", 0.5},
                {"lambda0", 0.5},
                {"s_base", 2.0},
                {"grid",
                 {{1073741824ull, 32768, 0.25, 0.5},
                  {1099511627776ull, 1048576, 0.5, 0.5},
                  {1099511627776ull, 1048576, 0.75, 0.25},
                  {1125899906842624ull, 33554432ull, 0.5, 0.9}}}};
    if (experiment == "jl-demo")
        return {{"d1", 1024},        {"d2", 256},   {"eps", 0.25},
                {"n_states", 8},     {"unitaries", 100}, {"route", "householder"},
                {"circuit_size", 0}, {"polarization_pairs", 10000}};
    if (experiment == "block-dist")
        return {{"d1", 1024}, {"d2", 64},           {"samples", 10000}, {"route", "householder"},
                {"circuit_size", 0}, {"threshold", 0.15}};
    if (experiment == "pir")
        return {{"m", 256},
                {"n", 4},
                {"d2", 64},
                {"c_rep", 16},
                {"runs", 200},
                {"set_size", 4},
                {"unitary", "haar"},
                {"circuit_size", 512},
                {"eps", nullptr},
                {"privacy_probes", {1, 100, 256}},
                {"privacy_runs", 4096},
                {"privacy_unitaries", 8},
                {"privacy_circuit_size", 512}};
    throw ConfigError("unknown experiment \"" + experiment + "\"");
}

ExperimentConfig parse_config(const json& j, const std::string& cli_experiment) {
    check_keys(j, {"experiment", "seed", "workers", "output", "params"}, "config");
    ExperimentConfig cfg;
    if (j.contains("experiment")) {
        if (!j["experiment"].is_string()) throw ConfigError("config: experiment must be a string");
        cfg.experiment = j["experiment"].get<std::string>();
    }
    if (!cli_experiment.empty()) {
        if (!cfg.experiment.empty() && cfg.experiment != cli_experiment)
            throw ConfigError("config experiment \"" + cfg.experiment +
                              "\" does not match subcommand \"" + cli_experiment + "\"");
        cfg.experiment = cli_experiment;
    }
    if (cfg.experiment.empty()) throw ConfigError("config: no experiment named");
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), cfg.experiment) == names.end())
        throw ConfigError("unknown experiment \"" + cfg.experiment + "\"");

    if (j.contains("seed")) cfg.seed = get_u64(j, "seed");
    if (j.contains("workers")) {
        if (!j["workers"].is_number_integer())
            throw ConfigError("config: workers must be an integer");
        cfg.workers = j["workers"].get<int>();
    }
    if (j.contains("output")) {
        check_keys(j["output"], {"dir", "format"}, "config.output");
        if (j["output"].contains("dir")) cfg.out_dir = j["output"]["dir"].get<std::string>();
        if (j["output"].contains("format")) {
            cfg.formats.clear();
            const json& f = j["output"]["format"];
            auto add = [&](const std::string& s) {
                if (s != "json" && s != "csv") throw ConfigError("config: format must be json or csv");
                cfg.formats.push_back(s);
            };
            if (f.is_string())
                add(f.get<std::string>());
            else if (f.is_array())
                for (const auto& e : f) add(e.get<std::string>());
            else
                throw ConfigError("config: format must be a string or array");
        }
    }
    if (j.contains("params")) cfg.params = j["params"];
    return cfg;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    const json defaults = default_params(cfg.experiment);
    const json params = merged_params(defaults, cfg.params, cfg.experiment);
    if (cfg.experiment == "chi-tails") return run_chi_tails(cfg, params);
    if (cfg.experiment == "haar-tails") return run_haar_tails(cfg, params);
    if (cfg.experiment == "design-tails") return run_design_tails(cfg, params);
    if (cfg.experiment == "moments") return run_moments(cfg, params);
    if (cfg.experiment == "design-quality") return run_design_quality(cfg, params);
    if (cfg.experiment == "params") return run_params(cfg, params);
    if (cfg.experiment == "jl-demo") return run_jl_demo(cfg, params);
    if (cfg.experiment == "block-dist") return run_block_dist(cfg, params);
    if (cfg.experiment == "pir") return run_pir(cfg, params);
    throw ConfigError("unknown experiment \"" + cfg.experiment + "\"");
}

std::vector<std::string> write_result_files(const ExperimentConfig& cfg, const ExperimentResult& res) {
    std::string dir = cfg.out_dir;
    if (dir.empty()) {
        const char* env = std::getenv("QJL_OUT_DIR");
        dir = env != nullptr && *env != '\0' ? env : ".";
    }
    std::filesystem::create_directories(dir);
    const std::string stem = cfg.experiment + "-" + std::to_string(cfg.seed);
    std::vector<std::string> written;
    for (const std::string& fmt : cfg.formats) {
        const std::filesystem::path path = std::filesystem::path(dir) / (stem + "." + fmt);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file " + path.string());
        if (fmt == "json")
            out << res.document.dump(2) << '\n';
        else
            out << res.csv;
        written.push_back(path.string());
    }
    return written;
}

}  // namespace qjl
