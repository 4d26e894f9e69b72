#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qjl/rng.hpp"

namespace qjl {

/// z for a two-sided 99% normal interval.
inline constexpr double kZ99 = 2.5758293035489004;

struct WilsonInterval {
    double lower = 0.0;
    double upper = 1.0;
};

/// Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(std::uint64_t failures, std::uint64_t trials, double z = kZ99);

/// One empirical tail test: `failures` of `trials` deviations fell outside the
/// band. The test is one-sided: the analytic bound counts as violated only
/// when even the Wilson 99% lower confidence limit exceeds it. Bounds >= 1
/// are vacuous and pass trivially.
struct TailReport {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double empirical_rate = 0.0;
    double wilson_ci_lower = 0.0;
    double wilson_ci_upper = 0.0;
    double analytic_bound = 0.0;
    bool vacuous = false;
    bool passed = false;
};

struct Band {
    double lo = 0.0;
    double hi = 0.0;
};

/// Runs `trials` independent deviation samples (trial i drawn from stream
/// stream_base + i of master_seed), counts band violations and compares the
/// rate against analytic_bound. Worker count never changes the report.
TailReport empirical_tail(const std::function<double(RngStream&)>& deviation_sampler, Band band,
                          std::uint64_t trials, double analytic_bound, std::uint64_t master_seed,
                          std::uint64_t stream_base, int workers);

/// Builds the report from already collected deviations.
TailReport tail_report_from_deviations(const std::vector<double>& deviations, Band band,
                                       double analytic_bound);

/// Sample mean of x^power with a delete-one jackknife standard error.
struct MomentEstimate {
    double mean = 0.0;
    double jackknife_se = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t power = 0;
};

/// power = 2m; guarded to trials >= 1000 and m <= 16.
MomentEstimate empirical_moment(const std::function<double(RngStream&)>& sampler, std::uint64_t power,
                                std::uint64_t trials, std::uint64_t master_seed,
                                std::uint64_t stream_base, int workers);

MomentEstimate moment_from_samples(const std::vector<double>& samples, std::uint64_t power);

/// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a - F_b|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Rejection threshold c(alpha) sqrt((n+m)/(nm)) for alpha in {0.01, 0.05}.
double ks_critical_value(double alpha, std::size_t n, std::size_t m);

}  // namespace qjl
