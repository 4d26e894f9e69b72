#include "qjl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qjl/parallel.hpp"

namespace qjl {

WilsonInterval wilson_interval(std::uint64_t failures, std::uint64_t trials, double z) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be >= 1");
    if (failures > trials) throw std::invalid_argument("wilson_interval: failures > trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(failures) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = p + z2 / (2.0 * n);
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    WilsonInterval w;
    w.lower = std::max(0.0, (center - half) / denom);
    w.upper = std::min(1.0, (center + half) / denom);
    return w;
}

TailReport tail_report_from_deviations(const std::vector<double>& deviations, Band band,
                                       double analytic_bound) {
    if (deviations.empty()) throw std::invalid_argument("tail report: no deviations");
    TailReport r;
    r.trials = deviations.size();
    for (double d : deviations)
        if (d < band.lo || d > band.hi) ++r.failures;
    r.empirical_rate = static_cast<double>(r.failures) / static_cast<double>(r.trials);
    const WilsonInterval w = wilson_interval(r.failures, r.trials);
    r.wilson_ci_lower = w.lower;
    r.wilson_ci_upper = w.upper;
    r.analytic_bound = analytic_bound;
    r.vacuous = analytic_bound >= 1.0;
    r.passed = r.vacuous || r.wilson_ci_lower <= analytic_bound;
    return r;
}

TailReport empirical_tail(const std::function<double(RngStream&)>& deviation_sampler, Band band,
                          std::uint64_t trials, double analytic_bound, std::uint64_t master_seed,
                          std::uint64_t stream_base, int workers) {
    if (trials < 100) throw std::invalid_argument("empirical_tail: need at least 100 trials");
    std::vector<double> devs(trials);
    parallel_trials(trials, workers, [&](std::size_t i) {
        RngStream rng(master_seed, stream_base + i);
        devs[i] = deviation_sampler(rng);
    });
    return tail_report_from_deviations(devs, band, analytic_bound);
}

MomentEstimate moment_from_samples(const std::vector<double>& samples, std::uint64_t power) {
    if (samples.empty()) throw std::invalid_argument("moment: no samples");
    const std::uint64_t n = samples.size();
    double mean = 0.0;
    std::vector<double> pw(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        pw[i] = std::pow(samples[i], static_cast<double>(power));
        mean += pw[i];
    }
    mean /= static_cast<double>(n);
    // Delete-one jackknife of the mean: reduces to sum (x_i - mean)^2 / (n(n-1)).
    double ss = 0.0;
    for (double x : pw) ss += (x - mean) * (x - mean);
    MomentEstimate e;
    e.mean = mean;
    e.jackknife_se = n > 1 ? std::sqrt(ss / (static_cast<double>(n) * static_cast<double>(n - 1))) : 0.0;
    e.trials = n;
    e.power = power;
    return e;
}

MomentEstimate empirical_moment(const std::function<double(RngStream&)>& sampler, std::uint64_t power,
                                std::uint64_t trials, std::uint64_t master_seed,
                                std::uint64_t stream_base, int workers) {
    if (trials < 1000) throw std::invalid_argument("empirical_moment: need at least 1000 trials");
    if (power > 32 || power == 0)
        throw std::invalid_argument("empirical_moment: power must be in [1, 32]");
    std::vector<double> xs(trials);
    parallel_trials(trials, workers, [&](std::size_t i) {
        RngStream rng(master_seed, stream_base + i);
        xs[i] = sampler(rng);
    });
    return moment_from_samples(xs, power);
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t ia = 0, ib = 0;
    double ks = 0.0;
    while (ia < a.size() && ib < b.size()) {
        const double x = std::min(a[ia], b[ib]);
        while (ia < a.size() && a[ia] <= x) ++ia;
        while (ib < b.size() && b[ib] <= x) ++ib;
        ks = std::max(ks, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
    }
    return ks;
}

double ks_critical_value(double alpha, std::size_t n, std::size_t m) {
    double c;
    if (alpha == 0.01)
        c = 1.6276236307187293;  // sqrt(-ln(alpha/2)/2)
    else if (alpha == 0.05)
        c = 1.3581015157406195;
    else
        c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return c * std::sqrt((nn + mm) / (nn * mm));
}

}  // namespace qjl
