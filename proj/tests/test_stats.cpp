#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qjl/stats.hpp"

using namespace qjl;

TEST_CASE("wilson interval frozen values") {
    // Frozen via 30-digit evaluation of the score interval at z = 2.5758293035489004.
    const WilsonInterval a = wilson_interval(5, 100);
    CHECK(a.lower == doctest::Approx(0.0168483160426007).epsilon(1e-12));
    CHECK(a.upper == doctest::Approx(0.1391503029016400).epsilon(1e-12));

    const WilsonInterval zero = wilson_interval(0, 2000);
    CHECK(zero.lower == 0.0);
    CHECK(zero.upper == doctest::Approx(0.00330647922661958).epsilon(1e-12));

    const WilsonInterval c = wilson_interval(147, 2000);
    CHECK(c.lower == doctest::Approx(0.0598386342572189).epsilon(1e-12));
    CHECK(c.upper == doctest::Approx(0.0899817925230876).epsilon(1e-12));

    CHECK_THROWS_AS((void)wilson_interval(3, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)wilson_interval(5, 4), std::invalid_argument);
}

TEST_CASE("empirical tail harness") {
    // Sampler that always lands in the band.
    const TailReport ok = empirical_tail([](RngStream&) { return 0.0; }, Band{-1.0, 1.0}, 500, 0.5,
                                         1, 0, 2);
    CHECK(ok.failures == 0);
    CHECK(ok.empirical_rate == 0.0);
    CHECK(ok.passed);

    // Fair-coin violations: rate near 1/2.
    const TailReport coin = empirical_tail(
        [](RngStream& rng) { return rng.uniform() < 0.5 ? 10.0 : 0.0; }, Band{-1.0, 1.0}, 10000, 0.6,
        2, 0, 2);
    CHECK(std::abs(coin.empirical_rate - 0.5) < 0.02);
    CHECK(coin.passed);
    CHECK(coin.wilson_ci_lower < 0.5);
    CHECK(coin.wilson_ci_upper > 0.5);

    // Statistically violated bound fails.
    const TailReport bad = empirical_tail(
        [](RngStream& rng) { return rng.uniform() < 0.5 ? 10.0 : 0.0; }, Band{-1.0, 1.0}, 10000, 0.1,
        3, 0, 2);
    CHECK_FALSE(bad.passed);

    // Vacuous bounds pass trivially.
    const TailReport vac = empirical_tail([](RngStream&) { return 10.0; }, Band{-1.0, 1.0}, 200, 1.5,
                                          4, 0, 2);
    CHECK(vac.vacuous);
    CHECK(vac.passed);
    CHECK(vac.empirical_rate == 1.0);

    CHECK_THROWS_AS((void)empirical_tail([](RngStream&) { return 0.0; }, Band{0.0, 1.0}, 50, 0.5, 1,
                                         0, 1),
                    std::invalid_argument);
}

TEST_CASE("tail harness is worker-count invariant") {
    auto sampler = [](RngStream& rng) { return rng.gaussian(); };
    const TailReport w1 = empirical_tail(sampler, Band{-1.5, 1.5}, 4000, 0.2, 77, 0, 1);
    const TailReport w4 = empirical_tail(sampler, Band{-1.5, 1.5}, 4000, 0.2, 77, 0, 4);
    CHECK(w1.failures == w4.failures);
    CHECK(w1.empirical_rate == w4.empirical_rate);
    CHECK(w1.wilson_ci_lower == w4.wilson_ci_lower);
}

TEST_CASE("empirical moment") {
    const MomentEstimate c = empirical_moment([](RngStream&) { return 2.0; }, 4, 1000, 1, 0, 2);
    CHECK(c.mean == doctest::Approx(16.0).epsilon(1e-14));
    CHECK(c.jackknife_se == 0.0);

    // Standard error shrinks like 1/sqrt(trials).
    auto unif = [](RngStream& rng) { return rng.uniform(); };
    const MomentEstimate small = empirical_moment(unif, 2, 1000, 5, 0, 2);
    const MomentEstimate big = empirical_moment(unif, 2, 4000, 6, 0, 2);
    const double ratio = small.jackknife_se / big.jackknife_se;
    CHECK(ratio > 1.5);
    CHECK(ratio < 2.5);

    CHECK_THROWS_AS((void)empirical_moment(unif, 2, 500, 1, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)empirical_moment(unif, 40, 2000, 1, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)empirical_moment(unif, 0, 2000, 1, 0, 1), std::invalid_argument);
}

TEST_CASE("jackknife SE matches the closed form for the mean") {
    const std::vector<double> xs{1.0, 2.0, 3.0, 4.0, 10.0};
    const MomentEstimate e = moment_from_samples(xs, 1);
    const double m = 4.0;
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    CHECK(e.mean == doctest::Approx(m).epsilon(1e-14));
    CHECK(e.jackknife_se == doctest::Approx(std::sqrt(ss / (5.0 * 4.0))).epsilon(1e-14));
}

TEST_CASE("two-sample KS statistic") {
    const std::vector<double> a{1.0, 2.0, 3.0, 4.0};
    CHECK(ks_two_sample(a, a) == 0.0);

    const std::vector<double> lo{1.0, 2.0, 3.0}, hi{10.0, 11.0, 12.0};
    CHECK(ks_two_sample(lo, hi) == doctest::Approx(1.0).epsilon(1e-14));

    // Same-law samples stay below the 1% critical value (seeded).
    RngStream rng(123, 0);
    std::vector<double> x(2000), y(2000);
    for (double& v : x) v = rng.gaussian();
    for (double& v : y) v = rng.gaussian();
    CHECK(ks_two_sample(x, y) < ks_critical_value(0.01, x.size(), y.size()));

    CHECK(ks_critical_value(0.01, 100, 100) ==
          doctest::Approx(1.6276236307187293 * std::sqrt(0.02)).epsilon(1e-12));
}
