#pragma once

#include <cstdint>
#include <optional>

namespace qjl {

/// Chi-square deviation bound for Pr[sum of n squared normals outside
/// (1 +- eps) n]. sharp = 2 (e^{-eps/2} sqrt(1+eps))^n always; the simplified
/// form 2 e^{-eps^2 n / 8} is valid (and dominates sharp) only for eps <= 1.
struct ChiSquareTailBound {
    double sharp = 0.0;
    std::optional<double> simplified;
};
ChiSquareTailBound chi_square_tail_bound(std::uint64_t n, double eps);

/// Haar projection bound: 4 exp(-eps^2 d2 / 16) for any eps > 0.
double haar_projection_tail_bound(std::uint64_t d2, double eps);

/// Tighter upper-tail-only variant for eps > 1: 2 exp(-eps^2 d2 / 4).
double haar_projection_tail_bound_large_eps(std::uint64_t d2, double eps);

/// Design projection bound: 64 exp(-eps^2 d2 / 1024), 0 < eps < 1.
double design_projection_tail_bound(std::uint64_t d2, double eps);

/// E[f^{2m}] bound 4 (16 m / d1)^m for f = projected-norm deviation.
double moment_bound_f(std::uint64_t d1, std::uint64_t m);
double moment_bound_f_log(std::uint64_t d1, std::uint64_t m);

/// Two-term E[g^{2m}] bound 16 (64 m d2 / d1^2)^m + 16 (64 d2^2 / d1^2)^m e^{-d2/4}
/// for g = projected-mass deviation.
double moment_bound_g(std::uint64_t d1, std::uint64_t d2, std::uint64_t m);
double moment_bound_g_log(std::uint64_t d1, std::uint64_t d2, std::uint64_t m);

/// log of the design-vs-Haar gap bound d2^m * lambda for the 2m-th g moment.
double tpe_moment_gap_bound_log(std::uint64_t d2, std::uint64_t m, double lambda_log);

/// Design parameter bundle for the block-projection concentration statement:
/// order t, TPE quality lambda (stored as a natural log; the value itself
/// underflows doubles at realistic t), moment index m and the sequential
/// iteration count k needed to reach lambda from a base TPE of quality
/// lambda0. t and m are rounded up with floors (t >= 2, m >= 1) so the
/// formulas stay usable at desk scale.
struct DesignParams {
    std::uint64_t d1 = 0, d2 = 0;
    double eps = 0.0;
    std::uint64_t t = 0;
    std::uint64_t m = 0;
    double lambda_target_log = 0.0;  // (t/2) ln(4 eps^2 d2 / d1^2) - t/2
    double lambda0 = 0.0;
    double s_base = 0.0;
    double k_real = 0.0;             // iteration count before rounding up
    std::uint64_t iterations_k = 0;
    double k_upper_bound = 0.0;      // 2^-8 d2 ln d1 / ln(1/lambda0)
    bool k_bound_satisfied = false;
    double log_s_bound = 0.0;        // k * ln(s_base), the concrete stand-in for log s
};

/// Requires 0 < eps < 1, d2 < d1, 0 < lambda0 < 1, s_base > 1.
DesignParams compute_design_params(std::uint64_t d1, std::uint64_t d2, double eps, double lambda0,
                                   double s_base = 2.0);

/// Both algebraic routes of the tail chain
///   (d1 / (2 eps d2))^{2m} (E[g^{2m}] bound + d2^m lambda)
///   = 16 (16 m / (eps^2 d2))^m + 16 (16 / eps^2)^m e^{-d2/4}
///     + (d1^2 / (4 eps^2 d2))^m lambda,
/// term by term in log domain. The two must agree to rounding error; tests
/// pin that down to 1e-12 relative.
struct TailChainTerms {
    double term_moment_log = 0.0;
    double term_exp_log = 0.0;
    double term_lambda_log = 0.0;
};
TailChainTerms tail_chain_lhs(std::uint64_t d1, std::uint64_t d2, double eps, std::uint64_t m,
                              double lambda_log);
TailChainTerms tail_chain_rhs(std::uint64_t d1, std::uint64_t d2, double eps, std::uint64_t m,
                              double lambda_log);

}  // namespace qjl
