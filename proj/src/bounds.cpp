#include "qjl/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace qjl {

namespace {

const double kLn2 = std::log(2.0);

double log_add_exp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

void require_positive_eps(double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("bound: eps must be > 0");
}

}  // namespace

ChiSquareTailBound chi_square_tail_bound(std::uint64_t n, double eps) {
    if (n == 0) throw std::invalid_argument("chi_square_tail_bound: n must be >= 1");
    require_positive_eps(eps);
    ChiSquareTailBound b;
    const double nn = static_cast<double>(n);
    b.sharp = std::exp(kLn2 + nn * (-eps / 2.0 + 0.5 * std::log1p(eps)));
    if (eps <= 1.0) b.simplified = std::exp(kLn2 - eps * eps * nn / 8.0);
    return b;
}

double haar_projection_tail_bound(std::uint64_t d2, double eps) {
    if (d2 == 0) throw std::invalid_argument("haar_projection_tail_bound: d2 must be >= 1");
    require_positive_eps(eps);
    return 4.0 * std::exp(-eps * eps * static_cast<double>(d2) / 16.0);
}

double haar_projection_tail_bound_large_eps(std::uint64_t d2, double eps) {
    if (d2 == 0) throw std::invalid_argument("haar_projection_tail_bound_large_eps: d2 must be >= 1");
    if (!(eps > 1.0)) throw std::invalid_argument("haar_projection_tail_bound_large_eps: eps must be > 1");
    return 2.0 * std::exp(-eps * eps * static_cast<double>(d2) / 4.0);
}

double design_projection_tail_bound(std::uint64_t d2, double eps) {
    if (d2 == 0) throw std::invalid_argument("design_projection_tail_bound: d2 must be >= 1");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("design_projection_tail_bound: eps must be in (0, 1)");
    return 64.0 * std::exp(-eps * eps * static_cast<double>(d2) / 1024.0);
}

double moment_bound_f_log(std::uint64_t d1, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("moment_bound_f: m must be >= 1");
    if (d1 == 0) throw std::invalid_argument("moment_bound_f: d1 must be >= 1");
    const double mm = static_cast<double>(m);
    return 2.0 * kLn2 + mm * (4.0 * kLn2 + std::log(mm) - std::log(static_cast<double>(d1)));
}

double moment_bound_f(std::uint64_t d1, std::uint64_t m) { return std::exp(moment_bound_f_log(d1, m)); }

double moment_bound_g_log(std::uint64_t d1, std::uint64_t d2, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("moment_bound_g: m must be >= 1");
    if (d2 == 0 || d2 >= d1) throw std::invalid_argument("moment_bound_g: need 0 < d2 < d1");
    const double mm = static_cast<double>(m);
    const double ld1 = std::log(static_cast<double>(d1));
    const double ld2 = std::log(static_cast<double>(d2));
    const double t1 = 4.0 * kLn2 + mm * (6.0 * kLn2 + std::log(mm) + ld2 - 2.0 * ld1);
    const double t2 = 4.0 * kLn2 + mm * (6.0 * kLn2 + 2.0 * ld2 - 2.0 * ld1) - static_cast<double>(d2) / 4.0;
    return log_add_exp(t1, t2);
}

double moment_bound_g(std::uint64_t d1, std::uint64_t d2, std::uint64_t m) {
    return std::exp(moment_bound_g_log(d1, d2, m));
}

double tpe_moment_gap_bound_log(std::uint64_t d2, std::uint64_t m, double lambda_log) {
    if (m == 0) throw std::invalid_argument("tpe_moment_gap_bound: m must be >= 1");
    if (d2 == 0) throw std::invalid_argument("tpe_moment_gap_bound: d2 must be >= 1");
    return static_cast<double>(m) * std::log(static_cast<double>(d2)) + lambda_log;
}

DesignParams compute_design_params(std::uint64_t d1, std::uint64_t d2, double eps, double lambda0,
                                   double s_base) {
    if (d2 == 0 || d2 >= d1) throw std::invalid_argument("compute_design_params: need 0 < d2 < d1");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("compute_design_params: eps must be in (0, 1)");
    if (!(lambda0 > 0.0 && lambda0 < 1.0))
        throw std::invalid_argument("compute_design_params: lambda0 must be in (0, 1)");
    if (!(s_base > 1.0)) throw std::invalid_argument("compute_design_params: s_base must be > 1");

    DesignParams p;
    p.d1 = d1;
    p.d2 = d2;
    p.eps = eps;
    p.lambda0 = lambda0;
    p.s_base = s_base;

    const double e2d2 = eps * eps * static_cast<double>(d2);
    p.t = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::ceil(e2d2 / 512.0)));
    p.m = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(e2d2 / 1024.0)));

    const double ld1 = std::log(static_cast<double>(d1));
    const double ld2 = std::log(static_cast<double>(d2));
    const double tt = static_cast<double>(p.t);
    p.lambda_target_log = (tt / 2.0) * (2.0 * kLn2 + 2.0 * std::log(eps) + ld2 - 2.0 * ld1) - tt / 2.0;

    const double log_inv_l0 = -std::log(lambda0);
    const double mm = static_cast<double>(p.m);
    p.k_real = (2.0 * mm * ld1 + 2.0 * mm * std::log(1.0 / eps) + e2d2 / 1024.0) / log_inv_l0;
    p.iterations_k = static_cast<std::uint64_t>(std::ceil(p.k_real));
    p.k_upper_bound = static_cast<double>(d2) * ld1 / (256.0 * log_inv_l0);
    p.k_bound_satisfied = p.k_real <= p.k_upper_bound;
    p.log_s_bound = static_cast<double>(p.iterations_k) * std::log(s_base);
    return p;
}

namespace {

void validate_chain_args(std::uint64_t d1, std::uint64_t d2, double eps, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("tail_chain: m must be >= 1");
    if (d2 == 0 || d2 >= d1) throw std::invalid_argument("tail_chain: need 0 < d2 < d1");
    require_positive_eps(eps);
}

}  // namespace

TailChainTerms tail_chain_lhs(std::uint64_t d1, std::uint64_t d2, double eps, std::uint64_t m,
                              double lambda_log) {
    validate_chain_args(d1, d2, eps, m);
    const double mm = static_cast<double>(m);
    const double ld1 = std::log(static_cast<double>(d1));
    const double ld2 = std::log(static_cast<double>(d2));
    const double le = std::log(eps);
    const double prefactor = 2.0 * mm * (ld1 - kLn2 - le - ld2);
    TailChainTerms t;
    t.term_moment_log = prefactor + 4.0 * kLn2 + mm * (6.0 * kLn2 + std::log(mm) + ld2 - 2.0 * ld1);
    t.term_exp_log = prefactor + 4.0 * kLn2 + mm * (6.0 * kLn2 + 2.0 * ld2 - 2.0 * ld1) -
                     static_cast<double>(d2) / 4.0;
    t.term_lambda_log = prefactor + mm * ld2 + lambda_log;
    return t;
}

TailChainTerms tail_chain_rhs(std::uint64_t d1, std::uint64_t d2, double eps, std::uint64_t m,
                              double lambda_log) {
    validate_chain_args(d1, d2, eps, m);
    const double mm = static_cast<double>(m);
    const double ld1 = std::log(static_cast<double>(d1));
    const double ld2 = std::log(static_cast<double>(d2));
    const double le = std::log(eps);
    TailChainTerms t;
    t.term_moment_log = 4.0 * kLn2 + mm * (4.0 * kLn2 + std::log(mm) - 2.0 * le - ld2);
    t.term_exp_log = 4.0 * kLn2 + mm * (4.0 * kLn2 - 2.0 * le) - static_cast<double>(d2) / 4.0;
    t.term_lambda_log = mm * (2.0 * ld1 - 2.0 * kLn2 - 2.0 * le - ld2) + lambda_log;
    return t;
}

}  // namespace qjl
