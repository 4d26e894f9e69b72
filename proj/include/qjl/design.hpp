#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "qjl/circuits.hpp"
#include "qjl/rng.hpp"
#include "qjl/types.hpp"

namespace qjl {

/// Finite set of d x d unitaries, either explicit (small d) or represented by
/// a circuit family sampled by seed (large d).
struct FiniteDesign {
    std::size_t dim = 0;
    std::vector<Matrix> unitaries;
    std::function<GateCircuit(std::uint64_t)> circuit_sampler;
    std::size_t cardinality = 0;  // 0 for sampled families

    bool is_explicit() const { return !unitaries.empty(); }

    static FiniteDesign from_unitaries(std::vector<Matrix> us);
    static FiniteDesign from_circuit_family(std::size_t q, std::size_t s, std::uint64_t master_seed);
};

/// Matrix of M |-> E_V[V^{ox t} M (V^dag)^{ox t}] acting on column-stacked
/// operators; a d^{2t} x d^{2t} complex matrix.
struct MomentSuperoperator {
    std::size_t dim = 0;
    std::size_t order = 0;
    Matrix matrix;

    std::size_t op_dim() const;  // d^t
};

/// Column-stacking vectorization helpers (vec(M)[c * n + r] = M(r, c)).
CVector vec(const Matrix& m);
Matrix unvec(std::span<const cplx> v, std::size_t n);

/// Applies the superoperator to a d^t x d^t operator.
Matrix apply_superoperator(const MomentSuperoperator& s, const Matrix& m);

/// Exact average of the t-fold conjugation superoperators of an explicit
/// design. Guarded to d^{2t} <= 2^16.
MomentSuperoperator design_moment_superoperator(const FiniteDesign& design, std::size_t t);

/// Haar t-fold twirl. t = 1: M |-> Tr(M) I/d. t = 2: orthogonal projector
/// onto span{I, SWAP} (the t = 2 commutant), requires d >= 2.
MomentSuperoperator haar_moment_superoperator(std::size_t d, std::size_t t);

/// Monte-Carlo estimate of the Haar t-fold twirl from `samples` Haar draws;
/// entrywise standard error is about 1/sqrt(samples). Cross-validates the
/// closed forms above.
MomentSuperoperator haar_moment_superoperator_mc(std::size_t d, std::size_t t, std::size_t samples,
                                                 RngStream& rng);

/// Largest singular value of (design twirl - Haar twirl): the smallest valid
/// TPE lambda for this design and order.
double estimate_tpe_lambda(const FiniteDesign& design, std::size_t t);

/// k-fold product design {V_{i1} ... V_{ik}}. Explicit designs are
/// materialized (guard s^k <= 2^14); circuit families concatenate k
/// independently seeded circuits.
FiniteDesign iterate_design(const FiniteDesign& design, std::size_t times);

/// Balanced degree-t monomial: t unconjugated entry picks u_{ij} and t
/// conjugated picks conj(u_{kl}); indices 1-based.
struct BalancedMonomial {
    std::vector<std::pair<std::size_t, std::size_t>> plain;
    std::vector<std::pair<std::size_t, std::size_t>> conjugated;
};

struct MonomialError {
    double gap = 0.0;            // |E_design[M(V)] - E_Haar[M(U)]|
    double implied_alpha = 0.0;  // gap * d^t
};

/// Design-vs-Haar gap for one balanced monomial. t = 1 uses the analytic Haar
/// moment E[u_ij conj(u_kl)] = delta_ik delta_jl / d; t = 2 estimates the
/// Haar side by Monte-Carlo with `mc_samples` draws from `rng`.
MonomialError monomial_design_error(const FiniteDesign& design, const BalancedMonomial& monomial,
                                    std::size_t t);
MonomialError monomial_design_error(const FiniteDesign& design, const BalancedMonomial& monomial,
                                    std::size_t t, std::size_t mc_samples, RngStream& rng);

/// {I, X, Y, Z}: an exact 1-design.
std::vector<Matrix> pauli_group_1q();

/// The 24 single-qubit Clifford unitaries (up to global phase): an exact
/// 2-design. Generated as the closure of {H, S} products.
std::vector<Matrix> clifford_group_1q();

}  // namespace qjl
