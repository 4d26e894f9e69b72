#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qjl/circuits.hpp"
#include "qjl/rng.hpp"
#include "qjl/sampling.hpp"
#include "qjl/types.hpp"

namespace qjl {

/// Non-owning view of "some fixed unitary applied to state vectors": a dense
/// matrix, a gate circuit, or a factored Haar unitary. The referenced object
/// must outlive the view.
class UnitaryApplier {
public:
    UnitaryApplier(const Matrix& u);
    UnitaryApplier(const GateCircuit& c);
    UnitaryApplier(const HaarAction& h);

    std::size_t dim() const;
    StateVector operator()(const StateVector& v) const;

private:
    const Matrix* matrix_ = nullptr;
    const GateCircuit* circuit_ = nullptr;
    const HaarAction* action_ = nullptr;
};

/// T(v) = sqrt(d1/d2) * (first block of U v): the dimension-reducing map whose
/// output norm concentrates around ||v||.
CVector classical_jl(std::span<const cplx> v, const Matrix& u, const BlockStructure& bs);

/// Exact Born probabilities (||Pi_j U v||^2)_j over the block names.
std::vector<double> block_probability_vector(const StateVector& v, const UnitaryApplier& u,
                                             const BlockStructure& bs);

/// One block measurement of U v.
struct JLOutcome {
    std::size_t block_index = 0;      // 1-based
    double block_probability = 0.0;   // ||Pi_j U v||^2
    StateVector collapsed_state;      // Pi_j U v / ||Pi_j U v||
};

/// Applies u to v, samples a block name from the exact Born distribution and
/// collapses. v must be normalized.
JLOutcome quantum_jl_measure(const StateVector& v, const UnitaryApplier& u, const BlockStructure& bs,
                             RngStream& rng);

/// Complex inner product reconstructed from norms only:
///   Re<u|w> = (||u||^2 + ||w||^2 - ||u - w||^2) / 2
///   Im<u|w> = (||u - i w||^2 - ||u||^2 - ||w||^2) / 2
/// with the conjugate-linear-in-first-argument convention. Agrees with
/// inner_product to rounding error.
cplx polarization_inner_product(std::span<const cplx> u, std::span<const cplx> w);

/// Per-block norm and pairwise inner-product preservation check for a state
/// family: every block j and pair (i, i') is examined (not just a sampled
/// block). Norm band is multiplicative, (1 +- eps) sqrt(d2/d1); inner-product
/// band is additive, +- 8 eps around the ambient inner product. Cells with
/// exactly zero block mass are reported unreachable and excluded.
struct PreservationReport {
    std::size_t d1 = 0, d2 = 0, num_blocks = 0, n_states = 0;
    double eps = 0.0;
    double norm_lo = 0.0, norm_hi = 0.0;  // absolute band on ||Pi_j U v_i||
    double ip_halfwidth = 0.0;            // 8 eps

    // block_norms[j-1][i]: ||Pi_j U v_i||.
    std::vector<std::vector<double>> block_norms;
    // pair_ip_dev[j-1][p]: |<v_i(j)|v_i'(j)> - <v_i|v_i'>| for pair p (i < i',
    // lexicographic); collapsed products use the polarization identity.
    std::vector<std::vector<double>> pair_ip_dev;

    double max_norm_rel_dev = 0.0;  // max | ||Pi_j U v_i|| / sqrt(d2/d1) - 1 |
    double max_ip_dev = 0.0;

    std::vector<std::pair<std::size_t, std::size_t>> norm_violations;  // (state i, block j), 1-based
    std::vector<std::array<std::size_t, 3>> ip_violations;             // (i, i', block j), 1-based
    std::vector<std::pair<std::size_t, std::size_t>> unreachable;      // (state i, block j), 1-based

    bool any_violation() const { return !norm_violations.empty() || !ip_violations.empty(); }
};

PreservationReport pairwise_preservation_report(const std::vector<StateVector>& states,
                                                const UnitaryApplier& u, const BlockStructure& bs,
                                                double eps);

nlohmann::json preservation_report_to_json(const PreservationReport& r);

/// One CSV line: d1,d2,n_states,eps,max_norm_rel_dev,max_ip_dev,
/// norm_violations,ip_violations,unreachable.
std::string preservation_report_csv_row(const PreservationReport& r);
std::string preservation_report_csv_header();

}  // namespace qjl
