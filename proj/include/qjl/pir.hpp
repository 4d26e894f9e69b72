#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qjl/jl.hpp"
#include "qjl/rng.hpp"
#include "qjl/types.hpp"

namespace qjl {

/// Two-party membership query: Alice holds S (|S| <= n), Bob holds x and
/// learns whether x is in S while his message, a unitary name plus measured
/// block names, stays nearly independent of x.
struct PirParams {
    std::size_t m = 0;        // universe size, power of 2
    std::size_t n = 0;        // max set size
    std::size_t d2 = 0;       // block dimension, divides m
    double eps = 0.0;         // JL epsilon knob (reporting only; see README)
    std::size_t c_rep = 16;   // reps = c_rep * n^2

    enum class UnitaryKind { haar, circuit };
    UnitaryKind kind = UnitaryKind::haar;
    std::size_t circuit_size = 0;  // gates, when kind == circuit

    std::size_t reps() const { return c_rep * n * n; }
    double threshold() const { return 0.5 + 0.2 / static_cast<double>(n); }
    std::size_t num_blocks() const { return m / d2; }

    void validate() const;
};

/// |S> = |S|^{-1/2} sum_{y in S} |y>, elements 1-based in [m].
StateVector membership_state(const std::vector<std::size_t>& s, std::size_t m);

/// Alice's projection for one block name; null flags a zero-mass projection
/// (possible only for block names Bob never sampled).
struct NullableState {
    StateVector state;
    bool null = false;
};

/// Bob's first phase: reps() independent block measurements of U|x> under the
/// same U. Returns the block names and the collapsed states.
struct BobPhase1 {
    std::vector<std::size_t> block_names;
    std::vector<StateVector> collapsed;
};
BobPhase1 bob_phase1(std::size_t x, const UnitaryApplier& u, const PirParams& params, RngStream& rng);

/// Alice's reply: normalized Pi_j U |S> for each received block name.
std::vector<NullableState> alice_respond(const std::vector<std::size_t>& s, const UnitaryApplier& u,
                                         const std::vector<std::size_t>& block_names,
                                         const PirParams& params);

/// SWAP test: 1 with probability 1/2 + |<a|b>|^2 / 2, sampled from the exact
/// overlap. Null states count as overlap 0.
int swap_test(const StateVector& a, const StateVector& b, RngStream& rng);
int swap_test(const StateVector& a, const NullableState& b, RngStream& rng);

/// True iff the success fraction strictly exceeds 1/2 + 0.2/n.
bool bob_decide(const std::vector<int>& swap_outcomes, std::size_t n);

struct ProtocolTranscript {
    std::uint64_t unitary_seed = 0;  // the public coin
    std::size_t circuit_size = 0;    // 0 for a Haar unitary
    std::vector<std::size_t> block_names;
    std::vector<StateVector> alice_states;
    std::vector<bool> alice_null;
    std::vector<int> swap_outcomes;
    double success_fraction = 0.0;
    bool decision = false;

    // Message accounting: descriptor bits + reps * log2(m/d2) classical bits
    // from Bob, reps * log2(d2) qubits from Alice.
    std::size_t bob_bits = 0;
    std::size_t alice_qubits = 0;
};

/// Executes the full three-step protocol; deterministic given master_seed.
ProtocolTranscript run_protocol(const std::vector<std::size_t>& s, std::size_t x,
                                const PirParams& params, std::uint64_t master_seed);

/// Max over probe elements of the l1 distance between the empirical
/// block-name distribution of Bob's message (under the unitary drawn from
/// unitary_seed) and uniform, plus a sampling-noise estimate.
struct PrivacyEstimate {
    double metric = 0.0;
    double sampling_noise = 0.0;  // expected l1 noise floor at this run count
    std::vector<double> per_probe;
};
PrivacyEstimate privacy_metric(const PirParams& params, std::uint64_t unitary_seed,
                               const std::vector<std::size_t>& probe_elements,
                               std::size_t runs_per_probe);

nlohmann::json transcript_to_json(const ProtocolTranscript& t, bool include_states = false);
std::string transcript_csv_header();
std::string transcript_csv_row(const ProtocolTranscript& t);

}  // namespace qjl
