#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "qjl/rng.hpp"
#include "qjl/sampling.hpp"
#include "qjl/types.hpp"

namespace qjl {

/// One two-qubit gate on the adjacent pair (pair, pair+1), pair in [1, q-1].
struct Gate {
    std::size_t pair = 1;
    Matrix matrix;  // 4x4 unitary
};

/// Local quantum circuit: ordered two-qubit gates on adjacent pairs.
///
/// Conventions: qubit k (1-based) is bit k-1 of the amplitude index
/// (little-endian), and the 4x4 gate is indexed by the local basis value
/// 2*b_{pair+1} + b_pair, row-major.
struct GateCircuit {
    std::size_t num_qubits = 0;
    std::vector<Gate> gates;

    std::size_t size() const { return gates.size(); }
    std::size_t dim() const { return std::size_t{1} << num_qubits; }
};

/// s gates, each on a uniformly random adjacent pair with a Haar-random
/// 4-dimensional gate matrix. Requires q >= 2.
GateCircuit generate_local_random_circuit(std::size_t q, std::size_t s, RngStream& rng);

/// Applies the gates in order; O(s * 2^q), the 2^q x 2^q matrix is never
/// materialized. Norm preserved to 1e-10.
void apply_circuit_in_place(const GateCircuit& c, std::span<cplx> state);
StateVector apply_circuit(const GateCircuit& c, const StateVector& v);

/// Dense 2^q-dimensional matrix of the whole circuit; guarded to q <= 12.
Matrix circuit_to_unitary(const GateCircuit& c);

/// JSON form: {"num_qubits": q, "gates": [{"pair": p, "matrix": [[re, im] x 16]}]}.
nlohmann::json circuit_to_json(const GateCircuit& c);
GateCircuit circuit_from_json(const nlohmann::json& j);

}  // namespace qjl
