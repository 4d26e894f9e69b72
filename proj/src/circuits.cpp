#include "qjl/circuits.hpp"

#include <stdexcept>

#include <json.hpp>

namespace qjl {

GateCircuit generate_local_random_circuit(std::size_t q, std::size_t s, RngStream& rng) {
    if (q < 2) throw std::invalid_argument("generate_local_random_circuit: need q >= 2");
    GateCircuit c;
    c.num_qubits = q;
    c.gates.reserve(s);
    for (std::size_t i = 0; i < s; ++i) {
        Gate g;
        g.pair = 1 + rng.uniform_index(q - 1);
        g.matrix = sample_haar_unitary(4, rng);
        c.gates.push_back(std::move(g));
    }
    return c;
}

namespace {

void apply_adjacent_gate(const Matrix& u, std::size_t pair, std::span<cplx> state) {
    const std::size_t low_bit = pair - 1;  // qubit `pair` = bit pair-1
    const std::size_t s0 = std::size_t{1} << low_bit;
    const std::size_t s1 = s0 << 1;
    const std::size_t dim = state.size();
    const cplx* m = u.data();
    for (std::size_t base = 0; base < dim; base += (s1 << 1)) {
        for (std::size_t lo = 0; lo < s0; ++lo) {
            cplx* p0 = state.data() + base + lo;            // b1 b0 = 00
            cplx* p1 = p0 + s0;                             // 01
            cplx* p2 = p0 + s1;                             // 10
            cplx* p3 = p0 + s1 + s0;                        // 11
            const cplx a0 = *p0, a1 = *p1, a2 = *p2, a3 = *p3;
            *p0 = m[0] * a0 + m[1] * a1 + m[2] * a2 + m[3] * a3;
            *p1 = m[4] * a0 + m[5] * a1 + m[6] * a2 + m[7] * a3;
            *p2 = m[8] * a0 + m[9] * a1 + m[10] * a2 + m[11] * a3;
            *p3 = m[12] * a0 + m[13] * a1 + m[14] * a2 + m[15] * a3;
        }
    }
}

}  // namespace

void apply_circuit_in_place(const GateCircuit& c, std::span<cplx> state) {
    if (state.size() != c.dim()) throw std::invalid_argument("apply_circuit: dimension mismatch");
    for (const Gate& g : c.gates) {
        if (g.pair < 1 || g.pair >= c.num_qubits)
            throw std::invalid_argument("apply_circuit: gate pair index out of range");
        apply_adjacent_gate(g.matrix, g.pair, state);
    }
}

StateVector apply_circuit(const GateCircuit& c, const StateVector& v) {
    StateVector out = v;
    apply_circuit_in_place(c, out.amplitudes());
    return out;
}

Matrix circuit_to_unitary(const GateCircuit& c) {
    if (c.num_qubits > 12) throw std::invalid_argument("circuit_to_unitary: q > 12 refused");
    const std::size_t d = c.dim();
    Matrix u(d, d);
    CVector col(d);
    for (std::size_t j = 0; j < d; ++j) {
        std::fill(col.begin(), col.end(), cplx(0.0));
        col[j] = 1.0;
        apply_circuit_in_place(c, col);
        for (std::size_t i = 0; i < d; ++i) u(i, j) = col[i];
    }
    return u;
}

nlohmann::json circuit_to_json(const GateCircuit& c) {
    nlohmann::json gates = nlohmann::json::array();
    for (const Gate& g : c.gates) {
        nlohmann::json entries = nlohmann::json::array();
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t cc = 0; cc < 4; ++cc) {
                const cplx v = g.matrix(r, cc);
                entries.push_back({v.real(), v.imag()});
            }
        gates.push_back({{"pair", g.pair}, {"matrix", entries}});
    }
    return {{"num_qubits", c.num_qubits}, {"gates", gates}};
}

GateCircuit circuit_from_json(const nlohmann::json& j) {
    GateCircuit c;
    c.num_qubits = j.at("num_qubits").get<std::size_t>();
    if (c.num_qubits < 2) throw std::invalid_argument("circuit_from_json: need q >= 2");
    for (const auto& jg : j.at("gates")) {
        Gate g;
        g.pair = jg.at("pair").get<std::size_t>();
        if (g.pair < 1 || g.pair >= c.num_qubits)
            throw std::invalid_argument("circuit_from_json: pair index out of range");
        const auto& entries = jg.at("matrix");
        if (entries.size() != 16) throw std::invalid_argument("circuit_from_json: matrix needs 16 entries");
        g.matrix = Matrix(4, 4);
        for (std::size_t k = 0; k < 16; ++k)
            g.matrix(k / 4, k % 4) = cplx(entries[k].at(0).get<double>(), entries[k].at(1).get<double>());
        if (!is_unitary(g.matrix)) throw std::invalid_argument("circuit_from_json: gate is not unitary");
        c.gates.push_back(std::move(g));
    }
    return c;
}

}  // namespace qjl
