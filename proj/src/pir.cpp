#include "qjl/pir.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qjl/circuits.hpp"

namespace qjl {

namespace {

bool power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::size_t log2_exact(std::size_t v) { return static_cast<std::size_t>(std::countr_zero(v)); }

void check_element(std::size_t x, std::size_t m, const char* who) {
    if (x < 1 || x > m) throw std::out_of_range(std::string(who) + ": element outside [1, m]");
}

}  // namespace

void PirParams::validate() const {
    if (!power_of_two(m)) throw std::invalid_argument("PirParams: m must be a power of 2");
    if (n == 0) throw std::invalid_argument("PirParams: n must be >= 1");
    if (d2 == 0 || m % d2 != 0 || d2 >= m)
        throw std::invalid_argument("PirParams: d2 must divide m and be < m");
    if (c_rep == 0) throw std::invalid_argument("PirParams: c_rep must be >= 1");
    if (kind == UnitaryKind::circuit && m < 4)
        throw std::invalid_argument("PirParams: circuit unitary needs at least 2 qubits");
}

StateVector membership_state(const std::vector<std::size_t>& s, std::size_t m) {
    if (s.empty()) throw std::invalid_argument("membership_state: empty set");
    std::vector<std::size_t> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("membership_state: duplicate element");
    StateVector v(m);
    const double amp = 1.0 / std::sqrt(static_cast<double>(s.size()));
    for (std::size_t y : s) {
        check_element(y, m, "membership_state");
        v[y - 1] = amp;
    }
    return v;
}

BobPhase1 bob_phase1(std::size_t x, const UnitaryApplier& u, const PirParams& params, RngStream& rng) {
    params.validate();
    check_element(x, params.m, "bob_phase1");
    const BlockStructure bs(params.m, params.d2);
    const StateVector ket_x = StateVector::basis(params.m, x - 1);

    // All reps share the same U and |x>, so the Born distribution and the
    // collapsed state per block are computed once.
    const StateVector w = u(ket_x);
    std::vector<double> probs(bs.num_blocks, 0.0);
    for (std::size_t i = 0; i < bs.d1; ++i) probs[i / bs.d2] += std::norm(w[i]);
    std::vector<StateVector> collapsed_by_block(bs.num_blocks);
    for (std::size_t j = 1; j <= bs.num_blocks; ++j) {
        if (probs[j - 1] == 0.0) continue;
        CVector proj = block_project(w, j, bs);
        const double nrm = l2_norm(proj);
        for (cplx& c : proj) c /= nrm;
        collapsed_by_block[j - 1] = StateVector(std::move(proj));
    }

    BobPhase1 out;
    const std::size_t reps = params.reps();
    out.block_names.reserve(reps);
    out.collapsed.reserve(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        const double t = rng.uniform();
        double acc = 0.0;
        std::size_t block = bs.num_blocks;
        for (std::size_t j = 0; j < bs.num_blocks; ++j) {
            acc += probs[j];
            if (t < acc) {
                block = j + 1;
                break;
            }
        }
        while (block > 1 && probs[block - 1] == 0.0) --block;
        out.block_names.push_back(block);
        out.collapsed.push_back(collapsed_by_block[block - 1]);
    }
    return out;
}

std::vector<NullableState> alice_respond(const std::vector<std::size_t>& s, const UnitaryApplier& u,
                                         const std::vector<std::size_t>& block_names,
                                         const PirParams& params) {
    params.validate();
    const BlockStructure bs(params.m, params.d2);
    if (s.size() > params.n) throw std::invalid_argument("alice_respond: |S| exceeds n");
    const StateVector ket_s = membership_state(s, params.m);
    const StateVector w = u(ket_s);

    std::vector<NullableState> out;
    out.reserve(block_names.size());
    for (std::size_t j : block_names) {
        if (j < 1 || j > bs.num_blocks) throw std::out_of_range("alice_respond: invalid block name");
        CVector proj = block_project(w, j, bs);
        const double nrm = l2_norm(proj);
        NullableState ns;
        if (nrm == 0.0) {
            ns.null = true;
            ns.state = StateVector(bs.d2);
        } else {
            for (cplx& c : proj) c /= nrm;
            ns.state = StateVector(std::move(proj));
        }
        out.push_back(std::move(ns));
    }
    return out;
}

int swap_test(const StateVector& a, const StateVector& b, RngStream& rng) {
    if (a.dim() != b.dim()) throw std::invalid_argument("swap_test: dimension mismatch");
    const double overlap2 = std::norm(inner_product(a, b));
    const double p_success = 0.5 + 0.5 * overlap2;
    return rng.uniform() < p_success ? 1 : 0;
}

int swap_test(const StateVector& a, const NullableState& b, RngStream& rng) {
    if (b.null) return rng.uniform() < 0.5 ? 1 : 0;  // overlap 0
    return swap_test(a, b.state, rng);
}

bool bob_decide(const std::vector<int>& swap_outcomes, std::size_t n) {
    if (swap_outcomes.empty()) throw std::invalid_argument("bob_decide: no outcomes");
    if (n == 0) throw std::invalid_argument("bob_decide: n must be >= 1");
    double mean = 0.0;
    for (int b : swap_outcomes) mean += b;
    mean /= static_cast<double>(swap_outcomes.size());
    return mean > 0.5 + 0.2 / static_cast<double>(n);
}

namespace {

struct UnitaryHolder {
    HaarAction* haar = nullptr;
    GateCircuit* circuit = nullptr;
    std::optional<HaarAction> haar_storage;
    std::optional<GateCircuit> circuit_storage;

    UnitaryApplier applier() const {
        if (haar) return UnitaryApplier(*haar);
        return UnitaryApplier(*circuit);
    }
};

UnitaryHolder make_unitary(const PirParams& params, std::uint64_t unitary_seed) {
    UnitaryHolder h;
    RngStream rng(unitary_seed, 0);
    if (params.kind == PirParams::UnitaryKind::haar) {
        h.haar_storage.emplace(params.m, rng);
        h.haar = &*h.haar_storage;
    } else {
        h.circuit_storage.emplace(
            generate_local_random_circuit(log2_exact(params.m), params.circuit_size, rng));
        h.circuit = &*h.circuit_storage;
    }
    return h;
}

}  // namespace

ProtocolTranscript run_protocol(const std::vector<std::size_t>& s, std::size_t x,
                                const PirParams& params, std::uint64_t master_seed) {
    params.validate();
    check_element(x, params.m, "run_protocol");
    if (s.size() > params.n) throw std::invalid_argument("run_protocol: |S| exceeds n");

    RngStream root(master_seed, 0);
    ProtocolTranscript t;
    t.unitary_seed = root.substream(1).next_u64();
    t.circuit_size = params.kind == PirParams::UnitaryKind::circuit ? params.circuit_size : 0;

    const UnitaryHolder holder = make_unitary(params, t.unitary_seed);
    const UnitaryApplier u = holder.applier();

    RngStream measure_rng = root.substream(2);
    BobPhase1 phase1 = bob_phase1(x, u, params, measure_rng);
    t.block_names = std::move(phase1.block_names);

    std::vector<NullableState> replies = alice_respond(s, u, t.block_names, params);

    RngStream swap_rng = root.substream(3);
    t.swap_outcomes.reserve(t.block_names.size());
    std::size_t successes = 0;
    for (std::size_t r = 0; r < t.block_names.size(); ++r) {
        const int bit = swap_test(phase1.collapsed[r], replies[r], swap_rng);
        t.swap_outcomes.push_back(bit);
        successes += static_cast<std::size_t>(bit);
    }
    t.success_fraction = static_cast<double>(successes) / static_cast<double>(t.swap_outcomes.size());
    t.decision = bob_decide(t.swap_outcomes, params.n);

    t.alice_states.reserve(replies.size());
    t.alice_null.reserve(replies.size());
    for (NullableState& ns : replies) {
        t.alice_null.push_back(ns.null);
        t.alice_states.push_back(std::move(ns.state));
    }

    const std::size_t descriptor_bits =
        64 + (params.kind == PirParams::UnitaryKind::circuit ? 64 : 0);
    t.bob_bits = descriptor_bits + params.reps() * log2_exact(params.m / params.d2);
    t.alice_qubits = params.reps() * log2_exact(params.d2);
    return t;
}

PrivacyEstimate privacy_metric(const PirParams& params, std::uint64_t unitary_seed,
                               const std::vector<std::size_t>& probe_elements,
                               std::size_t runs_per_probe) {
    params.validate();
    if (probe_elements.empty()) throw std::invalid_argument("privacy_metric: no probes");
    if (runs_per_probe == 0) throw std::invalid_argument("privacy_metric: runs_per_probe must be >= 1");
    const BlockStructure bs(params.m, params.d2);
    const UnitaryHolder holder = make_unitary(params, unitary_seed);
    const UnitaryApplier u = holder.applier();

    const std::vector<double> uniform(bs.num_blocks, 1.0 / static_cast<double>(bs.num_blocks));
    PrivacyEstimate est;
    RngStream rng(unitary_seed, 0xB10C);
    double worst_noise = 0.0;
    for (std::size_t x : probe_elements) {
        check_element(x, params.m, "privacy_metric");
        const std::vector<double> probs =
            block_probability_vector(StateVector::basis(params.m, x - 1), u, bs);
        std::vector<double> counts(bs.num_blocks, 0.0);
        for (std::size_t r = 0; r < runs_per_probe; ++r) {
            const double tr = rng.uniform();
            double acc = 0.0;
            std::size_t block = bs.num_blocks;
            for (std::size_t j = 0; j < bs.num_blocks; ++j) {
                acc += probs[j];
                if (tr < acc) {
                    block = j + 1;
                    break;
                }
            }
            counts[block - 1] += 1.0;
        }
        double noise = 0.0;
        for (double& c : counts) {
            c /= static_cast<double>(runs_per_probe);
            noise += std::sqrt(2.0 / (M_PI * static_cast<double>(runs_per_probe)) * c * (1.0 - c));
        }
        const double dist = l1_distance(counts, uniform);
        est.per_probe.push_back(dist);
        if (dist > est.metric) {
            est.metric = dist;
            worst_noise = noise;
        }
    }
    est.sampling_noise = worst_noise;
    return est;
}

nlohmann::json transcript_to_json(const ProtocolTranscript& t, bool include_states) {
    nlohmann::json j = {
        {"unitary_seed", t.unitary_seed},
        {"circuit_size", t.circuit_size},
        {"block_names", t.block_names},
        {"swap_outcomes", t.swap_outcomes},
        {"success_fraction", t.success_fraction},
        {"decision", t.decision},
        {"bob_bits", t.bob_bits},
        {"alice_qubits", t.alice_qubits},
        {"alice_null", t.alice_null},
    };
    if (include_states) {
        nlohmann::json states = nlohmann::json::array();
        for (const StateVector& s : t.alice_states) {
            nlohmann::json amps = nlohmann::json::array();
            for (std::size_t i = 0; i < s.dim(); ++i) amps.push_back({s[i].real(), s[i].imag()});
            states.push_back(std::move(amps));
        }
        j["alice_states"] = std::move(states);
    }
    return j;
}

std::string transcript_csv_header() {
    return "unitary_seed,circuit_size,reps,success_fraction,decision,bob_bits,alice_qubits";
}

std::string transcript_csv_row(const ProtocolTranscript& t) {
    std::ostringstream os;
    os << t.unitary_seed << ',' << t.circuit_size << ',' << t.swap_outcomes.size() << ','
       << t.success_fraction << ',' << (t.decision ? 1 : 0) << ',' << t.bob_bits << ','
       << t.alice_qubits;
    return os.str();
}

}  // namespace qjl
