#include "qjl/jl.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qjl {

UnitaryApplier::UnitaryApplier(const Matrix& u) : matrix_(&u) {
    if (!u.square()) throw std::invalid_argument("UnitaryApplier: matrix not square");
}
UnitaryApplier::UnitaryApplier(const GateCircuit& c) : circuit_(&c) {}
UnitaryApplier::UnitaryApplier(const HaarAction& h) : action_(&h) {}

std::size_t UnitaryApplier::dim() const {
    if (matrix_) return matrix_->rows();
    if (circuit_) return circuit_->dim();
    return action_->dim();
}

StateVector UnitaryApplier::operator()(const StateVector& v) const {
    if (v.dim() != dim()) throw std::invalid_argument("UnitaryApplier: dimension mismatch");
    if (matrix_) return StateVector(qjl::apply(*matrix_, v));
    if (circuit_) return apply_circuit(*circuit_, v);
    return action_->apply(v);
}

CVector classical_jl(std::span<const cplx> v, const Matrix& u, const BlockStructure& bs) {
    if (v.size() != bs.d1 || u.rows() != bs.d1 || !u.square())
        throw std::invalid_argument("classical_jl: dimension mismatch");
    const CVector uv = qjl::apply(u, v);
    CVector out = block_project(uv, 1, bs);
    const double scale = std::sqrt(static_cast<double>(bs.d1) / static_cast<double>(bs.d2));
    for (cplx& x : out) x *= scale;
    return out;
}

std::vector<double> block_probability_vector(const StateVector& v, const UnitaryApplier& u,
                                             const BlockStructure& bs) {
    if (v.dim() != bs.d1) throw std::invalid_argument("block_probability_vector: dimension mismatch");
    const StateVector w = u(v);
    std::vector<double> probs(bs.num_blocks, 0.0);
    for (std::size_t i = 0; i < bs.d1; ++i) probs[i / bs.d2] += std::norm(w[i]);
    return probs;
}

JLOutcome quantum_jl_measure(const StateVector& v, const UnitaryApplier& u, const BlockStructure& bs,
                             RngStream& rng) {
    if (v.dim() != bs.d1) throw std::invalid_argument("quantum_jl_measure: dimension mismatch");
    const StateVector w = u(v);
    std::vector<double> probs(bs.num_blocks, 0.0);
    for (std::size_t i = 0; i < bs.d1; ++i) probs[i / bs.d2] += std::norm(w[i]);

    // Inverse-CDF sample from the exact Born distribution.
    const double r = rng.uniform();
    double acc = 0.0;
    std::size_t block = bs.num_blocks;
    for (std::size_t j = 0; j < bs.num_blocks; ++j) {
        acc += probs[j];
        if (r < acc) {
            block = j + 1;
            break;
        }
    }
    if (block > bs.num_blocks) {  // r fell into rounding slack at the top
        block = bs.num_blocks;
        while (block > 1 && probs[block - 1] == 0.0) --block;
    }

    JLOutcome out;
    out.block_index = block;
    out.block_probability = probs[block - 1];
    CVector proj = block_project(w, block, bs);
    const double n = l2_norm(proj);
    for (cplx& x : proj) x /= n;
    out.collapsed_state = StateVector(std::move(proj));
    return out;
}

cplx polarization_inner_product(std::span<const cplx> u, std::span<const cplx> w) {
    if (u.size() != w.size()) throw std::invalid_argument("polarization_inner_product: dimension mismatch");
    const double nu2 = [&] {
        double s = 0.0;
        for (const cplx& x : u) s += std::norm(x);
        return s;
    }();
    const double nw2 = [&] {
        double s = 0.0;
        for (const cplx& x : w) s += std::norm(x);
        return s;
    }();
    double diff2 = 0.0, idiff2 = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        diff2 += std::norm(u[i] - w[i]);
        idiff2 += std::norm(u[i] - cplx(0.0, 1.0) * w[i]);
    }
    return {(nu2 + nw2 - diff2) / 2.0, (idiff2 - nu2 - nw2) / 2.0};
}

PreservationReport pairwise_preservation_report(const std::vector<StateVector>& states,
                                                const UnitaryApplier& u, const BlockStructure& bs,
                                                double eps) {
    if (states.empty()) throw std::invalid_argument("pairwise_preservation_report: no states");
    for (const StateVector& s : states) {
        if (s.dim() != bs.d1) throw std::invalid_argument("pairwise_preservation_report: dimension mismatch");
        if (!s.is_normalized(1e-9))
            throw std::invalid_argument("pairwise_preservation_report: states must be normalized");
    }

    PreservationReport r;
    r.d1 = bs.d1;
    r.d2 = bs.d2;
    r.num_blocks = bs.num_blocks;
    r.n_states = states.size();
    r.eps = eps;
    const double target = std::sqrt(static_cast<double>(bs.d2) / static_cast<double>(bs.d1));
    r.norm_lo = (1.0 - eps) * target;
    r.norm_hi = (1.0 + eps) * target;
    r.ip_halfwidth = 8.0 * eps;

    const std::size_t n = states.size();
    std::vector<StateVector> images;
    images.reserve(n);
    for (const StateVector& s : states) images.push_back(u(s));

    std::vector<cplx> ambient_ip(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k) ambient_ip[i * n + k] = inner_product(states[i], states[k]);

    r.block_norms.assign(bs.num_blocks, std::vector<double>(n, 0.0));
    r.pair_ip_dev.assign(bs.num_blocks, {});

    std::vector<CVector> collapsed(n);
    std::vector<bool> reachable(n);
    for (std::size_t j = 1; j <= bs.num_blocks; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            CVector proj = block_project(images[i], j, bs);
            const double nrm = l2_norm(proj);
            r.block_norms[j - 1][i] = nrm;
            reachable[i] = nrm != 0.0;
            if (!reachable[i]) {
                r.unreachable.emplace_back(i + 1, j);
                collapsed[i].clear();
                continue;
            }
            const double rel = std::abs(nrm / target - 1.0);
            r.max_norm_rel_dev = std::max(r.max_norm_rel_dev, rel);
            if (nrm < r.norm_lo || nrm > r.norm_hi) r.norm_violations.emplace_back(i + 1, j);
            for (cplx& x : proj) x /= nrm;
            collapsed[i] = std::move(proj);
        }
        auto& devs = r.pair_ip_dev[j - 1];
        devs.reserve(n * (n - 1) / 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i + 1; k < n; ++k) {
                if (!reachable[i] || !reachable[k]) {
                    devs.push_back(std::numeric_limits<double>::quiet_NaN());
                    continue;
                }
                const cplx after = polarization_inner_product(collapsed[i], collapsed[k]);
                const double dev = std::abs(after - ambient_ip[i * n + k]);
                devs.push_back(dev);
                r.max_ip_dev = std::max(r.max_ip_dev, dev);
                if (dev > r.ip_halfwidth) r.ip_violations.push_back({i + 1, k + 1, j});
            }
    }
    return r;
}

nlohmann::json preservation_report_to_json(const PreservationReport& r) {
    nlohmann::json blocks = nlohmann::json::array();
    for (std::size_t j = 0; j < r.num_blocks; ++j) {
        nlohmann::json pair_devs = nlohmann::json::array();
        for (double d : r.pair_ip_dev[j]) {
            if (std::isnan(d))
                pair_devs.push_back(nullptr);
            else
                pair_devs.push_back(d);
        }
        blocks.push_back({{"block", j + 1}, {"norms", r.block_norms[j]}, {"pair_ip_dev", pair_devs}});
    }
    nlohmann::json jr = {
        {"d1", r.d1},
        {"d2", r.d2},
        {"num_blocks", r.num_blocks},
        {"n_states", r.n_states},
        {"eps", r.eps},
        {"norm_band", {{"lo", r.norm_lo}, {"hi", r.norm_hi}}},
        {"ip_band_halfwidth", r.ip_halfwidth},
        {"blocks", blocks},
        {"max_norm_rel_dev", r.max_norm_rel_dev},
        {"max_ip_dev", r.max_ip_dev},
        {"norm_violations", nlohmann::json::array()},
        {"ip_violations", nlohmann::json::array()},
        {"unreachable", nlohmann::json::array()},
    };
    for (const auto& [i, j] : r.norm_violations) jr["norm_violations"].push_back({i, j});
    for (const auto& v : r.ip_violations) jr["ip_violations"].push_back({v[0], v[1], v[2]});
    for (const auto& [i, j] : r.unreachable) jr["unreachable"].push_back({i, j});
    return jr;
}

std::string preservation_report_csv_header() {
    return "d1,d2,n_states,eps,max_norm_rel_dev,max_ip_dev,norm_violations,ip_violations,unreachable";
}

std::string preservation_report_csv_row(const PreservationReport& r) {
    std::ostringstream os;
    os << r.d1 << ',' << r.d2 << ',' << r.n_states << ',' << r.eps << ',' << r.max_norm_rel_dev << ','
       << r.max_ip_dev << ',' << r.norm_violations.size() << ',' << r.ip_violations.size() << ','
       << r.unreachable.size();
    return os.str();
}

}  // namespace qjl
