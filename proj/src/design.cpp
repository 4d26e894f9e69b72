#include "qjl/design.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "lapack_decl.hpp"

namespace qjl {

FiniteDesign FiniteDesign::from_unitaries(std::vector<Matrix> us) {
    if (us.empty()) throw std::invalid_argument("FiniteDesign: empty unitary set");
    FiniteDesign d;
    d.dim = us.front().rows();
    for (const Matrix& u : us) {
        if (!u.square() || u.rows() != d.dim)
            throw std::invalid_argument("FiniteDesign: members must share a square dimension");
        if (!is_unitary(u)) throw std::invalid_argument("FiniteDesign: member fails unitarity");
    }
    d.cardinality = us.size();
    d.unitaries = std::move(us);
    return d;
}

FiniteDesign FiniteDesign::from_circuit_family(std::size_t q, std::size_t s, std::uint64_t master_seed) {
    if (q < 2) throw std::invalid_argument("FiniteDesign: circuit family needs q >= 2");
    FiniteDesign d;
    d.dim = std::size_t{1} << q;
    d.circuit_sampler = [q, s, master_seed](std::uint64_t seed) {
        RngStream rng(master_seed, seed);
        return generate_local_random_circuit(q, s, rng);
    };
    return d;
}

std::size_t MomentSuperoperator::op_dim() const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < order; ++i) n *= dim;
    return n;
}

CVector vec(const Matrix& m) {
    CVector v(m.rows() * m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t r = 0; r < m.rows(); ++r) v[c * m.rows() + r] = m(r, c);
    return v;
}

Matrix unvec(std::span<const cplx> v, std::size_t n) {
    if (v.size() != n * n) throw std::invalid_argument("unvec: size mismatch");
    Matrix m(n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) m(r, c) = v[c * n + r];
    return m;
}

Matrix apply_superoperator(const MomentSuperoperator& s, const Matrix& m) {
    const std::size_t n = s.op_dim();
    if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument("apply_superoperator: operator has wrong dimension");
    return unvec(qjl::apply(s.matrix, vec(m)), n);
}

namespace {

constexpr std::size_t kSuperopGuard = std::size_t{1} << 16;

std::size_t checked_vec_dim(std::size_t d, std::size_t t) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < 2 * t; ++i) {
        if (n > kSuperopGuard / d) throw std::invalid_argument("superoperator: d^{2t} exceeds 2^16 guard");
        n *= d;
    }
    return n;  // d^{2t}
}

Matrix tensor_power(const Matrix& m, std::size_t t) {
    Matrix r = Matrix::identity(1);
    for (std::size_t i = 0; i < t; ++i) r = kron(r, m);
    return r;
}

// vec(W M W^dag) = (conj(W) ox W) vec(M) in column stacking.
void add_conjugation_superop(Matrix& acc, const Matrix& w, double weight) {
    const Matrix cw = conjugate(w);
    const std::size_t n = w.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cplx a = cw(i, j) * weight;
            if (a == cplx(0.0)) continue;
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) acc(i * n + k, j * n + l) += a * w(k, l);
        }
}

}  // namespace

MomentSuperoperator design_moment_superoperator(const FiniteDesign& design, std::size_t t) {
    if (!design.is_explicit())
        throw std::invalid_argument("design_moment_superoperator: explicit design required");
    if (t == 0) throw std::invalid_argument("design_moment_superoperator: t must be >= 1");
    const std::size_t vdim = checked_vec_dim(design.dim, t);
    MomentSuperoperator s;
    s.dim = design.dim;
    s.order = t;
    s.matrix = Matrix(vdim, vdim);
    const double w = 1.0 / static_cast<double>(design.unitaries.size());
    for (const Matrix& u : design.unitaries) add_conjugation_superop(s.matrix, tensor_power(u, t), w);
    return s;
}

MomentSuperoperator haar_moment_superoperator(std::size_t d, std::size_t t) {
    if (t != 1 && t != 2) throw std::invalid_argument("haar_moment_superoperator: t must be 1 or 2");
    const std::size_t vdim = checked_vec_dim(d, t);
    MomentSuperoperator s;
    s.dim = d;
    s.order = t;
    s.matrix = Matrix(vdim, vdim);

    if (t == 1) {
        // M |-> Tr(M) I/d  ==  vec(I) vec(I)^dag / d.
        const CVector vi = vec(Matrix::identity(d));
        for (std::size_t i = 0; i < vdim; ++i)
            for (std::size_t j = 0; j < vdim; ++j) s.matrix(i, j) = vi[i] * std::conj(vi[j]) / static_cast<double>(d);
        return s;
    }

    // t = 2: the twirl is the orthogonal projector (Hilbert-Schmidt sense)
    // onto the commutant span{I, SWAP}; orthonormalize {I/d, (SWAP - I/d)/sqrt(d^2-1)}.
    if (d < 2) throw std::invalid_argument("haar_moment_superoperator: t = 2 needs d >= 2");
    const std::size_t n = d * d;
    Matrix swap(n, n);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) swap(a * d + b, b * d + a) = 1.0;

    Matrix b1 = Matrix::identity(n);
    const double dd = static_cast<double>(d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b1(i, j) /= dd;
    Matrix b2 = swap;
    for (std::size_t i = 0; i < n; ++i) b2(i, i) -= 1.0 / dd;
    const double nrm2 = std::sqrt(dd * dd - 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b2(i, j) /= nrm2;

    const CVector v1 = vec(b1), v2 = vec(b2);
    for (std::size_t i = 0; i < vdim; ++i)
        for (std::size_t j = 0; j < vdim; ++j)
            s.matrix(i, j) = v1[i] * std::conj(v1[j]) + v2[i] * std::conj(v2[j]);
    return s;
}

MomentSuperoperator haar_moment_superoperator_mc(std::size_t d, std::size_t t, std::size_t samples,
                                                 RngStream& rng) {
    if (t == 0) throw std::invalid_argument("haar_moment_superoperator_mc: t must be >= 1");
    if (samples == 0) throw std::invalid_argument("haar_moment_superoperator_mc: samples must be >= 1");
    const std::size_t vdim = checked_vec_dim(d, t);
    MomentSuperoperator s;
    s.dim = d;
    s.order = t;
    s.matrix = Matrix(vdim, vdim);
    const double w = 1.0 / static_cast<double>(samples);
    for (std::size_t i = 0; i < samples; ++i)
        add_conjugation_superop(s.matrix, tensor_power(sample_haar_unitary(d, rng), t), w);
    return s;
}

namespace {

double largest_singular_value(Matrix m) {
    const int n = static_cast<int>(m.rows());
    if (n == 0) return 0.0;
    // zgesvd is column-major; singular values are transpose-invariant so the
    // row-major buffer can be passed as is.
    std::vector<double> sv(static_cast<std::size_t>(n));
    std::vector<double> rwork(static_cast<std::size_t>(5 * n));
    int info = 0, lwork = -1;
    cplx wq;
    zgesvd_("N", "N", &n, &n, m.data(), &n, sv.data(), nullptr, &n, nullptr, &n, &wq, &lwork,
            rwork.data(), &info);
    lwork = static_cast<int>(wq.real());
    CVector work(static_cast<std::size_t>(lwork));
    zgesvd_("N", "N", &n, &n, m.data(), &n, sv.data(), nullptr, &n, nullptr, &n, work.data(), &lwork,
            rwork.data(), &info);
    if (info != 0) throw std::runtime_error("zgesvd failed");
    return sv[0];
}

}  // namespace

double estimate_tpe_lambda(const FiniteDesign& design, std::size_t t) {
    const MomentSuperoperator sd = design_moment_superoperator(design, t);
    const MomentSuperoperator sh = haar_moment_superoperator(design.dim, t);
    Matrix diff = sd.matrix;
    for (std::size_t i = 0; i < diff.rows(); ++i)
        for (std::size_t j = 0; j < diff.cols(); ++j) diff(i, j) -= sh.matrix(i, j);
    return largest_singular_value(std::move(diff));
}

FiniteDesign iterate_design(const FiniteDesign& design, std::size_t times) {
    if (times == 0) throw std::invalid_argument("iterate_design: times must be >= 1");
    if (times == 1) return design;

    if (design.is_explicit()) {
        constexpr std::size_t kGuard = std::size_t{1} << 14;
        std::size_t total = 1;
        for (std::size_t i = 0; i < times; ++i) {
            if (total > kGuard / design.unitaries.size())
                throw std::invalid_argument("iterate_design: s^k exceeds 2^14 guard");
            total *= design.unitaries.size();
        }
        std::vector<Matrix> current = design.unitaries;
        for (std::size_t step = 1; step < times; ++step) {
            std::vector<Matrix> next;
            next.reserve(current.size() * design.unitaries.size());
            for (const Matrix& a : design.unitaries)
                for (const Matrix& b : current) next.push_back(a * b);
            current = std::move(next);
        }
        return FiniteDesign::from_unitaries(std::move(current));
    }

    if (!design.circuit_sampler)
        throw std::invalid_argument("iterate_design: design has neither unitaries nor sampler");
    FiniteDesign out;
    out.dim = design.dim;
    auto base = design.circuit_sampler;
    out.circuit_sampler = [base, times](std::uint64_t seed) {
        RngStream mix(seed, 0x17e3);
        GateCircuit joined;
        for (std::size_t i = 0; i < times; ++i) {
            GateCircuit part = base(mix.substream(i).next_u64());
            if (i == 0) {
                joined = std::move(part);
            } else {
                if (part.num_qubits != joined.num_qubits)
                    throw std::logic_error("iterate_design: sampler qubit count changed");
                joined.gates.insert(joined.gates.end(), part.gates.begin(), part.gates.end());
            }
        }
        return joined;
    };
    return out;
}

namespace {

cplx monomial_value(const Matrix& u, const BalancedMonomial& mono) {
    cplx v = 1.0;
    for (const auto& [i, j] : mono.plain) v *= u(i - 1, j - 1);
    for (const auto& [i, j] : mono.conjugated) v *= std::conj(u(i - 1, j - 1));
    return v;
}

void validate_monomial(const BalancedMonomial& mono, std::size_t t, std::size_t d) {
    if (mono.plain.size() != t || mono.conjugated.size() != t)
        throw std::invalid_argument("monomial_design_error: monomial is not balanced of degree t");
    auto check = [d](const std::pair<std::size_t, std::size_t>& e) {
        if (e.first < 1 || e.first > d || e.second < 1 || e.second > d)
            throw std::invalid_argument("monomial_design_error: index out of range");
    };
    for (const auto& e : mono.plain) check(e);
    for (const auto& e : mono.conjugated) check(e);
}

MonomialError finish_monomial_error(cplx design_avg, cplx haar_avg, std::size_t d, std::size_t t) {
    MonomialError e;
    e.gap = std::abs(design_avg - haar_avg);
    double dt = 1.0;
    for (std::size_t i = 0; i < t; ++i) dt *= static_cast<double>(d);
    e.implied_alpha = e.gap * dt;
    return e;
}

cplx design_monomial_average(const FiniteDesign& design, const BalancedMonomial& mono) {
    if (!design.is_explicit())
        throw std::invalid_argument("monomial_design_error: explicit design required");
    cplx acc = 0.0;
    for (const Matrix& u : design.unitaries) acc += monomial_value(u, mono);
    return acc / static_cast<double>(design.unitaries.size());
}

}  // namespace

MonomialError monomial_design_error(const FiniteDesign& design, const BalancedMonomial& mono,
                                    std::size_t t) {
    if (t != 1)
        throw std::invalid_argument("monomial_design_error: analytic Haar moment only at t = 1");
    validate_monomial(mono, t, design.dim);
    const auto [i, j] = mono.plain.front();
    const auto [k, l] = mono.conjugated.front();
    const cplx haar = (i == k && j == l) ? cplx(1.0 / static_cast<double>(design.dim)) : cplx(0.0);
    return finish_monomial_error(design_monomial_average(design, mono), haar, design.dim, t);
}

MonomialError monomial_design_error(const FiniteDesign& design, const BalancedMonomial& mono,
                                    std::size_t t, std::size_t mc_samples, RngStream& rng) {
    if (t != 2) throw std::invalid_argument("monomial_design_error: Monte-Carlo path is for t = 2");
    if (mc_samples == 0) throw std::invalid_argument("monomial_design_error: mc_samples must be >= 1");
    validate_monomial(mono, t, design.dim);
    cplx haar = 0.0;
    for (std::size_t i = 0; i < mc_samples; ++i)
        haar += monomial_value(sample_haar_unitary(design.dim, rng), mono);
    haar /= static_cast<double>(mc_samples);
    return finish_monomial_error(design_monomial_average(design, mono), haar, design.dim, t);
}

std::vector<Matrix> pauli_group_1q() {
    Matrix i2 = Matrix::identity(2);
    Matrix x(2, 2), y(2, 2), z(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    y(0, 1) = cplx(0.0, -1.0);
    y(1, 0) = cplx(0.0, 1.0);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return {i2, x, y, z};
}

namespace {

// Canonical key modulo global phase: rotate the largest-modulus entry to the
// positive real axis, then quantize.
std::string phase_canonical_key(const Matrix& m) {
    std::size_t bi = 0, bj = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (std::abs(m(i, j)) > best + 1e-9) {
                best = std::abs(m(i, j));
                bi = i;
                bj = j;
            }
    const cplx ph = m(bi, bj) / std::abs(m(bi, bj));
    std::string key;
    key.reserve(m.rows() * m.cols() * 14);
    char buf[32];
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const cplx v = m(i, j) / ph;
            std::snprintf(buf, sizeof buf, "%.6f,%.6f;", v.real() + 0.0, v.imag() + 0.0);
            key += buf;
        }
    return key;
}

}  // namespace

std::vector<Matrix> clifford_group_1q() {
    const double r = 1.0 / std::sqrt(2.0);
    Matrix h(2, 2), s(2, 2);
    h(0, 0) = r;
    h(0, 1) = r;
    h(1, 0) = r;
    h(1, 1) = -r;
    s(0, 0) = 1.0;
    s(1, 1) = cplx(0.0, 1.0);

    std::map<std::string, Matrix> seen;
    std::vector<Matrix> frontier{Matrix::identity(2)};
    seen.emplace(phase_canonical_key(frontier.front()), frontier.front());
    while (!frontier.empty()) {
        std::vector<Matrix> next;
        for (const Matrix& u : frontier) {
            for (const Matrix* g : {&h, &s}) {
                Matrix v = (*g) * u;
                std::string key = phase_canonical_key(v);
                if (seen.emplace(key, v).second) next.push_back(std::move(v));
            }
        }
        frontier = std::move(next);
    }
    std::vector<Matrix> out;
    out.reserve(seen.size());
    for (auto& [k, v] : seen) out.push_back(std::move(v));
    return out;
}

}  // namespace qjl
