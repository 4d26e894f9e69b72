#include "qjl/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "lapack_decl.hpp"

namespace qjl {

std::vector<double> sample_gaussians(std::size_t n, RngStream& rng) {
    if (n == 0) throw std::invalid_argument("sample_gaussians: n must be >= 1");
    std::vector<double> out(n);
    for (double& x : out) x = rng.gaussian();
    return out;
}

cplx sample_complex_gaussian(RngStream& rng) {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    return {re, im};
}

StateVector sample_haar_unit_vector(std::size_t d, RngStream& rng) {
    if (d == 0) throw std::invalid_argument("sample_haar_unit_vector: d must be >= 1");
    StateVector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = sample_complex_gaussian(rng);
    return v.normalize();
}

double sample_chi_square_sum(std::size_t n, RngStream& rng) {
    if (n == 0) throw std::invalid_argument("sample_chi_square_sum: n must be >= 1");
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double g = rng.gaussian();
        s += g * g;
    }
    return s;
}

namespace {

// Modified Gram-Schmidt QR on the columns of g, two orthogonalization passes.
// The R diagonal comes out real positive, so Q is already phase-corrected.
Matrix mgs_unitary(const Matrix& g) {
    const std::size_t d = g.rows();
    Matrix q = g;
    for (std::size_t j = 0; j < d; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                cplx proj = 0.0;
                for (std::size_t r = 0; r < d; ++r) proj += std::conj(q(r, i)) * q(r, j);
                for (std::size_t r = 0; r < d; ++r) q(r, j) -= proj * q(r, i);
            }
        }
        double nrm = 0.0;
        for (std::size_t r = 0; r < d; ++r) nrm += std::norm(q(r, j));
        nrm = std::sqrt(nrm);
        for (std::size_t r = 0; r < d; ++r) q(r, j) /= nrm;
    }
    return q;
}

// zgeqrf + phase fix + zungqr. buf holds the Ginibre sample column-major.
Matrix lapack_haar_unitary(CVector buf, std::size_t dim) {
    const int d = static_cast<int>(dim);
    CVector tau(dim);
    int info = 0, lwork = -1;
    cplx wq;
    zgeqrf_(&d, &d, buf.data(), &d, tau.data(), &wq, &lwork, &info);
    lwork = static_cast<int>(wq.real());
    CVector work(static_cast<std::size_t>(lwork));
    zgeqrf_(&d, &d, buf.data(), &d, tau.data(), work.data(), &lwork, &info);
    if (info != 0) throw std::runtime_error("zgeqrf failed");

    CVector phase(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const cplx rjj = buf[j * dim + j];
        const double a = std::abs(rjj);
        phase[j] = (a == 0.0) ? cplx(1.0) : rjj / a;
    }

    zungqr_(&d, &d, &d, buf.data(), &d, tau.data(), work.data(), &lwork, &info);
    if (info != 0) throw std::runtime_error("zungqr failed");

    Matrix u(dim, dim);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i) u(i, j) = buf[j * dim + i] * phase[j];
    return u;
}

}  // namespace

Matrix sample_haar_unitary(std::size_t d, RngStream& rng) {
    if (d == 0) throw std::invalid_argument("sample_haar_unitary: d must be >= 1");
    if (d <= 8) {
        Matrix g(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) g(i, j) = sample_complex_gaussian(rng);
        return mgs_unitary(g);
    }
    CVector buf(d * d);  // column-major Ginibre
    for (cplx& x : buf) x = sample_complex_gaussian(rng);
    return lapack_haar_unitary(std::move(buf), d);
}

HaarAction::HaarAction(std::size_t d, RngStream& rng) : d_(d) {
    if (d == 0) throw std::invalid_argument("HaarAction: d must be >= 1");
    alphas_.resize(d);
    {
        cplx g = sample_complex_gaussian(rng);
        while (g == cplx(0.0)) g = sample_complex_gaussian(rng);
        alphas_[0] = g / std::abs(g);  // 1x1 Haar unitary = uniform phase
    }
    reflectors_.reserve(d >= 2 ? (d * (d + 1)) / 2 - 1 : 0);
    CVector w;
    for (std::size_t k = 2; k <= d; ++k) {
        w.resize(k);
        double nrm2 = 0.0;
        for (cplx& x : w) {
            x = sample_complex_gaussian(rng);
            nrm2 += std::norm(x);
        }
        const double nrm = std::sqrt(nrm2);
        for (cplx& x : w) x /= nrm;

        // alpha = -w_1/|w_1| keeps ||alpha e_1 - w|| away from zero.
        const double a0 = std::abs(w[0]);
        const cplx alpha = (a0 == 0.0) ? cplx(-1.0) : -w[0] / a0;
        alphas_[k - 1] = alpha;

        w[0] = alpha - w[0];  // u = alpha e_1 - w, then normalize
        for (std::size_t i = 1; i < k; ++i) w[i] = -w[i];
        const double unrm = std::sqrt(2.0 + 2.0 * a0);
        for (cplx& x : w) x /= unrm;
        reflectors_.insert(reflectors_.end(), w.begin(), w.end());
    }
}

void HaarAction::apply_in_place(std::span<cplx> v) const {
    if (v.size() != d_) throw std::invalid_argument("HaarAction::apply: dimension mismatch");
    v[d_ - 1] *= alphas_[0];
    std::size_t off = 0;
    for (std::size_t k = 2; k <= d_; ++k) {
        const cplx* u = reflectors_.data() + off;
        cplx* x = v.data() + (d_ - k);
        x[0] *= alphas_[k - 1];
        cplx dot = 0.0;
        for (std::size_t i = 0; i < k; ++i) dot += std::conj(u[i]) * x[i];
        const cplx c = 2.0 * dot;
        for (std::size_t i = 0; i < k; ++i) x[i] -= c * u[i];
        off += k;
    }
}

StateVector HaarAction::apply(const StateVector& v) const {
    StateVector out = v;
    apply_in_place(out.amplitudes());
    return out;
}

Matrix HaarAction::to_matrix() const {
    Matrix u(d_, d_);
    CVector col(d_);
    for (std::size_t j = 0; j < d_; ++j) {
        std::fill(col.begin(), col.end(), cplx(0.0));
        col[j] = 1.0;
        apply_in_place(col);
        for (std::size_t i = 0; i < d_; ++i) u(i, j) = col[i];
    }
    return u;
}

}  // namespace qjl
